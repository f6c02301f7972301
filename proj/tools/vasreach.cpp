// vasreach: command-line front end.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vasreach/vasreach.hpp"

namespace {

using namespace vasreach;
using nlohmann::json;

constexpr int kAnswered = 0;
constexpr int kError = 1;
constexpr int kExhausted = 2;

struct Options {
  std::size_t max_steps = 1'000'000;
  std::size_t budget_mb = 256;
  std::string format = "json";
  bool minimize = false;
  bool single_thread = false;
  std::uint64_t seed = 0;
  std::string trace_file;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

json load_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(1, path + ": " + e.what());
  }
}

Limits limits_of(const Options& o) {
  Limits l;
  l.max_steps = o.max_steps;
  l.budgets = Budgets::from_megabytes(o.budget_mb);
  return l;
}

/// Streams one JSON object per loop step when --trace is given.
class TraceWriter {
 public:
  explicit TraceWriter(const std::string& path) {
    if (path.empty()) return;
    out_.emplace(path);
    if (!*out_) throw std::runtime_error("cannot write '" + path + "'");
  }

  StepObserver observer() {
    if (!out_) return {};
    return [this](const TraceStep& s, const MwgSequence&, const std::vector<MwgSequence>&) {
      *out_ << io::trace_step_json(s).dump() << "\n";
    };
  }

 private:
  std::optional<std::ofstream> out_;
};

json run_json(const Run& r, const Vas& vas) { return io::to_json(r, vas); }

int cmd_solve(const Options& o, const std::string& file) {
  auto inst = load_instance(file);
  TraceWriter tw(o.trace_file);
  auto lim = limits_of(o);
  lim.stop_at_first_witness = true;
  auto out = klmst_solve(inst, lim, tw.observer());
  if (const auto* r = std::get_if<Reachable>(&out.result)) {
    if (!validate_run(r->run, inst.vas)) throw std::logic_error("solver produced an invalid run");
    std::cout << "REACHABLE\n";
    if (o.format == "text")
      std::cout << label_string(r->run, inst.vas) << "\n";
    else
      std::cout << run_json(r->run, inst.vas).dump(2) << "\n";
    return kAnswered;
  }
  if (std::holds_alternative<Unreachable>(out.result)) {
    std::cout << "UNREACHABLE\n";
    return kAnswered;
  }
  std::cout << "EXHAUSTED\n";
  std::cerr << "vasreach: " << std::get<Exhausted>(out.result).reason << " after " << out.steps << " steps\n";
  return kExhausted;
}

int cmd_decompose(const Options& o, const std::string& file) {
  auto inst = load_instance(file);
  TraceWriter tw(o.trace_file);
  auto out = klmst_solve(inst, limits_of(o), tw.observer());
  auto family = o.minimize ? minimize(out.perfect, inst.vas) : out.perfect;
  if (o.format == "dot") {
    std::cout << io::to_dot(family, inst.vas);
  } else if (o.format == "text") {
    for (const auto& xi : family) std::cout << canonical_key(xi) << "  " << to_string(rank_sequence(xi)) << "\n";
  } else {
    json fam = json::array();
    for (const auto& xi : family) fam.push_back(io::sequence_json(xi, inst.vas));
    json j{{"dim", inst.vas.dim()}, {"actions", io::actions_json(inst.vas)}, {"family", fam}, {"steps", out.steps}};
    std::cout << j.dump(2) << "\n";
  }
  if (const auto* e = std::get_if<Exhausted>(&out.result)) {
    std::cerr << "vasreach: " << e->reason << "; family is partial\n";
    return kExhausted;
  }
  return kAnswered;
}

int cmd_perfect(const Options& o, const std::string& file) {
  auto [vas, xi] = io::mwgs_from_json(load_json(file));
  if (!validate_sequence(xi, vas, false)) throw PreconditionError("input is not a marked witness graph sequence");
  auto rep = is_perfect(xi, vas, limits_of(o).budgets);
  if (o.format == "json")
    std::cout << (rep.defect ? io::defect_json(*rep.defect) : json("Perfect")).dump() << "\n";
  else
    std::cout << (rep.defect ? to_string(*rep.defect) : std::string("Perfect")) << "\n";
  return kAnswered;
}

int cmd_cover(const Options& o, const std::string& file) {
  auto inst = load_instance(file);
  StateVas sv;
  sv.states = 1;
  sv.dim = inst.vas.dim();
  sv.counters = full_index_set(sv.dim);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < inst.vas.size(); ++a) {
    sv.edges.push_back(StateEdge{0, inst.vas.delta(a), 0, a});
    labels.push_back(inst.vas.name(a));
  }
  KmOptions km = limits_of(o).budgets.km;
  auto tree = km_tree(sv, 0, OmegaVec::from(inst.source), km);
  auto max = km_maximal(tree);
  if (o.format == "dot") {
    std::cout << io::km_dot(tree, {"q"}, labels);
  } else if (o.format == "json") {
    json a = json::array();
    for (const auto& v : max[0]) a.push_back(io::to_json(v));
    std::cout << json{{"markings", a}, {"nodes", tree.nodes.size()}}.dump(2) << "\n";
  } else {
    for (const auto& v : max[0]) std::cout << to_string(v) << "\n";
  }
  return kAnswered;
}

int cmd_hilbert(const Options& o, const std::string& file) {
  auto sys = parse_system(read_file(file));
  auto hb = hilbert(sys, limits_of(o).budgets.hilbert);
  if (o.format == "json")
    std::cout << io::basis_json(hb).dump(2) << "\n";
  else
    std::cout << io::basis_text(hb);
  return kAnswered;
}

int cmd_oracle(const Options& o, const std::string& file, std::int64_t max_norm, std::size_t max_len) {
  auto inst = load_instance(file);
  auto r = bfs_oracle(inst, max_norm, max_len);
  switch (r.verdict) {
    case OracleVerdict::Reachable:
      std::cout << "REACHABLE\n";
      if (o.format == "text")
        std::cout << label_string(*r.run, inst.vas) << "\n";
      else
        std::cout << run_json(*r.run, inst.vas).dump(2) << "\n";
      break;
    case OracleVerdict::UnreachableCertified: std::cout << "UNREACHABLE\n"; break;
    case OracleVerdict::Unknown: std::cout << "UNKNOWN\n"; break;
  }
  std::cerr << "vasreach: explored " << r.explored << " configurations\n";
  return kAnswered;
}

int cmd_rank(const std::string& file, bool initial) {
  MwgSequence xi;
  if (initial) {
    xi = initial_sequence(load_instance(file));
  } else {
    auto parsed = io::mwgs_from_json(load_json(file));
    xi = std::move(parsed.second);
  }
  std::cout << to_string(rank_sequence(xi)) << "\n";
  return kAnswered;
}

int cmd_embed(const Options& o, const std::string& vas_file, const std::string& run1, const std::string& run2) {
  auto inst = load_instance(vas_file);
  auto r1 = io::prerun_from_json(load_json(run1), inst.vas);
  auto r2 = io::prerun_from_json(load_json(run2), inst.vas);
  auto w = embeds(r1, r2);
  if (o.format == "json") {
    json j{{"embeds", w.has_value()}};
    if (w) j["positions"] = w->positions;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << (w ? "EMBEDS" : "NO") << "\n";
  }
  return kAnswered;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decides reachability in vector addition systems."};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--max-steps", o.max_steps, "Decomposition loop step limit")->capture_default_str();
    sub->add_option("--budget-mb", o.budget_mb, "Symbolic search budget in megabytes")->capture_default_str();
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "dot", "text"}))->capture_default_str();
    sub->add_flag("--minimize", o.minimize, "Drop family members included in another member");
    sub->add_flag("--single-thread", o.single_thread, "Run single-threaded (always the case)");
    sub->add_option("--seed", o.seed, "Seed for randomised choices");
    sub->add_option("--trace", o.trace_file, "Write one JSON object per loop step to FILE");
  };

  std::string file, file2, file3;
  std::int64_t max_norm = 12;
  std::size_t max_len = 20;
  bool initial = false;

  auto* solve = app.add_subcommand("solve", "Decide reachability and print a witness run");
  solve->add_option("file", file, "Instance file")->required();
  auto* decompose = app.add_subcommand("decompose", "Print the final perfect family");
  decompose->add_option("file", file, "Instance file")->required();
  auto* perfect = app.add_subcommand("perfect", "Test a sequence for perfectness");
  perfect->add_option("file", file, "Sequence JSON file")->required();
  auto* cover = app.add_subcommand("cover", "Karp-Miller cover from the initial configuration");
  cover->add_option("file", file, "Instance file")->required();
  auto* hilb = app.add_subcommand("hilbert", "Hilbert basis of a linear system over the naturals");
  hilb->add_option("file", file, "System file")->required();
  auto* orc = app.add_subcommand("oracle", "Bounded breadth-first reachability");
  orc->add_option("file", file, "Instance file")->required();
  orc->add_option("--max-norm", max_norm)->capture_default_str();
  orc->add_option("--max-len", max_len)->capture_default_str();
  auto* rank = app.add_subcommand("rank", "Rank of a sequence as an ordinal");
  rank->add_option("file", file, "Sequence JSON file, or an instance with --initial")->required();
  rank->add_flag("--initial", initial, "Rank the initial sequence of an instance");
  auto* emb = app.add_subcommand("embed", "Test whether RUN1 embeds into RUN2");
  emb->add_option("vas", file, "Instance file naming the actions")->required();
  emb->add_option("run1", file2, "Prerun JSON")->required();
  emb->add_option("run2", file3, "Prerun JSON")->required();
  for (auto* sub : {solve, decompose, perfect, cover, hilb, orc, rank, emb}) common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kAnswered : kError;
  }

  try {
    if (*solve) return cmd_solve(o, file);
    if (*decompose) return cmd_decompose(o, file);
    if (*perfect) return cmd_perfect(o, file);
    if (*cover) return cmd_cover(o, file);
    if (*hilb) return cmd_hilbert(o, file);
    if (*orc) return cmd_oracle(o, file, max_norm, max_len);
    if (*rank) return cmd_rank(file, initial);
    if (*emb) return cmd_embed(o, file, file2, file3);
  } catch (const ResourceExhausted& e) {
    std::cout << "EXHAUSTED\n";
    std::cerr << "vasreach: " << e.what() << "\n";
    return kExhausted;
  } catch (const std::exception& e) {
    std::cerr << "vasreach: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
