#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "vasreach/coverability.hpp"
#include "vasreach/diophantine.hpp"
#include "vasreach/error.hpp"
#include "vasreach/graph.hpp"
#include "vasreach/mwgs.hpp"
#include "vasreach/ordinal.hpp"
#include "vasreach/vas.hpp"

namespace vasreach {

struct Defect {
  enum class Kind { Infeasible, NotForwardPumpable, NotBackwardPumpable, InBounded, OutBounded, EdgeBounded };
  Kind kind = Kind::Infeasible;
  std::size_t j = 0;
  std::size_t index = 0;  // component for In/OutBounded, edge for EdgeBounded
  std::int64_t c = 0;

  bool operator==(const Defect&) const = default;
};

inline std::string to_string(const Defect& d) {
  const std::string J = std::to_string(d.j);
  switch (d.kind) {
    case Defect::Kind::Infeasible: return "Infeasible";
    case Defect::Kind::NotForwardPumpable: return "NotForwardPumpable(" + J + ")";
    case Defect::Kind::NotBackwardPumpable: return "NotBackwardPumpable(" + J + ")";
    case Defect::Kind::InBounded:
      return "InBounded(" + J + "," + std::to_string(d.index + 1) + "," + std::to_string(d.c) + ")";
    case Defect::Kind::OutBounded:
      return "OutBounded(" + J + "," + std::to_string(d.index + 1) + "," + std::to_string(d.c) + ")";
    case Defect::Kind::EdgeBounded:
      return "EdgeBounded(" + J + "," + std::to_string(d.index) + "," + std::to_string(d.c) + ")";
  }
  return "?";
}

/// Search budgets shared by the perfectness test, decomposition and witness extraction.
struct Budgets {
  HilbertOptions hilbert;
  KmOptions km;
  std::size_t max_paths = 100'000;
  std::size_t max_children = 100'000;
  std::size_t max_witness_length = 2'000'000;

  /// Scales every symbolic budget from a memory allowance in megabytes.
  static Budgets from_megabytes(std::size_t mb) {
    Budgets b;
    b.hilbert.node_budget = std::max<std::size_t>(1, mb) * 8'000;
    b.km.node_budget = std::max<std::size_t>(1, mb) * 4'000;
    b.max_paths = std::max<std::size_t>(1, mb) * 400;
    b.max_children = std::max<std::size_t>(1, mb) * 400;
    b.max_witness_length = std::max<std::size_t>(1, mb) * 8'000;
    return b;
  }
};

struct PerfectnessReport {
  std::optional<Defect> defect;  // empty: perfect
  HilbertBasis basis;
  LLayout layout;
  std::vector<PumpWord> forward, backward;
};

inline std::int64_t to_small(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() / 4)
    throw ResourceExhausted("bound exceeds the supported range");
  return static_cast<std::int64_t>(v);
}

/// Perfectness conditions checked in a fixed order: feasibility, forward pumps, backward pumps,
/// unbounded input marks, unbounded output marks, unbounded edges. Lowest graph index first,
/// then lowest component or edge.
inline PerfectnessReport is_perfect(const MwgSequence& xi, const Vas& vas, const Budgets& b = {}) {
  PerfectnessReport r;
  auto [sys, lay] = build_L(xi, vas);
  r.layout = lay;
  if (!feasible(sys, b.hilbert)) {
    r.defect = Defect{Defect::Kind::Infeasible, 0, 0, 0};
    return r;
  }
  for (std::size_t j = 0; j < xi.graphs.size(); ++j) {
    auto p = pumpable_forward(xi.graphs[j], vas, b.km);
    if (!p) {
      r.defect = Defect{Defect::Kind::NotForwardPumpable, j, 0, 0};
      return r;
    }
    r.forward.push_back(std::move(*p));
  }
  for (std::size_t j = 0; j < xi.graphs.size(); ++j) {
    auto p = pumpable_backward(xi.graphs[j], vas, b.km);
    if (!p) {
      r.defect = Defect{Defect::Kind::NotBackwardPumpable, j, 0, 0};
      return r;
    }
    r.backward.push_back(std::move(*p));
  }
  r.basis = hilbert(sys, b.hilbert);
  const std::size_t d = vas.dim();
  for (std::size_t j = 0; j < xi.graphs.size(); ++j)
    for (std::size_t i = 0; i < d; ++i)
      if (is_omega(xi.graphs[j].in_mark[i]) && !coord_unbounded(r.basis, lay.x(j, i))) {
        r.defect = Defect{Defect::Kind::InBounded, j, i, to_small(coord_max(r.basis, lay.x(j, i)))};
        return r;
      }
  for (std::size_t j = 0; j < xi.graphs.size(); ++j)
    for (std::size_t i = 0; i < d; ++i)
      if (is_omega(xi.graphs[j].out_mark[i]) && !coord_unbounded(r.basis, lay.y(j, i))) {
        r.defect = Defect{Defect::Kind::OutBounded, j, i, to_small(coord_max(r.basis, lay.y(j, i)))};
        return r;
      }
  for (std::size_t j = 0; j < xi.graphs.size(); ++j)
    for (std::size_t e = 0; e < xi.graphs[j].graph.edges.size(); ++e)
      if (!coord_unbounded(r.basis, lay.psi(j, e))) {
        r.defect = Defect{Defect::Kind::EdgeBounded, j, e, to_small(coord_max(r.basis, lay.psi(j, e)))};
        return r;
      }
  return r;
}

namespace detail {

/// The strongly connected component of `root` in g, as a canonical witness graph.
inline WitnessGraph component_graph(const std::vector<OmegaVec>& values, const std::vector<GraphEdge>& edges,
                                    const std::vector<std::size_t>& comp, std::size_t root) {
  WitnessGraph w;
  std::map<std::size_t, std::size_t> local;
  for (std::size_t v = 0; v < values.size(); ++v)
    if (comp[v] == comp[root]) {
      local[v] = w.nodes.size();
      w.nodes.push_back(values[v]);
    }
  for (const auto& e : edges)
    if (comp[e.src] == comp[root] && comp[e.dst] == comp[root])
      w.edges.push_back(GraphEdge{local.at(e.src), e.action, local.at(e.dst)});
  w.root = local.at(root);
  w.canonicalize();
  return w;
}

/// A chain of marked copies of components, one per vertex of a path, joined by the path's
/// actions. Inner marks equal the vertex itself.
struct Chain {
  std::vector<MarkedWitnessGraph> graphs;
  std::vector<std::size_t> links;
};

inline Chain chain_of_path(const std::vector<OmegaVec>& values, const std::vector<GraphEdge>& edges,
                           const std::vector<std::size_t>& comp, const std::vector<std::size_t>& nodes,
                           const std::vector<std::size_t>& path_edges) {
  Chain c;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const OmegaVec& v = values[nodes[k]];
    c.graphs.push_back(MarkedWitnessGraph{v, component_graph(values, edges, comp, nodes[k]), v});
    if (k + 1 < nodes.size()) c.links.push_back(edges[path_edges[k]].action);
  }
  return c;
}

inline void append_chain(Chain& into, const Chain& more, std::optional<std::size_t> link) {
  if (link) into.links.push_back(*link);
  into.graphs.insert(into.graphs.end(), more.graphs.begin(), more.graphs.end());
  into.links.insert(into.links.end(), more.links.begin(), more.links.end());
}

inline MwgSequence splice(const MwgSequence& xi, std::size_t j, Chain chain) {
  MwgSequence out;
  out.graphs.assign(xi.graphs.begin(), xi.graphs.begin() + static_cast<std::ptrdiff_t>(j));
  out.links.assign(xi.links.begin(), xi.links.begin() + static_cast<std::ptrdiff_t>(j));
  out.graphs.insert(out.graphs.end(), chain.graphs.begin(), chain.graphs.end());
  out.links.insert(out.links.end(), chain.links.begin(), chain.links.end());
  out.graphs.insert(out.graphs.end(), xi.graphs.begin() + static_cast<std::ptrdiff_t>(j) + 1, xi.graphs.end());
  out.links.insert(out.links.end(), xi.links.begin() + static_cast<std::ptrdiff_t>(j), xi.links.end());
  return out;
}

inline std::vector<MwgSequence> dedup(std::vector<MwgSequence> v) {
  std::vector<MwgSequence> out;
  std::unordered_set<std::string> keys;
  for (auto& x : v)
    if (keys.insert(canonical_key(x)).second) out.push_back(std::move(x));
  return out;
}

inline std::vector<MwgSequence> dec_io(const MwgSequence& xi, const Defect& d) {
  std::vector<MwgSequence> out;
  for (std::int64_t n = 0; n <= d.c; ++n) {
    MwgSequence child = xi;
    auto& m = child.graphs[d.j];
    (d.kind == Defect::Kind::InBounded ? m.in_mark : m.out_mark)[d.index] = n;
    out.push_back(std::move(child));
  }
  return out;
}

inline std::vector<MwgSequence> dec_unpumpable(const MwgSequence& xi, std::size_t j, const Vas& vas,
                                               const Budgets& b, BoundCertificate* cert_out) {
  const auto& m = xi.graphs[j];
  const auto cert = bounded_component_certificate(m, vas, b.km);
  if (cert_out) *cert_out = cert;
  const std::size_t i = cert.index;
  const auto c = static_cast<std::size_t>(cert.bound);
  const auto& g = m.graph;
  const std::size_t width = c + 1;

  std::vector<OmegaVec> values;
  for (std::size_t q = 0; q < g.nodes.size(); ++q)
    for (std::size_t n = 0; n < width; ++n) {
      OmegaVec v = g.nodes[q];
      v[i] = static_cast<std::int64_t>(n);
      values.push_back(std::move(v));
    }
  std::vector<GraphEdge> edges;
  for (const auto& e : g.edges) {
    const std::int64_t di = vas.delta(e.action)[i];
    for (std::size_t n = 0; n < width; ++n) {
      const std::int64_t n2 = static_cast<std::int64_t>(n) + di;
      if (n2 < 0 || n2 > static_cast<std::int64_t>(c)) continue;
      edges.push_back(GraphEdge{e.src * width + n, e.action, e.dst * width + static_cast<std::size_t>(n2)});
    }
  }
  graph::Digraph pg{values.size(), {}};
  for (const auto& e : edges) pg.edges.emplace_back(e.src, e.dst);
  const auto comp = graph::scc(pg);

  auto allowed = [&](const OmegaVec& mark, std::size_t n) {
    return is_omega(mark[i]) || mark[i] == static_cast<std::int64_t>(n);
  };
  std::vector<std::size_t> entries;
  std::vector<char> exits(values.size(), 0);
  for (std::size_t n = 0; n < width; ++n) {
    if (allowed(m.in_mark, n)) entries.push_back(g.root * width + n);
    if (allowed(m.out_mark, n)) exits[g.root * width + n] = 1;
  }

  std::vector<MwgSequence> out;
  graph::simple_paths(
      pg, entries, exits,
      [&](const std::vector<std::size_t>& nodes, const std::vector<std::size_t>& pe) {
        Chain ch = chain_of_path(values, edges, comp, nodes, pe);
        OmegaVec in = m.in_mark, outm = m.out_mark;
        in[i] = values[nodes.front()][i];
        outm[i] = values[nodes.back()][i];
        ch.graphs.front().in_mark = in;
        ch.graphs.back().out_mark = outm;
        out.push_back(splice(xi, j, std::move(ch)));
        if (out.size() > b.max_children) throw ResourceExhausted("dec: too many children");
      },
      b.max_paths);
  return out;
}

inline std::vector<MwgSequence> dec_edge(const MwgSequence& xi, const Defect& d, const Budgets& b) {
  const auto& m = xi.graphs[d.j];
  const auto& g = m.graph;
  const GraphEdge removed = g.edges[d.index];
  std::vector<GraphEdge> rest;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (e != d.index) rest.push_back(g.edges[e]);
  graph::Digraph rg{g.nodes.size(), {}};
  for (const auto& e : rest) rg.edges.emplace_back(e.src, e.dst);
  const auto comp = graph::scc(rg);

  // All chains for simple paths u ~> v avoiding the removed edge.
  auto chains_between = [&](std::size_t u, std::size_t v) {
    std::vector<Chain> out;
    std::vector<char> target(g.nodes.size(), 0);
    target[v] = 1;
    graph::simple_paths(
        rg, {u}, target,
        [&](const std::vector<std::size_t>& nodes, const std::vector<std::size_t>& pe) {
          if (nodes.back() != v) return;
          out.push_back(chain_of_path(g.nodes, rest, comp, nodes, pe));
        },
        b.max_paths);
    return out;
  };
  const auto head = chains_between(g.root, removed.src);
  const auto middle = chains_between(removed.dst, removed.src);
  const auto tail = chains_between(removed.dst, g.root);
  const auto whole = chains_between(g.root, g.root);

  std::vector<MwgSequence> out;
  auto emit = [&](Chain ch) {
    ch.graphs.front().in_mark = m.in_mark;
    ch.graphs.back().out_mark = m.out_mark;
    out.push_back(splice(xi, d.j, std::move(ch)));
    if (out.size() > b.max_children) throw ResourceExhausted("dec: too many children");
  };
  for (const auto& w : whole) emit(w);
  // m >= 1 occurrences: head, (e middle)^(m-1), e tail.
  std::vector<Chain> partial = head;
  for (std::int64_t occ = 1; occ <= d.c && !partial.empty(); ++occ) {
    for (const auto& p : partial)
      for (const auto& t : tail) {
        Chain ch = p;
        append_chain(ch, t, removed.action);
        emit(std::move(ch));
      }
    if (occ == d.c) break;
    std::vector<Chain> next;
    for (const auto& p : partial)
      for (const auto& mid : middle) {
        Chain ch = p;
        append_chain(ch, mid, removed.action);
        next.push_back(std::move(ch));
        if (next.size() > b.max_children) throw ResourceExhausted("dec: too many children");
      }
    partial = std::move(next);
  }
  return out;
}

}  // namespace detail

/// Replaces an imperfect sequence by finitely many sequences of strictly smaller rank whose run
/// sets jointly cover its run set.
inline std::vector<MwgSequence> dec(const MwgSequence& xi, const Defect& d, const Vas& vas,
                                    const Budgets& b = {}, BoundCertificate* cert_out = nullptr) {
  switch (d.kind) {
    case Defect::Kind::Infeasible: return {};
    case Defect::Kind::NotForwardPumpable:
    case Defect::Kind::NotBackwardPumpable:
      return detail::dedup(detail::dec_unpumpable(xi, d.j, vas, b, cert_out));
    case Defect::Kind::InBounded:
    case Defect::Kind::OutBounded: return detail::dedup(detail::dec_io(xi, d));
    case Defect::Kind::EdgeBounded: return detail::dedup(detail::dec_edge(xi, d, b));
  }
  return {};
}

namespace detail {

inline std::vector<std::size_t> parikh(const std::vector<std::size_t>& edges, std::size_t n_edges) {
  std::vector<std::size_t> p(n_edges, 0);
  for (std::size_t e : edges) ++p[e];
  return p;
}

inline std::size_t to_count(const BigInt& v) {
  if (v < 0 || v > BigInt(std::numeric_limits<std::uint32_t>::max()))
    throw ResourceExhausted("extract_witness: multiplicity out of range");
  return static_cast<std::size_t>(v);
}

}  // namespace detail

/// A run of a perfect sequence. Per graph the word is
///   pump_in^n . cycle^(n-1) . base . pump_out^n
/// where cycle and base are Euler circuits realising a homogeneous and a particular solution of
/// the linear system, so the Parikh image matches the solution z + n*K*h. Candidates are tried
/// for growing K and n and the first one that simulates correctly is returned.
inline Run extract_witness(const MwgSequence& xi, const Vas& vas, const Config& source,
                           const Budgets& b = {}) {
  auto rep = is_perfect(xi, vas, b);
  if (rep.defect) throw PreconditionError("extract_witness: sequence is not perfect");
  const auto& lay = rep.layout;
  const std::size_t d = vas.dim();

  // Coordinates a homogeneous solution must make positive.
  std::vector<std::size_t> need;
  for (std::size_t j = 0; j < xi.graphs.size(); ++j) {
    const auto& m = xi.graphs[j];
    for (std::size_t e = 0; e < m.graph.edges.size(); ++e) need.push_back(lay.psi(j, e));
    for (std::size_t i = 0; i < d; ++i) {
      if (is_omega(m.in_mark[i])) need.push_back(lay.x(j, i));
      if (is_omega(m.out_mark[i])) need.push_back(lay.y(j, i));
    }
  }
  const std::size_t ncols = rep.basis.part.front().size();
  BigVec h(ncols, 0);
  std::set<std::size_t> used;
  for (std::size_t col : need) {
    if (h[col] > 0) continue;
    auto it = std::find_if(rep.basis.hom.begin(), rep.basis.hom.end(), [&](const BigVec& v) { return v[col] > 0; });
    if (it == rep.basis.hom.end()) throw PreconditionError("extract_witness: bounded coordinate in perfect sequence");
    for (std::size_t c = 0; c < ncols; ++c) h[c] += (*it)[c];
  }

  struct PerGraph {
    graph::Digraph g;
    std::vector<std::size_t> zpsi, hpsi, pin, pout;
  };
  std::vector<PerGraph> per;
  for (std::size_t j = 0; j < xi.graphs.size(); ++j) {
    const auto& m = xi.graphs[j];
    PerGraph pg;
    pg.g = m.graph.digraph();
    const std::size_t ne = m.graph.edges.size();
    pg.pin = detail::parikh(rep.forward[j].edges, ne);
    pg.pout = detail::parikh(rep.backward[j].edges, ne);
    for (std::size_t e = 0; e < ne; ++e) pg.hpsi.push_back(detail::to_count(h[lay.psi(j, e)]));
    per.push_back(std::move(pg));
  }

  // Smallest K making K*h - P+ - P- positive on every edge.
  std::size_t kmin = 1;
  for (const auto& pg : per)
    for (std::size_t e = 0; e < pg.hpsi.size(); ++e)
      kmin = std::max(kmin, (pg.pin[e] + pg.pout[e] + 1 + pg.hpsi[e] - 1) / pg.hpsi[e]);

  for (const auto& z : rep.basis.part) {
    for (std::size_t total = 0; total < 24; ++total) {
      for (std::size_t a = 0; a <= total; ++a) {
        const std::size_t K = kmin << a;
        const std::size_t n = std::size_t{1} << (total - a);
        std::vector<std::size_t> word;
        bool too_long = false;
        for (std::size_t j = 0; j < xi.graphs.size() && !too_long; ++j) {
          const auto& m = xi.graphs[j];
          const auto& pg = per[j];
          const std::size_t ne = m.graph.edges.size();
          std::vector<std::size_t> cyc(ne), base(ne);
          std::size_t est = 0;
          for (std::size_t e = 0; e < ne; ++e) {
            cyc[e] = K * pg.hpsi[e] - pg.pin[e] - pg.pout[e];
            base[e] = detail::to_count(z[lay.psi(j, e)]) + cyc[e];
            est += n * (pg.pin[e] + pg.pout[e]) + (n - 1) * cyc[e] + base[e];
          }
          if (est > b.max_witness_length) {
            too_long = true;
            break;
          }
          auto sigma = graph::euler_circuit(pg.g, cyc, m.graph.root);
          auto u = graph::euler_circuit(pg.g, base, m.graph.root);
          if (!sigma || !u) throw PreconditionError("extract_witness: flow is not an Euler cycle");
          if (j > 0) word.push_back(xi.links[j - 1]);
          auto put = [&](const std::vector<std::size_t>& es, std::size_t times) {
            for (std::size_t r = 0; r < times; ++r)
              for (std::size_t e : es) word.push_back(m.graph.edges[e].action);
          };
          put(rep.forward[j].edges, n);
          put(*sigma, n - 1);
          put(*u, 1);
          put(rep.backward[j].edges, n);
        }
        if (too_long) continue;
        auto run = try_run_from_actions(vas, source, word);
        if (run && run_in_sequence(*run, xi)) return *run;
      }
    }
  }
  throw ResourceExhausted("extract_witness: no candidate within the length budget");
}

struct TraceStep {
  std::size_t step = 0;
  std::size_t parent = 0;
  std::optional<Defect> defect;  // empty when the parent was perfect
  std::optional<BoundCertificate> certificate;
  std::vector<std::size_t> children;
  Ordinal parent_rank;
  std::vector<Ordinal> child_ranks;
};

struct Trace {
  std::vector<TraceStep> steps;
};

struct Limits {
  std::size_t max_steps = 1'000'000;
  Budgets budgets;
  bool stop_at_first_witness = false;  // answer as soon as one perfect member yields a run
};

struct Reachable {
  Run run;
  std::vector<MwgSequence> family;
};
struct Unreachable {};
struct Exhausted {
  std::string reason;
};

struct Outcome {
  std::variant<Reachable, Unreachable, Exhausted> result;
  Trace trace;
  std::vector<MwgSequence> perfect;  // final (or partial, when exhausted) perfect family
  std::size_t steps = 0;
};

/// Called once per loop step with the popped sequence and its replacement (the sequence itself
/// when perfect).
using StepObserver =
    std::function<void(const TraceStep&, const MwgSequence&, const std::vector<MwgSequence>&)>;

/// Worklist decomposition from the initial sequence until every sequence is perfect.
inline Outcome klmst_solve(const Instance& inst, const Limits& limits = {}, const StepObserver& observer = {}) {
  Outcome out;
  std::deque<std::pair<std::size_t, MwgSequence>> work;
  std::unordered_set<std::string> seen;
  std::size_t next_id = 0;
  auto start = initial_sequence(inst);
  seen.insert(canonical_key(start));
  work.emplace_back(next_id++, std::move(start));
  try {
    while (!work.empty()) {
      if (out.steps >= limits.max_steps) {
        out.result = Exhausted{"step limit reached"};
        return out;
      }
      auto [id, xi] = std::move(work.front());
      work.pop_front();
      ++out.steps;
      TraceStep ts;
      ts.step = out.steps;
      ts.parent = id;
      ts.parent_rank = rank_sequence(xi);
      auto rep = is_perfect(xi, inst.vas, limits.budgets);
      if (!rep.defect) {
        out.perfect.push_back(xi);
        out.trace.steps.push_back(ts);
        if (observer) observer(ts, xi, {xi});
        if (limits.stop_at_first_witness) {
          Run empty{inst.source, {}, inst.source};
          if (inst.source == inst.target && run_in_sequence(empty, xi)) {
            out.result = Reachable{empty, out.perfect};
            return out;
          }
          try {
            Run r = extract_witness(xi, inst.vas, inst.source, limits.budgets);
            out.result = Reachable{std::move(r), out.perfect};
            return out;
          } catch (const ResourceExhausted&) {
          }
        }
        continue;
      }
      ts.defect = rep.defect;
      BoundCertificate cert;
      auto children = dec(xi, *rep.defect, inst.vas, limits.budgets, &cert);
      if (rep.defect->kind == Defect::Kind::NotForwardPumpable ||
          rep.defect->kind == Defect::Kind::NotBackwardPumpable)
        ts.certificate = cert;
      std::vector<MwgSequence> kept;
      for (auto& ch : children) {
        ts.child_ranks.push_back(rank_sequence(ch));
        if (!seen.insert(canonical_key(ch)).second) continue;
        ts.children.push_back(next_id);
        kept.push_back(ch);
        work.emplace_back(next_id++, std::move(ch));
      }
      out.trace.steps.push_back(ts);
      if (observer) observer(ts, xi, kept);
    }
  } catch (const ResourceExhausted& e) {
    out.result = Exhausted{e.what()};
    return out;
  }

  if (out.perfect.empty()) {
    out.result = Unreachable{};
    return out;
  }
  Run empty{inst.source, {}, inst.source};
  if (inst.source == inst.target)
    for (const auto& xi : out.perfect)
      if (run_in_sequence(empty, xi)) {
        out.result = Reachable{empty, out.perfect};
        return out;
      }
  std::string last_error = "no witness";
  for (const auto& xi : out.perfect) {
    try {
      Run r = extract_witness(xi, inst.vas, inst.source, limits.budgets);
      out.result = Reachable{std::move(r), out.perfect};
      return out;
    } catch (const ResourceExhausted& e) {
      last_error = e.what();
    }
  }
  out.result = Exhausted{"witness extraction: " + last_error};
  return out;
}

/// Drops sequences whose ideal is included in the ideal of another member.
inline std::vector<MwgSequence> minimize(const std::vector<MwgSequence>& family, const Vas& vas) {
  std::vector<PrerunIdealRep> ideals;
  for (const auto& xi : family) ideals.push_back(sequence_ideal(xi, vas));
  auto leq = [&](std::size_t a, std::size_t b) {
    return omega_leq(ideals[a].src_bound, ideals[b].src_bound) &&
           omega_leq(ideals[a].tgt_bound, ideals[b].tgt_bound) &&
           product_leq(ideals[a].word_part, ideals[b].word_part);
  };
  std::vector<MwgSequence> out;
  for (std::size_t a = 0; a < family.size(); ++a) {
    bool drop = false;
    for (std::size_t b = 0; b < family.size() && !drop; ++b) {
      if (a == b || !leq(a, b)) continue;
      drop = !leq(b, a) || b < a;
    }
    if (!drop) out.push_back(family[a]);
  }
  return out;
}

}  // namespace vasreach
