#pragma once

#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vasreach/coverability.hpp"
#include "vasreach/diophantine.hpp"
#include "vasreach/error.hpp"
#include "vasreach/ideals.hpp"
#include "vasreach/klmst.hpp"
#include "vasreach/mwgs.hpp"
#include "vasreach/omega.hpp"
#include "vasreach/vas.hpp"

namespace vasreach::io {

using nlohmann::json;

inline json to_json(const OmegaVec& v) {
  json a = json::array();
  for (auto x : v) {
    if (is_omega(x))
      a.push_back("w");
    else
      a.push_back(x);
  }
  return a;
}

inline json to_json(const Config& c) { return json(std::vector<std::int64_t>(c)); }

inline OmegaVec omega_vec_from_json(const json& j) {
  if (!j.is_array()) throw ParseError(1, "expected an array for an omega-vector");
  OmegaVec v;
  for (const auto& x : j) {
    if (x.is_string() && x.get<std::string>() == "w")
      v.push_back(omega);
    else if (x.is_number_integer() && x.get<std::int64_t>() >= 0)
      v.push_back(x.get<std::int64_t>());
    else
      throw ParseError(1, "omega-vector entries must be naturals or \"w\"");
  }
  return v;
}

inline Config config_from_json(const json& j) {
  OmegaVec v = omega_vec_from_json(j);
  if (!v.fully_finite()) throw ParseError(1, "configuration must not contain \"w\"");
  return v.to_config();
}

inline std::size_t action_index(const Vas& vas, const json& name) {
  if (!name.is_string()) throw ParseError(1, "action must be referenced by name");
  auto idx = vas.find(name.get<std::string>());
  if (!idx) throw ParseError(1, "unknown action '" + name.get<std::string>() + "'");
  return *idx;
}

inline json to_json(const Prerun& r, const Vas& vas) {
  json word = json::array();
  for (const auto& t : r.word) word.push_back(json::array({to_json(t.src), vas.name(t.action), to_json(t.dst)}));
  return json{{"source", to_json(r.source)}, {"word", word}, {"target", to_json(r.target)},
              {"label", label_string(r, vas)}};
}

inline Prerun prerun_from_json(const json& j, const Vas& vas) {
  Prerun r;
  r.source = config_from_json(j.at("source"));
  r.target = config_from_json(j.at("target"));
  for (const auto& t : j.at("word")) {
    if (!t.is_array() || t.size() != 3) throw ParseError(1, "word letters are [src, action, dst]");
    r.word.push_back(Step{config_from_json(t[0]), action_index(vas, t[1]), config_from_json(t[2])});
  }
  return r;
}

inline json to_json(const PartialTransition& t, const Vas& vas) {
  return json::array({to_json(t.src), vas.name(t.action), to_json(t.dst)});
}

inline json to_json(const Product& p, const Vas& vas) {
  json a = json::array();
  for (const auto& atom : p) {
    if (const auto* s = std::get_if<Star>(&atom)) {
      json el = json::array();
      for (const auto& t : s->set.elements()) el.push_back(to_json(t, vas));
      a.push_back(json{{"star", el}});
    } else {
      a.push_back(json{{"single", to_json(std::get<Single>(atom).t, vas)}});
    }
  }
  return a;
}

inline json to_json(const PrerunIdealRep& r, const Vas& vas) {
  return json{{"source", to_json(r.src_bound)}, {"word", to_json(r.word_part, vas)}, {"target", to_json(r.tgt_bound)}};
}

inline json actions_json(const Vas& vas) {
  json a = json::array();
  for (const auto& act : vas.actions()) a.push_back(json{{"name", act.name}, {"delta", act.delta}});
  return a;
}

inline json sequence_json(const MwgSequence& xi, const Vas& vas) {
  json seq = json::array();
  for (std::size_t j = 0; j < xi.graphs.size(); ++j) {
    if (j > 0) seq.push_back(json{{"link", vas.name(xi.links[j - 1])}});
    const auto& m = xi.graphs[j];
    json nodes = json::array(), edges = json::array();
    for (std::size_t q = 0; q < m.graph.nodes.size(); ++q)
      nodes.push_back(json{{"id", "n" + std::to_string(q)}, {"value", to_json(m.graph.nodes[q])}});
    for (const auto& e : m.graph.edges)
      edges.push_back(json::array({"n" + std::to_string(e.src), vas.name(e.action), "n" + std::to_string(e.dst)}));
    seq.push_back(json{{"graph", json{{"nodes", nodes}, {"edges", edges}, {"root", "n" + std::to_string(m.graph.root)}}},
                       {"in_mark", to_json(m.in_mark)},
                       {"out_mark", to_json(m.out_mark)}});
  }
  return seq;
}

inline json to_json(const MwgSequence& xi, const Vas& vas) {
  return json{{"dim", vas.dim()}, {"actions", actions_json(vas)}, {"sequence", sequence_json(xi, vas)}};
}

inline Vas vas_from_json(const json& j) {
  std::vector<Action> acts;
  for (const auto& a : j.at("actions")) acts.push_back(Action{a.at("name").get<std::string>(), a.at("delta").get<IntVec>()});
  return Vas(j.at("dim").get<std::size_t>(), std::move(acts));
}

inline MwgSequence sequence_from_json(const json& seq, const Vas& vas) {
  MwgSequence xi;
  bool expect_graph = true;
  for (const auto& item : seq) {
    if (expect_graph) {
      MarkedWitnessGraph m;
      const auto& g = item.at("graph");
      std::map<std::string, std::size_t> ids;
      for (const auto& n : g.at("nodes")) {
        ids[n.at("id").get<std::string>()] = m.graph.nodes.size();
        m.graph.nodes.push_back(omega_vec_from_json(n.at("value")));
      }
      auto node = [&](const json& id) {
        auto it = ids.find(id.get<std::string>());
        if (it == ids.end()) throw ParseError(1, "unknown node id '" + id.get<std::string>() + "'");
        return it->second;
      };
      for (const auto& e : g.at("edges")) m.graph.edges.push_back(GraphEdge{node(e.at(0)), action_index(vas, e.at(1)), node(e.at(2))});
      m.graph.root = node(g.at("root"));
      m.in_mark = omega_vec_from_json(item.at("in_mark"));
      m.out_mark = omega_vec_from_json(item.at("out_mark"));
      xi.graphs.push_back(std::move(m));
    } else {
      xi.links.push_back(action_index(vas, item.at("link")));
    }
    expect_graph = !expect_graph;
  }
  if (expect_graph) throw ParseError(1, "sequence must end with a graph");
  return xi;
}

inline std::pair<Vas, MwgSequence> mwgs_from_json(const json& j) {
  Vas vas = vas_from_json(j);
  return {vas, sequence_from_json(j.at("sequence"), vas)};
}

inline json defect_json(const Defect& d) {
  static const char* names[] = {"Infeasible", "NotForwardPumpable", "NotBackwardPumpable",
                                "InBounded", "OutBounded", "EdgeBounded"};
  json o{{"kind", names[static_cast<int>(d.kind)]}};
  if (d.kind == Defect::Kind::Infeasible) return o;
  o["graph"] = d.j;
  if (d.kind == Defect::Kind::InBounded || d.kind == Defect::Kind::OutBounded) {
    o["component"] = d.index + 1;
    o["bound"] = d.c;
  } else if (d.kind == Defect::Kind::EdgeBounded) {
    o["edge"] = d.index;
    o["bound"] = d.c;
  }
  return o;
}

inline json trace_step_json(const TraceStep& s) {
  json o{{"step", s.step}, {"parent", s.parent}, {"parent_rank", to_string(s.parent_rank)}};
  o["defect"] = s.defect ? defect_json(*s.defect) : json("Perfect");
  if (s.certificate) o["certificate"] = json{{"component", s.certificate->index + 1}, {"bound", s.certificate->bound}};
  o["children"] = s.children;
  json ranks = json::array();
  for (const auto& r : s.child_ranks) ranks.push_back(to_string(r));
  o["child_ranks"] = ranks;
  return o;
}

inline json basis_json(const HilbertBasis& hb) {
  auto rows = [](const std::vector<BigVec>& vs) {
    json a = json::array();
    for (const auto& v : vs) {
      json r = json::array();
      for (const auto& x : v) r.push_back(x.str());
      a.push_back(r);
    }
    return a;
  };
  return json{{"hom", rows(hb.hom)}, {"part", rows(hb.part)}};
}

inline std::string basis_text(const HilbertBasis& hb) {
  std::ostringstream os;
  auto put = [&](const char* name, const std::vector<BigVec>& vs) {
    os << name << " (" << vs.size() << ")\n";
    for (const auto& v : vs) {
      os << " ";
      for (const auto& x : v) os << " " << x;
      os << "\n";
    }
  };
  put("hom", hb.hom);
  put("part", hb.part);
  return os.str();
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '"' || c == '\\') o += '\\';
    o += c;
  }
  return o;
}

}  // namespace detail

/// One cluster per witness graph, marks as separate boxes, links as dashed edges.
inline std::string to_dot(const std::vector<MwgSequence>& family, const Vas& vas) {
  std::ostringstream os;
  os << "digraph family {\n  rankdir=LR;\n  node [shape=ellipse];\n";
  for (std::size_t s = 0; s < family.size(); ++s) {
    const auto& xi = family[s];
    const std::string S = "s" + std::to_string(s);
    for (std::size_t j = 0; j < xi.graphs.size(); ++j) {
      const auto& m = xi.graphs[j];
      const std::string G = S + "g" + std::to_string(j);
      os << "  subgraph cluster_" << G << " {\n    label=\"sequence " << s << " graph " << j << "\";\n";
      for (std::size_t q = 0; q < m.graph.nodes.size(); ++q)
        os << "    " << G << "n" << q << " [label=\"" << to_string(m.graph.nodes[q]) << "\""
           << (q == m.graph.root ? ", peripheries=2" : "") << "];\n";
      for (const auto& e : m.graph.edges)
        os << "    " << G << "n" << e.src << " -> " << G << "n" << e.dst << " [label=\""
           << detail::dot_escape(vas.name(e.action)) << "\"];\n";
      os << "  }\n";
      os << "  " << G << "in [shape=box, label=\"" << to_string(m.in_mark) << "\"];\n";
      os << "  " << G << "out [shape=box, label=\"" << to_string(m.out_mark) << "\"];\n";
      os << "  " << G << "in -> " << G << "n" << m.graph.root << " [style=dotted];\n";
      os << "  " << G << "n" << m.graph.root << " -> " << G << "out [style=dotted];\n";
      if (j > 0)
        os << "  " << S << "g" << (j - 1) << "out -> " << G << "in [style=dashed, label=\""
           << detail::dot_escape(vas.name(xi.links[j - 1])) << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

/// Karp-Miller tree; accelerated nodes are filled, repeated leaves point back dashed.
inline std::string km_dot(const KmTree& t, const std::vector<std::string>& state_names,
                          const std::vector<std::string>& edge_labels) {
  std::ostringstream os;
  os << "digraph km {\n";
  for (std::size_t v = 0; v < t.nodes.size(); ++v) {
    const auto& n = t.nodes[v];
    os << "  k" << v << " [label=\"" << detail::dot_escape(state_names.at(n.state)) << " " << to_string(n.value)
       << "\"" << (n.accelerated ? ", style=filled" : "") << "];\n";
    if (n.parent != no_node)
      os << "  k" << n.parent << " -> k" << v << " [label=\"" << detail::dot_escape(edge_labels.at(n.via_edge))
         << "\"];\n";
    if (n.repeat_of != no_node) os << "  k" << v << " -> k" << n.repeat_of << " [style=dashed];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace vasreach::io
