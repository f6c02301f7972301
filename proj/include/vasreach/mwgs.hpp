#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "vasreach/diophantine.hpp"
#include "vasreach/error.hpp"
#include "vasreach/graph.hpp"
#include "vasreach/ideals.hpp"
#include "vasreach/omega.hpp"
#include "vasreach/ordinal.hpp"
#include "vasreach/vas.hpp"

namespace vasreach {

struct GraphEdge {
  std::size_t src = 0;
  std::size_t action = 0;
  std::size_t dst = 0;

  bool operator==(const GraphEdge&) const = default;
  auto operator<=>(const GraphEdge&) const = default;
};

/// Strongly connected graph of partial configurations sharing one finite support F.
struct WitnessGraph {
  std::vector<OmegaVec> nodes;
  std::vector<GraphEdge> edges;
  std::size_t root = 0;

  bool operator==(const WitnessGraph&) const = default;

  IndexSet support() const { return nodes.at(root).finite_set(); }

  graph::Digraph digraph() const {
    graph::Digraph g{nodes.size(), {}};
    for (const auto& e : edges) g.edges.emplace_back(e.src, e.dst);
    return g;
  }

  std::size_t index_of(const OmegaVec& v) const {
    auto it = std::find(nodes.begin(), nodes.end(), v);
    if (it == nodes.end()) throw PreconditionError("witness graph: unknown node " + to_string(v));
    return static_cast<std::size_t>(it - nodes.begin());
  }

  /// Sorts nodes and edges so that equal graphs compare equal.
  void canonicalize() {
    std::vector<std::size_t> order(nodes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return nodes[a] < nodes[b]; });
    std::vector<std::size_t> pos(nodes.size());
    std::vector<OmegaVec> sorted;
    for (std::size_t k = 0; k < order.size(); ++k) {
      pos[order[k]] = k;
      sorted.push_back(nodes[order[k]]);
    }
    for (auto& e : edges) e = GraphEdge{pos[e.src], e.action, pos[e.dst]};
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    nodes = std::move(sorted);
    root = pos[root];
  }
};

/// (s_in, G, s_out).
struct MarkedWitnessGraph {
  OmegaVec in_mark;
  WitnessGraph graph;
  OmegaVec out_mark;

  bool operator==(const MarkedWitnessGraph&) const = default;

  IndexSet F() const { return graph.support(); }
  IndexSet F_in() const { return in_mark.finite_set(); }
  IndexSet F_out() const { return out_mark.finite_set(); }
  const OmegaVec& root() const { return graph.nodes.at(graph.root); }
};

/// M_0, a_1, M_1, ..., a_k, M_k.
struct MwgSequence {
  std::vector<MarkedWitnessGraph> graphs;
  std::vector<std::size_t> links;

  bool operator==(const MwgSequence&) const = default;
};

/// Structural key used for deduplication.
inline std::string canonical_key(const MwgSequence& xi) {
  std::ostringstream os;
  for (std::size_t j = 0; j < xi.graphs.size(); ++j) {
    const auto& m = xi.graphs[j];
    if (j) os << "|" << xi.links[j - 1] << "|";
    os << to_string(m.in_mark) << "[";
    for (const auto& n : m.graph.nodes) os << to_string(n);
    os << ";";
    for (const auto& e : m.graph.edges) os << e.src << "," << e.action << "," << e.dst << ";";
    os << "r" << m.graph.root << "]" << to_string(m.out_mark);
  }
  return os.str();
}

/// One all-omega node, one self-loop per action, marks source and target.
inline MwgSequence initial_sequence(const Instance& inst) {
  const std::size_t d = inst.vas.dim();
  WitnessGraph g;
  g.nodes.push_back(OmegaVec::all_omega(d));
  for (std::size_t a = 0; a < inst.vas.size(); ++a) g.edges.push_back(GraphEdge{0, a, 0});
  g.root = 0;
  return MwgSequence{{MarkedWitnessGraph{OmegaVec::from(inst.source), g, OmegaVec::from(inst.target)}}, {}};
}

namespace detail {

inline bool agrees_on(const OmegaVec& a, const OmegaVec& b, const IndexSet& F) {
  return std::all_of(F.begin(), F.end(), [&](std::size_t i) { return a[i] == b[i]; });
}

inline bool has_support(const OmegaVec& v, const IndexSet& F) { return v.finite_set() == F; }

}  // namespace detail

inline bool validate_graph(const MarkedWitnessGraph& m, const Vas& vas) {
  const std::size_t d = vas.dim();
  const auto& g = m.graph;
  if (g.nodes.empty() || g.root >= g.nodes.size()) return false;
  if (m.in_mark.size() != d || m.out_mark.size() != d) return false;
  const IndexSet F = g.support();
  for (const auto& n : g.nodes)
    if (n.size() != d || !detail::has_support(n, F) || !nonnegative(n)) return false;
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    for (std::size_t k = i + 1; k < g.nodes.size(); ++k)
      if (g.nodes[i] == g.nodes[k]) return false;
  for (const auto& e : g.edges) {
    if (e.src >= g.nodes.size() || e.dst >= g.nodes.size() || e.action >= vas.size()) return false;
    if (!is_partial_transition(g.nodes[e.src], vas.delta(e.action), g.nodes[e.dst])) return false;
  }
  if (!graph::strongly_connected(g.digraph())) return false;
  if (!nonnegative(m.in_mark) || !nonnegative(m.out_mark)) return false;
  const OmegaVec& s = m.root();
  if (project(m.in_mark, F) != s || project(m.out_mark, F) != s) return false;
  return true;
}

/// Structural invariants. Top-level sequences additionally pin fully finite outer marks.
inline bool validate_sequence(const MwgSequence& xi, const Vas& vas, bool top_level = true) {
  if (xi.graphs.empty() || xi.links.size() + 1 != xi.graphs.size()) return false;
  for (std::size_t a : xi.links)
    if (a >= vas.size()) return false;
  for (const auto& m : xi.graphs)
    if (!validate_graph(m, vas)) return false;
  if (top_level && (!xi.graphs.front().in_mark.fully_finite() || !xi.graphs.back().out_mark.fully_finite()))
    return false;
  return true;
}

/// (d - |F|, |E|, 2d - |F_in| - |F_out|).
inline GraphRank rank_graph(const MarkedWitnessGraph& m) {
  const std::size_t d = m.in_mark.size();
  return GraphRank{d - m.F().size(), m.graph.edges.size(), 2 * d - m.F_in().size() - m.F_out().size()};
}

inline Ordinal rank_sequence(const MwgSequence& xi) {
  std::vector<Ordinal::Term> ts;
  for (const auto& m : xi.graphs) ts.push_back(Ordinal::Term{rank_graph(m), 1});
  return Ordinal::from_terms(std::move(ts));
}

namespace detail {

inline bool matches(const Config& c, const OmegaVec& v) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!is_omega(v[i]) && c[i] != v[i]) return false;
  return true;
}

}  // namespace detail

/// Membership of a run in the run set of the sequence: the run splits into segments, segment j
/// follows a cycle on the root of G_j (configurations projected on F_j walk the graph) and starts
/// and ends on the marks, with the link actions in between.
inline bool run_in_sequence(const Run& rho, const MwgSequence& xi) {
  const std::size_t len = rho.word.size();
  auto config_at = [&](std::size_t p) -> const Config& { return p == 0 ? rho.source : rho.word[p - 1].dst; };
  // State (p, j, q): p letters consumed, inside graph j at node q.
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> todo;
  auto enter = [&](std::size_t p, std::size_t j) {
    const auto& m = xi.graphs[j];
    const Config& c = config_at(p);
    if (!detail::matches(c, m.in_mark) || !detail::matches(c, m.root())) return;
    if (seen.emplace(p, j, m.graph.root).second) todo.emplace_back(p, j, m.graph.root);
  };
  enter(0, 0);
  while (!todo.empty()) {
    auto [p, j, q] = todo.back();
    todo.pop_back();
    const auto& m = xi.graphs[j];
    const Config& c = config_at(p);
    if (q == m.graph.root && detail::matches(c, m.out_mark)) {
      if (j + 1 == xi.graphs.size()) {
        if (p == len) return true;
      } else if (p < len && rho.word[p].action == xi.links[j]) {
        enter(p + 1, j + 1);
      }
    }
    if (p == len) continue;
    const Step& t = rho.word[p];
    for (const auto& e : m.graph.edges) {
      if (e.src != q || e.action != t.action) continue;
      if (!detail::matches(t.dst, m.graph.nodes[e.dst])) continue;
      if (seen.emplace(p + 1, j, e.dst).second) todo.emplace_back(p + 1, j, e.dst);
    }
  }
  return false;
}

/// down(x) x Star(E_0) . A_1 . Star(E_1) ... A_k . Star(E_k) x down(y), reduced.
inline PrerunIdealRep sequence_ideal(const MwgSequence& xi, const Vas& vas) {
  PrerunIdealRep rep;
  rep.src_bound = xi.graphs.front().in_mark;
  rep.tgt_bound = xi.graphs.back().out_mark;
  for (std::size_t j = 0; j < xi.graphs.size(); ++j) {
    const auto& m = xi.graphs[j];
    if (j > 0) {
      // Largest transition (u, a, u + a) with u below the previous out-mark and u + a below the
      // next in-mark.
      const auto& out = xi.graphs[j - 1].out_mark;
      const auto& in = m.in_mark;
      const auto& delta = vas.delta(xi.links[j - 1]);
      OmegaVec u(out.size());
      bool empty = false;
      for (std::size_t i = 0; i < u.size(); ++i) {
        std::int64_t lim_out = out[i];
        std::int64_t lim_in = is_omega(in[i]) ? omega : in[i] - delta[i];
        u[i] = std::min(lim_out, lim_in);
        if (!is_omega(u[i]) && (u[i] < 0 || u[i] + delta[i] < 0)) empty = true;
      }
      if (empty)
        rep.word_part.push_back(Star{});
      else
        rep.word_part.push_back(Single{make_partial(u, xi.links[j - 1], vas)});
    }
    Star st;
    for (const auto& e : m.graph.edges)
      st.set.insert(PartialTransition{m.graph.nodes[e.src], e.action, m.graph.nodes[e.dst]});
    rep.word_part.push_back(std::move(st));
  }
  rep.word_part = reduce_product(std::move(rep.word_part));
  return rep;
}

/// Column layout of the system built for a sequence.
struct LLayout {
  std::vector<std::size_t> x_base, psi_base, y_base;
  std::size_t d = 0;

  std::size_t x(std::size_t j, std::size_t i) const { return x_base[j] + i; }
  std::size_t y(std::size_t j, std::size_t i) const { return y_base[j] + i; }
  std::size_t psi(std::size_t j, std::size_t e) const { return psi_base[j] + e; }
};

/// Kirchhoff, flow, link and mark equations over x_j, psi_j, y_j.
inline std::pair<NatLinearSystem, LLayout> build_L(const MwgSequence& xi, const Vas& vas) {
  const std::size_t d = vas.dim();
  NatLinearSystem sys;
  LLayout lay;
  lay.d = d;
  for (std::size_t j = 0; j < xi.graphs.size(); ++j) {
    const std::string J = std::to_string(j);
    lay.x_base.push_back(sys.cols());
    for (std::size_t i = 0; i < d; ++i) sys.add_var("x" + J + "[" + std::to_string(i + 1) + "]");
    lay.psi_base.push_back(sys.cols());
    for (std::size_t e = 0; e < xi.graphs[j].graph.edges.size(); ++e)
      sys.add_var("psi" + J + "[" + std::to_string(e) + "]");
    lay.y_base.push_back(sys.cols());
    for (std::size_t i = 0; i < d; ++i) sys.add_var("y" + J + "[" + std::to_string(i + 1) + "]");
  }
  for (std::size_t j = 0; j < xi.graphs.size(); ++j) {
    const auto& m = xi.graphs[j];
    const auto& g = m.graph;
    for (std::size_t q = 0; q < g.nodes.size(); ++q) {
      std::vector<std::pair<std::size_t, BigInt>> terms;
      for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (g.edges[e].dst == q) terms.emplace_back(lay.psi(j, e), 1);
        if (g.edges[e].src == q) terms.emplace_back(lay.psi(j, e), -1);
      }
      sys.add_row(terms, 0);
    }
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<std::pair<std::size_t, BigInt>> terms{{lay.y(j, i), 1}, {lay.x(j, i), -1}};
      for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (auto v = vas.delta(g.edges[e].action)[i]; v != 0) terms.emplace_back(lay.psi(j, e), -v);
      sys.add_row(terms, 0);
    }
    if (j > 0)
      for (std::size_t i = 0; i < d; ++i)
        sys.add_row({{lay.x(j, i), 1}, {lay.y(j - 1, i), -1}}, vas.delta(xi.links[j - 1])[i]);
    for (std::size_t i : m.F_in()) sys.add_row({{lay.x(j, i), 1}}, m.in_mark[i]);
    for (std::size_t i : m.F_out()) sys.add_row({{lay.y(j, i), 1}}, m.out_mark[i]);
  }
  return {std::move(sys), std::move(lay)};
}

}  // namespace vasreach
