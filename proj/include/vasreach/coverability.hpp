#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vasreach/error.hpp"
#include "vasreach/mwgs.hpp"
#include "vasreach/omega.hpp"
#include "vasreach/vas.hpp"

namespace vasreach {

struct StateEdge {
  std::size_t src = 0;
  IntVec delta;
  std::size_t dst = 0;
  std::size_t label = 0;  // action index, kept for reporting
};

/// A VAS with control states. Components outside `counters` are treated as omega.
struct StateVas {
  std::size_t states = 0;
  std::vector<StateEdge> edges;
  IndexSet counters;
  std::size_t dim = 0;
};

inline StateVas state_vas_of(const WitnessGraph& g, const Vas& vas, bool reversed = false) {
  StateVas sv;
  sv.states = g.nodes.size();
  sv.dim = vas.dim();
  sv.counters = full_index_set(vas.dim());
  for (const auto& e : g.edges) {
    IntVec delta = vas.delta(e.action);
    if (reversed) {
      for (auto& v : delta) v = -v;
      sv.edges.push_back(StateEdge{e.dst, std::move(delta), e.src, e.action});
    } else {
      sv.edges.push_back(StateEdge{e.src, std::move(delta), e.dst, e.action});
    }
  }
  return sv;
}

inline constexpr std::size_t no_node = static_cast<std::size_t>(-1);

struct CoverNode {
  std::size_t state = 0;
  OmegaVec value;
  std::size_t parent = no_node;
  std::size_t via_edge = no_node;
  bool accelerated = false;
  std::size_t repeat_of = no_node;  // dominating expanded node when this node is a leaf
};

struct KmTree {
  std::vector<CoverNode> nodes;
  std::vector<std::vector<std::size_t>> children;
};

struct KmOptions {
  std::size_t node_budget = 200'000;
};

/// Karp-Miller tree with acceleration against strictly dominated ancestors at the same state.
/// A node dominated by an already expanded node at the same state is a leaf linked to it; every
/// run of the system still maps to a path through tree edges and these links.
inline KmTree km_tree(const StateVas& g, std::size_t init_state, const OmegaVec& init_value,
                      const KmOptions& opt = {}) {
  if (init_value.size() != g.dim) throw DimensionMismatch("km_cover: init dimension");
  OmegaVec v0 = project(init_value, g.counters);
  KmTree t;
  t.nodes.push_back(CoverNode{init_state, v0, no_node, no_node, false, no_node});
  t.children.emplace_back();
  std::vector<std::vector<std::size_t>> expanded(g.states);
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    std::size_t n = stack.back();
    stack.pop_back();
    // Leaf check: an expanded node at the same state already dominates this one.
    for (std::size_t a : expanded[t.nodes[n].state])
      if (omega_leq(t.nodes[n].value, t.nodes[a].value)) {
        t.nodes[n].repeat_of = a;
        break;
      }
    if (t.nodes[n].repeat_of != no_node) continue;
    expanded[t.nodes[n].state].push_back(n);
    std::vector<std::size_t> fresh;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const auto& edge = g.edges[e];
      if (edge.src != t.nodes[n].state) continue;
      OmegaVec v = omega_shift(t.nodes[n].value, edge.delta);
      if (!nonnegative(v)) continue;
      bool accel = false;
      for (std::size_t a = n; a != no_node; a = t.nodes[a].parent) {
        const auto& anc = t.nodes[a];
        if (anc.state != edge.dst || !omega_leq(anc.value, v) || anc.value == v) continue;
        for (std::size_t i = 0; i < v.size(); ++i)
          if (!is_omega(v[i]) && anc.value[i] < v[i]) {
            v[i] = omega;
            accel = true;
          }
      }
      if (t.nodes.size() >= opt.node_budget) throw ResourceExhausted("km_cover: node budget exceeded");
      t.nodes.push_back(CoverNode{edge.dst, std::move(v), n, e, accel, no_node});
      t.children.emplace_back();
      t.children[n].push_back(t.nodes.size() - 1);
      fresh.push_back(t.nodes.size() - 1);
    }
    for (auto it = fresh.rbegin(); it != fresh.rend(); ++it) stack.push_back(*it);
  }
  return t;
}

/// Per-state maximal omega-markings of the tree.
inline std::map<std::size_t, std::vector<OmegaVec>> km_maximal(const KmTree& t) {
  std::map<std::size_t, std::vector<OmegaVec>> out;
  for (const auto& n : t.nodes) {
    auto& vs = out[n.state];
    if (std::any_of(vs.begin(), vs.end(), [&](const OmegaVec& w) { return omega_leq(n.value, w); })) continue;
    std::erase_if(vs, [&](const OmegaVec& w) { return omega_leq(w, n.value); });
    vs.push_back(n.value);
  }
  for (auto& [q, vs] : out) std::sort(vs.begin(), vs.end());
  return out;
}

inline std::map<std::size_t, std::vector<OmegaVec>> km_cover(const StateVas& g, std::size_t init_state,
                                                             const OmegaVec& init_value,
                                                             const KmOptions& opt = {}) {
  return km_maximal(km_tree(g, init_state, init_value, opt));
}

/// A concrete edge path.
struct PathWitness {
  std::vector<std::size_t> edges;
  std::vector<std::size_t> actions;
  IntVec effect;
};

namespace detail {

inline bool omega_geq_target(const OmegaVec& v, const OmegaVec& target) { return omega_leq(target, v); }

}  // namespace detail

/// A path from init reaching a marking at target.state that dominates target.value, or nullopt.
/// Decided on the Karp-Miller tree; the path itself comes from a breadth-first search that
/// discards markings dominated by one already seen at the same state.
inline std::optional<PathWitness> coverable(const StateVas& g, std::size_t init_state,
                                            const OmegaVec& init_value, std::size_t target_state,
                                            const OmegaVec& target_value, const KmOptions& opt = {}) {
  auto tree = km_tree(g, init_state, init_value, opt);
  bool yes = std::any_of(tree.nodes.begin(), tree.nodes.end(), [&](const CoverNode& n) {
    return n.state == target_state && detail::omega_geq_target(n.value, target_value);
  });
  if (!yes) return std::nullopt;

  struct Entry {
    std::size_t state;
    OmegaVec value;
    std::size_t parent;
    std::size_t edge;
  };
  std::vector<Entry> entries{{init_state, project(init_value, g.counters), no_node, no_node}};
  std::map<std::size_t, std::vector<OmegaVec>> seen;
  seen[init_state].push_back(entries[0].value);
  std::size_t found = no_node;
  for (std::size_t head = 0; head < entries.size() && found == no_node; ++head) {
    if (entries[head].state == target_state && detail::omega_geq_target(entries[head].value, target_value)) {
      found = head;
      break;
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const auto& edge = g.edges[e];
      if (edge.src != entries[head].state) continue;
      OmegaVec v = omega_shift(entries[head].value, edge.delta);
      if (!nonnegative(v)) continue;
      auto& vs = seen[edge.dst];
      if (std::any_of(vs.begin(), vs.end(), [&](const OmegaVec& w) { return omega_leq(v, w); })) continue;
      vs.push_back(v);
      if (entries.size() >= opt.node_budget) throw ResourceExhausted("coverable: witness search budget exceeded");
      entries.push_back(Entry{edge.dst, std::move(v), head, e});
    }
  }
  if (found == no_node) throw ResourceExhausted("coverable: witness search ended without a path");
  PathWitness w;
  for (std::size_t k = found; entries[k].parent != no_node; k = entries[k].parent) w.edges.push_back(entries[k].edge);
  std::reverse(w.edges.begin(), w.edges.end());
  w.effect.assign(g.dim, 0);
  for (std::size_t e : w.edges) {
    w.actions.push_back(g.edges[e].label);
    for (std::size_t i = 0; i < g.dim; ++i) w.effect[i] += g.edges[e].delta[i];
  }
  return w;
}

/// A cycle on the root; edges index into the witness graph (reversed order already undone for
/// backward pumps, so actions read left to right as executed).
struct PumpWord {
  std::vector<std::size_t> edges;
  std::vector<std::size_t> actions;
  IntVec effect;
};

namespace detail {

inline std::optional<PumpWord> pump(const MarkedWitnessGraph& m, const Vas& vas, bool backward,
                                    const KmOptions& opt) {
  const OmegaVec& mark = backward ? m.out_mark : m.in_mark;
  const IndexSet grow = set_minus(mark.finite_set(), m.F());
  if (grow.empty()) return PumpWord{{}, {}, IntVec(vas.dim(), 0)};
  StateVas sv = state_vas_of(m.graph, vas, backward);
  OmegaVec target = mark;
  for (std::size_t i : grow) target[i] += 1;
  auto w = coverable(sv, m.graph.root, mark, m.graph.root, target, opt);
  if (!w) return std::nullopt;
  PumpWord p;
  p.edges = w->edges;
  if (backward) std::reverse(p.edges.begin(), p.edges.end());
  p.effect.assign(vas.dim(), 0);
  for (std::size_t e : p.edges) {
    p.actions.push_back(m.graph.edges[e].action);
    for (std::size_t i = 0; i < vas.dim(); ++i) p.effect[i] += vas.delta(m.graph.edges[e].action)[i];
  }
  return p;
}

}  // namespace detail

/// A cycle on the root executable from s_in that strictly increases every component of
/// F_in minus F. Empty when that set is empty.
inline std::optional<PumpWord> pumpable_forward(const MarkedWitnessGraph& m, const Vas& vas,
                                                const KmOptions& opt = {}) {
  return detail::pump(m, vas, false, opt);
}

/// Mirror image: a cycle on the root ending in s_out whose reverse strictly increases every
/// component of F_out minus F.
inline std::optional<PumpWord> pumpable_backward(const MarkedWitnessGraph& m, const Vas& vas,
                                                 const KmOptions& opt = {}) {
  return detail::pump(m, vas, true, opt);
}

struct BoundCertificate {
  std::size_t index = 0;
  std::int64_t bound = 0;
};

namespace detail {

/// Per state, the componentwise supremum over tree nodes that can still reach the root state
/// through the coverability graph (tree edges plus leaf back-links).
inline std::vector<OmegaVec> useful_sup(const KmTree& t, std::size_t n_states, std::size_t root_state,
                                        std::size_t d) {
  const std::size_t n = t.nodes.size();
  std::vector<std::vector<std::size_t>> pred(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t c : t.children[v]) pred[c].push_back(v);
    // A leaf continues like the expanded node that subsumes it.
    if (t.nodes[v].repeat_of != no_node)
      for (std::size_t c : t.children[t.nodes[v].repeat_of]) pred[c].push_back(v);
  }
  std::vector<char> useful(n, 0);
  std::vector<std::size_t> stack;
  for (std::size_t v = 0; v < n; ++v)
    if (t.nodes[v].state == root_state) {
      useful[v] = 1;
      stack.push_back(v);
    }
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t p : pred[v])
      if (!useful[p]) {
        useful[p] = 1;
        stack.push_back(p);
      }
  }
  std::vector<OmegaVec> sup(n_states, OmegaVec(d, -1));
  for (std::size_t v = 0; v < n; ++v) {
    if (!useful[v]) continue;
    auto& s = sup[t.nodes[v].state];
    for (std::size_t i = 0; i < d; ++i) s[i] = std::max(s[i], t.nodes[v].value[i]);
  }
  return sup;
}

}  // namespace detail

/// A component outside F bounded by c on every configuration of every run of the marked graph.
/// Bounds intersect the forward cover from s_in with the backward cover from s_out, each
/// restricted to nodes from which the root state remains reachable.
inline BoundCertificate bounded_component_certificate(const MarkedWitnessGraph& m, const Vas& vas,
                                                      const KmOptions& opt = {}) {
  const std::size_t d = vas.dim();
  const std::size_t ns = m.graph.nodes.size();
  auto fwd = km_tree(state_vas_of(m.graph, vas, false), m.graph.root, m.in_mark, opt);
  auto bwd = km_tree(state_vas_of(m.graph, vas, true), m.graph.root, m.out_mark, opt);
  auto fs = detail::useful_sup(fwd, ns, m.graph.root, d);
  auto bs = detail::useful_sup(bwd, ns, m.graph.root, d);
  const IndexSet cand = set_minus(set_union(m.F_in(), m.F_out()), m.F());
  for (std::size_t i : cand) {
    std::int64_t c = 0;
    bool finite = true;
    for (std::size_t q = 0; q < ns && finite; ++q) {
      std::int64_t b = std::min(fs[q][i], bs[q][i]);
      if (is_omega(b)) finite = false;
      c = std::max(c, b);
    }
    if (finite) return BoundCertificate{i, c};
  }
  std::string diag = "no bounded component among";
  for (std::size_t i : cand) diag += " " + std::to_string(i + 1);
  throw CertificateNotFound("bounded_component_certificate: " + diag);
}

}  // namespace vasreach
