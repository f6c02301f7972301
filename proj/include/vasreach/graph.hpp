#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "vasreach/error.hpp"

namespace vasreach::graph {

/// Directed multigraph over nodes 0..n-1; edges are (src, dst) pairs addressed by index.
struct Digraph {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::vector<std::vector<std::size_t>> out_edges() const {
    std::vector<std::vector<std::size_t>> out(n);
    for (std::size_t e = 0; e < edges.size(); ++e) out[edges[e].first].push_back(e);
    return out;
  }
};

/// Tarjan's algorithm. Returns comp[v]; component ids are in reverse topological order.
inline std::vector<std::size_t> scc(const Digraph& g) {
  const auto adj = g.out_edges();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(g.n, unset), low(g.n, 0), comp(g.n, unset);
  std::vector<char> on_stack(g.n, 0);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, ncomp = 0;

  // Iterative DFS: frame = (node, next out-edge position).
  for (std::size_t root = 0; root < g.n; ++root) {
    if (index[root] != unset) continue;
    std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < adj[v].size()) {
        std::size_t w = g.edges[adj[v][pos++]].second;
        if (index[w] == unset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = ncomp;
        } while (w != v);
        ++ncomp;
      }
      std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
    }
  }
  return comp;
}

inline bool strongly_connected(const Digraph& g) {
  if (g.n == 0) return false;
  auto comp = scc(g);
  return std::all_of(comp.begin(), comp.end(), [&](std::size_t c) { return c == comp[0]; });
}

/// Calls visit(nodes, edges) for every simple path from a node in `from` to a node marked in
/// `is_target`, in deterministic DFS order. Parallel edges yield distinct paths. Throws
/// ResourceExhausted after `limit` paths.
inline void simple_paths(
    const Digraph& g, const std::vector<std::size_t>& from, const std::vector<char>& is_target,
    const std::function<void(const std::vector<std::size_t>&, const std::vector<std::size_t>&)>& visit,
    std::size_t limit) {
  const auto adj = g.out_edges();
  std::size_t count = 0;
  std::vector<char> on_path(g.n, 0);
  std::vector<std::size_t> nodes, edges;
  std::function<void(std::size_t)> dfs = [&](std::size_t v) {
    nodes.push_back(v);
    on_path[v] = 1;
    if (is_target[v]) {
      if (++count > limit) throw ResourceExhausted("simple path enumeration limit exceeded");
      visit(nodes, edges);
    }
    for (std::size_t e : adj[v]) {
      std::size_t w = g.edges[e].second;
      if (on_path[w]) continue;
      edges.push_back(e);
      dfs(w);
      edges.pop_back();
    }
    on_path[v] = 0;
    nodes.pop_back();
  };
  for (std::size_t s : from) dfs(s);
}

/// Euler circuit through `start` using every edge e exactly mult[e] times. Returns the edge
/// sequence, or nullopt when the multigraph is not balanced or not connected.
inline std::optional<std::vector<std::size_t>> euler_circuit(const Digraph& g,
                                                             const std::vector<std::size_t>& mult,
                                                             std::size_t start) {
  std::vector<long long> balance(g.n, 0);
  std::size_t total = 0;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    balance[g.edges[e].first] += static_cast<long long>(mult[e]);
    balance[g.edges[e].second] -= static_cast<long long>(mult[e]);
    total += mult[e];
  }
  if (std::any_of(balance.begin(), balance.end(), [](long long b) { return b != 0; })) return std::nullopt;
  if (total == 0) return std::vector<std::size_t>{};

  auto adj = g.out_edges();
  std::vector<std::size_t> left = mult, ptr(g.n, 0);
  // Hierholzer: stack of (node, edge used to arrive).
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::pair<std::size_t, std::size_t>> st{{start, none}};
  std::vector<std::size_t> circuit;
  while (!st.empty()) {
    std::size_t v = st.back().first;
    while (ptr[v] < adj[v].size() && left[adj[v][ptr[v]]] == 0) ++ptr[v];
    if (ptr[v] < adj[v].size()) {
      std::size_t e = adj[v][ptr[v]];
      --left[e];
      st.emplace_back(g.edges[e].second, e);
    } else {
      if (st.back().second != none) circuit.push_back(st.back().second);
      st.pop_back();
    }
  }
  if (circuit.size() != total) return std::nullopt;
  std::reverse(circuit.begin(), circuit.end());
  return circuit;
}

}  // namespace vasreach::graph
