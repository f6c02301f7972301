#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vasreach/embedding.hpp"
#include "vasreach/error.hpp"
#include "vasreach/omega.hpp"
#include "vasreach/vas.hpp"

namespace vasreach {

inline std::int64_t norm(const Config& c) {
  std::int64_t m = 0;
  for (auto v : c) m = std::max(m, v);
  return m;
}

enum class OracleVerdict { Reachable, UnreachableCertified, Unknown };

struct OracleResult {
  OracleVerdict verdict = OracleVerdict::Unknown;
  std::optional<Run> run;
  std::size_t explored = 0;
};

/// Breadth-first search over configurations with every component <= max_norm and paths of
/// length <= max_len. Unreachability is certified only when the explored set is closed under
/// all actions; hitting either bound yields Unknown. Reachable runs are the lexicographically
/// least shortest ones under the action order of the Vas.
inline OracleResult bfs_oracle(const Instance& inst, std::int64_t max_norm, std::size_t max_len) {
  if (max_norm < std::max(norm(inst.source), norm(inst.target)))
    throw PreconditionError("bfs_oracle: max_norm below the endpoint norms");
  const Vas& vas = inst.vas;
  struct Parent {
    Config prev;
    std::size_t action;
  };
  std::unordered_map<Config, std::optional<Parent>, VecHash> seen;
  seen.emplace(inst.source, std::nullopt);
  std::vector<Config> frontier{inst.source};
  bool closed = true;
  std::optional<Config> hit;
  if (inst.source == inst.target) hit = inst.source;

  for (std::size_t depth = 0; !hit && !frontier.empty(); ++depth) {
    std::vector<Config> next;
    for (const auto& c : frontier) {
      for (std::size_t a = 0; a < vas.size(); ++a) {
        auto succ = try_apply(c, vas.delta(a));
        if (!succ) continue;
        if (norm(*succ) > max_norm) {
          closed = false;
          continue;
        }
        if (seen.count(*succ)) continue;
        if (depth == max_len) {
          // A new configuration lies beyond the length bound.
          closed = false;
          continue;
        }
        seen.emplace(*succ, Parent{c, a});
        if (*succ == inst.target && !hit) hit = *succ;
        next.push_back(std::move(*succ));
      }
      if (hit) break;
    }
    if (depth == max_len) break;
    frontier = std::move(next);
  }

  OracleResult res;
  res.explored = seen.size();
  if (hit) {
    std::vector<std::size_t> actions;
    Config cur = *hit;
    while (auto& p = seen.at(cur)) {
      actions.push_back(p->action);
      cur = p->prev;
    }
    std::reverse(actions.begin(), actions.end());
    res.verdict = OracleVerdict::Reachable;
    res.run = run_from_actions(vas, inst.source, actions);
    return res;
  }
  res.verdict = closed ? OracleVerdict::UnreachableCertified : OracleVerdict::Unknown;
  return res;
}

/// Observed approximation of the local ideal around a capacity c.
struct LocalSummary {
  IndexSet F_gamma;
  OmegaVec s_gamma;
  OmegaVec s_in;
  OmegaVec s_out;
  std::vector<OmegaVec> states;
  std::vector<PartialTransition> edges;
  bool truncated = false;
};

struct ExploreBounds {
  std::int64_t max_norm = 8;
  std::size_t max_len = 16;
  std::size_t max_coeff = 6;
};

namespace detail {

struct RunSetSlice {
  std::set<Config> configs;
  std::set<std::tuple<Config, std::size_t, Config>> transitions;
  bool norm_capped = false;
};

/// Configurations and transitions lying on some run src ->* dst of length <= max_len whose
/// configurations stay within max_norm. Forward and backward layers are intersected per length.
inline RunSetSlice runs_between(const Vas& vas, const Config& src, const Config& dst,
                                std::int64_t max_norm, std::size_t max_len) {
  RunSetSlice out;
  if (norm(src) > max_norm || norm(dst) > max_norm) {
    out.norm_capped = true;
    return out;
  }
  std::vector<std::set<Config>> fwd(max_len + 1), bwd(max_len + 1);
  fwd[0].insert(src);
  bwd[0].insert(dst);
  for (std::size_t l = 0; l < max_len; ++l) {
    for (const auto& c : fwd[l])
      for (std::size_t a = 0; a < vas.size(); ++a) {
        auto s = try_apply(c, vas.delta(a));
        if (!s) continue;
        if (norm(*s) > max_norm) {
          out.norm_capped = true;
          continue;
        }
        fwd[l + 1].insert(*s);
      }
    for (const auto& c : bwd[l])
      for (std::size_t a = 0; a < vas.size(); ++a) {
        IntVec neg(vas.delta(a));
        for (auto& v : neg) v = -v;
        auto p = try_apply(c, neg);
        if (!p || norm(*p) > max_norm) continue;
        bwd[l + 1].insert(*p);
      }
  }
  for (std::size_t len = 0; len <= max_len; ++len) {
    if (!fwd[len].count(dst)) continue;
    for (std::size_t l = 0; l <= len; ++l) {
      for (const auto& c : fwd[l]) {
        if (!bwd[len - l].count(c)) continue;
        out.configs.insert(c);
        if (l == len) continue;
        for (std::size_t a = 0; a < vas.size(); ++a) {
          auto s = try_apply(c, vas.delta(a));
          if (s && bwd[len - l - 1].count(*s)) out.transitions.emplace(c, a, *s);
        }
      }
    }
  }
  return out;
}

}  // namespace detail

/// Desk-scale explorer for the local run set around capacity c: runs c+u ->* c+v with (u,v) in
/// the periodic closure of the generators. Bounded components are those whose observed value
/// sets agree between coefficient limits max_coeff-1 and max_coeff; the summary is flagged
/// truncated whenever a bound cut off part of the exploration.
inline LocalSummary explore_local(const Vas& vas, const Config& c,
                                  const std::vector<std::pair<Config, Config>>& generators,
                                  const ExploreBounds& bounds) {
  const std::size_t d = vas.dim();
  if (c.size() != d) throw DimensionMismatch("explore_local: capacity dimension");
  for (const auto& [u, v] : generators) {
    if (u.size() != d || v.size() != d) throw DimensionMismatch("explore_local: generator dimension");
    auto slice = detail::runs_between(vas, detail::add(c, u), detail::add(c, v), bounds.max_norm,
                                      bounds.max_len);
    if (slice.configs.empty())
      throw PreconditionError("explore_local: generator (" + to_string(u) + "," + to_string(v) +
                              ") has no connecting run within bounds");
  }

  auto observe = [&](std::size_t coeff_limit, bool& capped) {
    detail::RunSetSlice acc;
    std::vector<std::size_t> k(generators.size(), 0);
    while (true) {
      Config u(d, 0), v(d, 0);
      for (std::size_t g = 0; g < generators.size(); ++g)
        for (std::size_t i = 0; i < d; ++i) {
          u[i] += static_cast<std::int64_t>(k[g]) * generators[g].first[i];
          v[i] += static_cast<std::int64_t>(k[g]) * generators[g].second[i];
        }
      auto slice = detail::runs_between(vas, detail::add(c, u), detail::add(c, v), bounds.max_norm,
                                        bounds.max_len);
      capped = capped || slice.norm_capped;
      acc.configs.insert(slice.configs.begin(), slice.configs.end());
      acc.transitions.insert(slice.transitions.begin(), slice.transitions.end());
      std::size_t g = 0;
      while (g < k.size() && k[g] == coeff_limit) k[g++] = 0;
      if (g == k.size()) break;
      ++k[g];
    }
    return acc;
  };

  bool capped = false;
  auto full = observe(bounds.max_coeff, capped);
  std::optional<detail::RunSetSlice> smaller;
  if (bounds.max_coeff > 0) {
    bool ignored = false;
    smaller = observe(bounds.max_coeff - 1, ignored);
  }

  LocalSummary out;
  for (std::size_t i = 0; i < d; ++i) {
    std::set<std::int64_t> big, small;
    for (const auto& q : full.configs) big.insert(q[i]);
    if (smaller)
      for (const auto& q : smaller->configs) small.insert(q[i]);
    else
      small = big;
    if (big == small) out.F_gamma.push_back(i);
  }
  IndexSet f_in, f_out;
  for (std::size_t i = 0; i < d; ++i) {
    bool in_zero = true, out_zero = true;
    for (const auto& [u, v] : generators) {
      in_zero = in_zero && u[i] == 0;
      out_zero = out_zero && v[i] == 0;
    }
    if (in_zero) f_in.push_back(i);
    if (out_zero) f_out.push_back(i);
  }
  out.s_gamma = project(c, out.F_gamma);
  out.s_in = project(c, f_in);
  out.s_out = project(c, f_out);
  std::set<OmegaVec> states;
  for (const auto& q : full.configs) states.insert(project(q, out.F_gamma));
  out.states.assign(states.begin(), states.end());
  std::set<PartialTransition> edges;
  for (const auto& [p, a, q] : full.transitions)
    edges.insert(PartialTransition{project(p, out.F_gamma), a, project(q, out.F_gamma)});
  out.edges.assign(edges.begin(), edges.end());
  out.truncated = capped || out.F_gamma.size() != d;
  return out;
}

}  // namespace vasreach
