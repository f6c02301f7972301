#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vasreach/error.hpp"
#include "vasreach/vas.hpp"

namespace vasreach {

/// Strictly increasing map from letters of the smaller prerun into letters of the larger.
struct EmbeddingWitness {
  std::vector<std::size_t> positions;

  bool operator==(const EmbeddingWitness&) const = default;
};

inline bool step_leq(const Step& a, const Step& b) {
  return a.action == b.action && config_leq(a.src, b.src) && config_leq(a.dst, b.dst);
}

/// rho1 <| rho2: sources and targets dominated, and the word of rho1 embeds into the word of
/// rho2 letter-wise under the product order. Leftmost-greedy matching is complete here: mapping a
/// letter to the earliest dominating position never removes options for later letters.
inline std::optional<EmbeddingWitness> embeds(const Prerun& rho1, const Prerun& rho2) {
  if (rho1.source.size() != rho2.source.size()) throw DimensionMismatch("embeds: dimensions differ");
  if (!config_leq(rho1.source, rho2.source) || !config_leq(rho1.target, rho2.target))
    return std::nullopt;
  if (rho1.word.size() > rho2.word.size()) return std::nullopt;
  EmbeddingWitness w;
  w.positions.reserve(rho1.word.size());
  std::size_t j = 0;
  for (const auto& letter : rho1.word) {
    while (j < rho2.word.size() && !step_leq(letter, rho2.word[j])) ++j;
    if (j == rho2.word.size()) return std::nullopt;
    w.positions.push_back(j++);
  }
  return w;
}

inline bool is_embedding(const Prerun& small, const Prerun& large, const EmbeddingWitness& w) {
  if (w.positions.size() != small.word.size()) return false;
  if (!config_leq(small.source, large.source) || !config_leq(small.target, large.target)) return false;
  for (std::size_t l = 0; l < w.positions.size(); ++l) {
    if (w.positions[l] >= large.word.size()) return false;
    if (l > 0 && w.positions[l] <= w.positions[l - 1]) return false;
    if (!step_leq(small.word[l], large.word[w.positions[l]])) return false;
  }
  return true;
}

namespace detail {

inline Config sub(const Config& a, const Config& b) {
  Config out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Config add(const Config& a, const Config& b) {
  Config out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

/// Offsets v_0..v_{k+1} of a run around the embedded copy of rho0, plus its surplus segments.
struct Decomposed {
  std::vector<Config> offsets;
  std::vector<std::vector<std::size_t>> segments;
};

inline Decomposed decompose_around(const Run& rho0, const Run& rho, const EmbeddingWitness& w) {
  const std::size_t k = rho0.word.size();
  Decomposed out;
  out.offsets.push_back(sub(rho.source, rho0.source));
  std::size_t pos = 0;
  for (std::size_t l = 0; l < k; ++l) {
    std::vector<std::size_t> seg;
    for (; pos < w.positions[l]; ++pos) seg.push_back(rho.word[pos].action);
    out.segments.push_back(std::move(seg));
    out.offsets.push_back(sub(rho.word[pos].src, rho0.word[l].src));
    ++pos;
  }
  std::vector<std::size_t> tail;
  for (; pos < rho.word.size(); ++pos) tail.push_back(rho.word[pos].action);
  out.segments.push_back(std::move(tail));
  out.offsets.push_back(sub(rho.target, rho0.target));
  return out;
}

}  // namespace detail

/// Amalgamation of two runs over a common sub-run: inserts the surplus segments of rho1 and
/// rho2 around every transition of rho0, adding the offsets of the other run.
inline Run amalgamate(const Vas& vas, const Run& rho0, const Run& rho1, const Run& rho2,
                      const EmbeddingWitness& w1, const EmbeddingWitness& w2) {
  if (!validate_run(rho0, vas) || !validate_run(rho1, vas) || !validate_run(rho2, vas))
    throw PreconditionError("amalgamate: inputs must be runs");
  if (!is_embedding(rho0, rho1, w1) || !is_embedding(rho0, rho2, w2))
    throw PreconditionError("amalgamate: witness invalid");

  const auto d1 = detail::decompose_around(rho0, rho1, w1);
  const auto d2 = detail::decompose_around(rho0, rho2, w2);
  const std::size_t k = rho0.word.size();

  std::vector<std::size_t> actions;
  for (std::size_t l = 0; l <= k; ++l) {
    actions.insert(actions.end(), d1.segments[l].begin(), d1.segments[l].end());
    actions.insert(actions.end(), d2.segments[l].begin(), d2.segments[l].end());
    if (l < k) actions.push_back(rho0.word[l].action);
  }
  Config source = detail::add(detail::add(d1.offsets[0], d2.offsets[0]), rho0.source);
  return run_from_actions(vas, source, actions);
}

}  // namespace vasreach
