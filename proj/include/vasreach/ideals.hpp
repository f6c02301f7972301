#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <variant>
#include <vector>

#include "vasreach/error.hpp"
#include "vasreach/omega.hpp"
#include "vasreach/vas.hpp"

namespace vasreach {

/// Checks dst = src + delta under omega arithmetic with all finite entries natural.
inline bool is_partial_transition(const OmegaVec& src, const IntVec& delta, const OmegaVec& dst) {
  if (src.size() != delta.size() || dst.size() != delta.size()) return false;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (is_omega(src[i]) != is_omega(dst[i])) return false;
    if (is_omega(src[i])) continue;
    if (src[i] < 0 || dst[i] < 0 || dst[i] != src[i] + delta[i]) return false;
  }
  return true;
}

inline bool is_partial_transition(const PartialTransition& t, const Vas& vas) {
  return t.action < vas.size() && is_partial_transition(t.src, vas.delta(t.action), t.dst);
}

inline PartialTransition make_partial(const OmegaVec& src, std::size_t action, const Vas& vas) {
  return PartialTransition{src, action, omega_shift(src, vas.delta(action))};
}

/// Product order on partial transitions; inclusion of the denoted transition ideals.
inline bool pt_leq(const PartialTransition& s, const PartialTransition& t) {
  return s.action == t.action && omega_leq(s.src, t.src) && omega_leq(s.dst, t.dst);
}

inline bool step_in(const Step& x, const PartialTransition& t) {
  return x.action == t.action && config_leq(x.src, t.src) && config_leq(x.dst, t.dst);
}

/// Maximal ideals of down(v) minus up(x).
inline std::vector<OmegaVec> cu_vec(const OmegaVec& v, const Config& x) {
  if (v.size() != x.size()) throw DimensionMismatch("cu_vec: dimensions differ");
  std::vector<OmegaVec> cand;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0) continue;
    OmegaVec w = v;
    if (is_omega(w[i]) || w[i] > x[i] - 1) w[i] = x[i] - 1;
    cand.push_back(std::move(w));
  }
  std::vector<OmegaVec> out;
  for (std::size_t k = 0; k < cand.size(); ++k) {
    bool dominated = false;
    for (std::size_t l = 0; l < cand.size() && !dominated; ++l) {
      if (l == k || !omega_leq(cand[k], cand[l])) continue;
      // Ties keep the first occurrence.
      dominated = !omega_leq(cand[l], cand[k]) || l < k;
    }
    if (!dominated) out.push_back(cand[k]);
  }
  return out;
}

/// Finite antichain of partial transitions, kept sorted.
class DownSet {
 public:
  DownSet() = default;
  DownSet(std::initializer_list<PartialTransition> ts) {
    for (const auto& t : ts) insert(t);
  }
  explicit DownSet(const std::vector<PartialTransition>& ts) {
    for (const auto& t : ts) insert(t);
  }

  /// Adds t unless already dominated; removes elements t dominates.
  bool insert(const PartialTransition& t) {
    for (const auto& e : elems_)
      if (pt_leq(t, e)) return false;
    std::erase_if(elems_, [&](const PartialTransition& e) { return pt_leq(e, t); });
    elems_.insert(std::upper_bound(elems_.begin(), elems_.end(), t), t);
    return true;
  }

  bool contains(const Step& x) const {
    return std::any_of(elems_.begin(), elems_.end(), [&](const auto& t) { return step_in(x, t); });
  }

  bool covers(const PartialTransition& t) const {
    return std::any_of(elems_.begin(), elems_.end(), [&](const auto& e) { return pt_leq(t, e); });
  }

  bool empty() const noexcept { return elems_.empty(); }
  std::size_t size() const noexcept { return elems_.size(); }
  const std::vector<PartialTransition>& elements() const noexcept { return elems_; }
  bool operator==(const DownSet&) const = default;

 private:
  std::vector<PartialTransition> elems_;
};

struct Star {
  DownSet set;
  bool operator==(const Star&) const = default;
};

/// The ideal below one partial transition, plus the empty word.
struct Single {
  PartialTransition t;
  bool operator==(const Single&) const = default;
};

using Atom = std::variant<Star, Single>;

inline bool is_star(const Atom& a) { return std::holds_alternative<Star>(a); }

using Product = std::vector<Atom>;

inline bool atom_leq(const Atom& a1, const Atom& a2) {
  if (const auto* s1 = std::get_if<Star>(&a1)) {
    if (const auto* s2 = std::get_if<Star>(&a2))
      return std::all_of(s1->set.elements().begin(), s1->set.elements().end(),
                         [&](const auto& t) { return s2->set.covers(t); });
    return s1->set.empty();
  }
  const auto& t = std::get<Single>(a1).t;
  if (const auto* s2 = std::get_if<Star>(&a2)) return s2->set.covers(t);
  return pt_leq(t, std::get<Single>(a2).t);
}

inline bool atom_equal(const Atom& a1, const Atom& a2) { return atom_leq(a1, a2) && atom_leq(a2, a1); }

inline bool letter_in(const Step& x, const Atom& a) {
  if (const auto* s = std::get_if<Star>(&a)) return s->set.contains(x);
  return step_in(x, std::get<Single>(a).t);
}

inline bool word_in_product(const std::vector<Step>& w, const Product& p) {
  const std::size_t k = p.size();
  // live[j]: the prefix read so far lies in p[0..j).
  std::vector<char> live(k + 1, 1);
  for (const auto& x : w) {
    std::vector<char> next(k + 1, 0);
    for (std::size_t j = 0; j < k; ++j) {
      if (!live[j] || !letter_in(x, p[j])) continue;
      next[is_star(p[j]) ? j : j + 1] = 1;
    }
    for (std::size_t j = 0; j < k; ++j)
      if (next[j]) next[j + 1] = 1;
    live = std::move(next);
  }
  return live[k] != 0;
}

inline bool denotes_epsilon_only(const Atom& a) {
  const auto* s = std::get_if<Star>(&a);
  return s && s->set.empty();
}

/// Ideal inclusion between products. Atoms of p1 are consumed from the left; a Star of p2 keeps
/// absorbing while it can, a Single of p2 absorbs at most one atom.
inline bool product_leq(const Product& p1, const Product& p2) {
  std::size_t i = 0, j = 0;
  while (i < p1.size()) {
    if (denotes_epsilon_only(p1[i])) {
      ++i;
      continue;
    }
    if (j == p2.size()) return false;
    if (atom_leq(p1[i], p2[j])) {
      ++i;
      if (!is_star(p2[j])) ++j;
    } else {
      ++j;
    }
  }
  return true;
}

/// Drops empty Stars and atoms absorbed by a neighbouring Star, until nothing changes.
inline Product reduce_product(Product p) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::erase_if(p, [](const Atom& a) { return denotes_epsilon_only(a); });
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      if (is_star(p[i + 1]) && atom_leq(p[i], p[i + 1])) {
        p.erase(p.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
      if (is_star(p[i]) && atom_leq(p[i + 1], p[i])) {
        p.erase(p.begin() + static_cast<std::ptrdiff_t>(i + 1));
        changed = true;
        break;
      }
    }
  }
  return p;
}

/// down(src) x P x down(tgt).
struct PrerunIdealRep {
  OmegaVec src_bound;
  Product word_part;
  OmegaVec tgt_bound;
};

inline bool prerun_ideal_contains(const PrerunIdealRep& ideal, const Prerun& rho) {
  if (rho.source.size() != ideal.src_bound.size() || rho.target.size() != ideal.tgt_bound.size())
    throw DimensionMismatch("prerun_ideal_contains: dimensions differ");
  return config_leq(rho.source, ideal.src_bound) && config_leq(rho.target, ideal.tgt_bound) &&
         word_in_product(rho.word, ideal.word_part);
}

/// Deterministic pseudo-random prerun inside the ideal. Omega entries are instantiated in
/// [0, budget] and at most budget letters are produced.
inline Prerun sample_prerun(const PrerunIdealRep& ideal, const Vas& vas, std::size_t budget,
                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto b = static_cast<std::int64_t>(budget);
  auto pick = [&](std::int64_t lo, std::int64_t hi) {
    if (hi <= lo) return lo;
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  auto below = [&](const OmegaVec& v) {
    Config c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = pick(0, is_omega(v[i]) ? b : std::min(v[i], b));
    return c;
  };
  auto letter = [&](const PartialTransition& t) {
    const auto& delta = vas.delta(t.action);
    Config u(t.src.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      std::int64_t lo = std::max<std::int64_t>(0, -delta[i]);
      std::int64_t hi = is_omega(t.src[i]) ? lo + b : t.src[i];
      u[i] = pick(lo, std::min(hi, lo + b));
    }
    Config v(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) v[i] = u[i] + delta[i];
    return Step{u, t.action, v};
  };

  Prerun out{below(ideal.src_bound), {}, Config{}};
  std::size_t left = budget;
  for (const auto& a : ideal.word_part) {
    if (left == 0) break;
    if (const auto* s = std::get_if<Star>(&a)) {
      if (s->set.empty()) continue;
      std::size_t n = static_cast<std::size_t>(pick(0, static_cast<std::int64_t>(left)));
      for (std::size_t r = 0; r < n; ++r) {
        const auto& elems = s->set.elements();
        out.word.push_back(letter(elems[rng() % elems.size()]));
      }
      left -= n;
    } else if (rng() % 2 == 1) {
      out.word.push_back(letter(std::get<Single>(a).t));
      --left;
    }
  }
  out.target = below(ideal.tgt_bound);
  return out;
}

}  // namespace vasreach
