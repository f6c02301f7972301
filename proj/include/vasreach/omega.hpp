#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "vasreach/error.hpp"

namespace vasreach {

/// Top element of N extended with omega. Stored in-band.
inline constexpr std::int64_t omega = std::numeric_limits<std::int64_t>::max();

inline constexpr bool is_omega(std::int64_t v) noexcept { return v == omega; }

/// Addition over Z + {omega}: k+w = w+k = w+w = w.
inline constexpr std::int64_t omega_add(std::int64_t a, std::int64_t b) noexcept {
  return (is_omega(a) || is_omega(b)) ? omega : a + b;
}

/// Sorted set of 0-based component indices.
using IndexSet = std::vector<std::size_t>;

inline bool contains(const IndexSet& s, std::size_t i) {
  return std::binary_search(s.begin(), s.end(), i);
}

inline IndexSet full_index_set(std::size_t d) {
  IndexSet s(d);
  for (std::size_t i = 0; i < d; ++i) s[i] = i;
  return s;
}

inline IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IndexSet set_minus(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Integer vector, used for action deltas.
using IntVec = std::vector<std::int64_t>;

/// A configuration in N^d.
class Config : public std::vector<std::int64_t> {
 public:
  using std::vector<std::int64_t>::vector;
  Config() = default;
  explicit Config(std::vector<std::int64_t> v) : std::vector<std::int64_t>(std::move(v)) {}

  std::size_t dim() const noexcept { return size(); }
};

/// A vector over N_omega. Denotes the configuration ideal of everything below it; with omega
/// entries it doubles as a partial configuration over its finite components.
class OmegaVec : public std::vector<std::int64_t> {
 public:
  using std::vector<std::int64_t>::vector;
  OmegaVec() = default;
  explicit OmegaVec(std::vector<std::int64_t> v) : std::vector<std::int64_t>(std::move(v)) {}

  static OmegaVec all_omega(std::size_t d) { return OmegaVec(d, omega); }

  static OmegaVec from(const Config& c) { return OmegaVec(std::vector<std::int64_t>(c)); }

  std::size_t dim() const noexcept { return size(); }

  /// Indices of finite components.
  IndexSet finite_set() const {
    IndexSet s;
    for (std::size_t i = 0; i < size(); ++i)
      if (!is_omega((*this)[i])) s.push_back(i);
    return s;
  }

  bool fully_finite() const {
    return std::none_of(begin(), end(), [](std::int64_t v) { return is_omega(v); });
  }

  /// Only meaningful when fully finite.
  Config to_config() const { return Config(std::vector<std::int64_t>(*this)); }
};

/// Componentwise order with omega on top; equivalently inclusion of the denoted ideals.
inline bool omega_leq(const OmegaVec& u, const OmegaVec& v) {
  if (u.size() != v.size()) throw DimensionMismatch("omega_leq: dimensions differ");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (is_omega(v[i])) continue;
    if (is_omega(u[i]) || u[i] > v[i]) return false;
  }
  return true;
}

/// Membership of a configuration in the ideal below v.
inline bool config_leq(const Config& c, const OmegaVec& v) {
  if (c.size() != v.size()) throw DimensionMismatch("config_leq: dimensions differ");
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!is_omega(v[i]) && c[i] > v[i]) return false;
  return true;
}

inline bool config_leq(const Config& a, const Config& b) {
  if (a.size() != b.size()) throw DimensionMismatch("config_leq: dimensions differ");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

/// pi_F: keep components in F, omega elsewhere.
inline OmegaVec project(const OmegaVec& v, const IndexSet& F) {
  OmegaVec out = OmegaVec::all_omega(v.size());
  for (std::size_t i : F) {
    if (i >= v.size()) throw DimensionMismatch("project: index out of range");
    out[i] = v[i];
  }
  return out;
}

inline OmegaVec project(const Config& c, const IndexSet& F) { return project(OmegaVec::from(c), F); }

/// v + delta under omega arithmetic. Finite components may go negative; callers check.
inline OmegaVec omega_shift(const OmegaVec& v, const IntVec& delta) {
  OmegaVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = omega_add(v[i], delta[i]);
  return out;
}

inline bool nonnegative(const OmegaVec& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x >= 0; });
}

/// Hash for the integer-vector types above.
struct VecHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
    for (auto x : v) h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

inline std::string to_string(const OmegaVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += is_omega(v[i]) ? std::string("w") : std::to_string(v[i]);
  }
  return s + ")";
}

inline std::string to_string(const Config& c) { return to_string(OmegaVec::from(c)); }

inline std::ostream& operator<<(std::ostream& os, const OmegaVec& v) { return os << to_string(v); }
inline std::ostream& operator<<(std::ostream& os, const Config& c) { return os << to_string(c); }

}  // namespace vasreach
