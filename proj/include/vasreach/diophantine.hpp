#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "vasreach/error.hpp"

namespace vasreach {

using BigInt = boost::multiprecision::cpp_int;
using BigVec = std::vector<BigInt>;

/// matrix * z = rhs over z in N^n.
struct NatLinearSystem {
  std::vector<BigVec> matrix;
  BigVec rhs;
  std::vector<std::string> var_names;

  std::size_t rows() const noexcept { return matrix.size(); }
  std::size_t cols() const noexcept { return var_names.size(); }

  /// Appends a column and returns its index.
  std::size_t add_var(std::string name) {
    var_names.push_back(std::move(name));
    for (auto& r : matrix) r.emplace_back(0);
    return var_names.size() - 1;
  }

  /// Appends sum coef*z[col] = rhs; repeated columns accumulate.
  void add_row(const std::vector<std::pair<std::size_t, BigInt>>& terms, BigInt b) {
    BigVec r(cols());
    for (const auto& [col, coef] : terms) {
      if (col >= cols()) throw DimensionMismatch("add_row: column out of range");
      r[col] += coef;
    }
    matrix.push_back(std::move(r));
    rhs.push_back(std::move(b));
  }

  void validate() const {
    if (rhs.size() != matrix.size()) throw DimensionMismatch("system: rhs length differs from rows");
    for (const auto& r : matrix)
      if (r.size() != cols()) throw DimensionMismatch("system: row length differs from column count");
  }

  bool satisfied_by(const BigVec& z, bool homogeneous = false) const {
    if (z.size() != cols()) return false;
    for (const auto& v : z)
      if (v < 0) return false;
    for (std::size_t r = 0; r < rows(); ++r) {
      BigInt s = 0;
      for (std::size_t c = 0; c < cols(); ++c) s += matrix[r][c] * z[c];
      if (s != (homogeneous ? BigInt(0) : rhs[r])) return false;
    }
    return true;
  }
};

/// Minimal solutions: every solution is one element of part plus a natural combination of hom.
struct HilbertBasis {
  std::vector<BigVec> hom;
  std::vector<BigVec> part;
};

struct HilbertOptions {
  std::size_t node_budget = 2'000'000;
};

namespace detail {

inline bool vec_geq(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceExhausted("hilbert: 64-bit overflow in search");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceExhausted("hilbert: 64-bit overflow in search");
  return r;
}

inline std::int64_t to_i64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw ResourceExhausted("hilbert: coefficient exceeds 64 bits after presolve");
  return static_cast<std::int64_t>(v);
}

/// Minimal non-zero solutions of cols * y = 0 with y[j] <= cap[j]. Returns early once a solution
/// with a positive `stop_col` entry is found. The completeness argument for
/// the geometric expansion rule only ever raises coordinates towards a target solution, so caps
/// are respected without losing minimal solutions.
inline std::vector<std::vector<std::int64_t>> contejean_devie(
    const std::vector<std::vector<std::int64_t>>& cols, const std::vector<std::int64_t>& cap,
    std::size_t& nodes, std::size_t budget, std::size_t stop_col = static_cast<std::size_t>(-1)) {
  const std::size_t n = cols.size();
  const std::size_t m = n ? cols[0].size() : 0;
  std::vector<std::vector<std::int64_t>> found;
  // Node: (y, B*y).
  using Node = std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>;
  std::vector<Node> level;
  for (std::size_t j = 0; j < n; ++j) {
    if (cap[j] == 0) continue;
    std::vector<std::int64_t> y(n, 0);
    y[j] = 1;
    level.emplace_back(std::move(y), cols[j]);
  }
  auto dot = [&](const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    std::int64_t s = 0;
    for (std::size_t r = 0; r < m; ++r) s = checked_add(s, checked_mul(a[r], b[r]));
    return s;
  };
  while (!level.empty()) {
    nodes += level.size();
    if (nodes > budget) throw ResourceExhausted("hilbert: node budget exceeded");
    std::vector<const Node*> open;
    for (const auto& node : level) {
      bool zero = std::all_of(node.second.begin(), node.second.end(), [](auto v) { return v == 0; });
      if (zero) {
        found.push_back(node.first);
        if (stop_col < n && node.first[stop_col] > 0) return found;
      } else
        open.push_back(&node);
    }
    std::set<std::vector<std::int64_t>> seen;
    std::vector<Node> next;
    for (const Node* node : open) {
      for (std::size_t j = 0; j < n; ++j) {
        if (node->first[j] >= cap[j]) continue;
        if (dot(node->second, cols[j]) >= 0) continue;
        std::vector<std::int64_t> y = node->first;
        ++y[j];
        if (std::any_of(found.begin(), found.end(), [&](const auto& f) { return vec_geq(y, f); }))
          continue;
        if (!seen.insert(y).second) continue;
        std::vector<std::int64_t> by(m);
        for (std::size_t r = 0; r < m; ++r) by[r] = checked_add(node->second[r], cols[j][r]);
        next.emplace_back(std::move(y), std::move(by));
      }
    }
    level = std::move(next);
  }
  return found;
}

/// Exact presolve. Each eliminated column is either fixed to a constant or defined as
/// constant + sum of non-negative multiples of other columns; both maps preserve the order of
/// solutions, so minimal elements correspond one-to-one.
struct Presolved {
  bool infeasible = false;
  std::vector<BigVec> rows;  // over all original columns; eliminated ones have zero coefficient
  BigVec rhs;
  struct Def {
    std::size_t var;
    BigInt constant;
    std::vector<std::pair<std::size_t, BigInt>> terms;
  };
  std::vector<Def> defs;  // in elimination order
  std::vector<char> eliminated;
};

inline void substitute(Presolved& p, std::size_t k, const BigInt& constant,
                       const std::vector<std::pair<std::size_t, BigInt>>& terms) {
  for (std::size_t r = 0; r < p.rows.size(); ++r) {
    BigInt a = p.rows[r][k];
    if (a == 0) continue;
    p.rows[r][k] = 0;
    p.rhs[r] -= a * constant;
    for (const auto& [l, c] : terms) p.rows[r][l] += a * c;
  }
}

inline Presolved presolve(const NatLinearSystem& sys) {
  Presolved p;
  p.rows = sys.matrix;
  p.rhs = sys.rhs;
  p.eliminated.assign(sys.cols(), 0);
  const std::size_t n = sys.cols();
  auto fix = [&](std::size_t k, const BigInt& v) {
    p.defs.push_back({k, v, {}});
    p.eliminated[k] = 1;
    substitute(p, k, v, {});
  };

  bool changed = true;
  while (changed && !p.infeasible) {
    changed = false;
    for (std::size_t r = 0; r < p.rows.size() && !p.infeasible; ++r) {
      auto& row = p.rows[r];
      std::vector<std::size_t> nz;
      bool has_pos = false, has_neg = false;
      for (std::size_t c = 0; c < n; ++c)
        if (row[c] != 0) {
          nz.push_back(c);
          (row[c] > 0 ? has_pos : has_neg) = true;
        }
      const BigInt b = p.rhs[r];
      if (nz.empty()) {
        if (b != 0) p.infeasible = true;
        p.rows.erase(p.rows.begin() + static_cast<std::ptrdiff_t>(r));
        p.rhs.erase(p.rhs.begin() + static_cast<std::ptrdiff_t>(r));
        changed = true;
        break;
      }
      if (!(has_pos && has_neg)) {
        // One-signed row: sign of rhs must match; zero rhs pins every variable to zero.
        if ((has_pos && b < 0) || (has_neg && b > 0)) {
          p.infeasible = true;
          break;
        }
        if (b == 0) {
          for (std::size_t c : nz) fix(c, 0);
          changed = true;
          break;
        }
      }
      if (nz.size() == 1) {
        const BigInt a = row[nz[0]];
        if (b % a != 0 || b / a < 0) {
          p.infeasible = true;
          break;
        }
        fix(nz[0], b / a);
        changed = true;
        break;
      }
      for (std::size_t k : nz) {
        const BigInt a = row[k];
        if (a != 1 && a != -1) continue;
        // z_k = (b - sum_{l != k} row[l] z_l) / a
        bool ok = a == 1 ? b >= 0 : b <= 0;
        for (std::size_t l : nz)
          if (l != k && ((a == 1 && row[l] > 0) || (a == -1 && row[l] < 0))) ok = false;
        if (!ok) continue;
        Presolved::Def def{k, b * a, {}};
        for (std::size_t l : nz)
          if (l != k) def.terms.emplace_back(l, -row[l] * a);
        p.rows.erase(p.rows.begin() + static_cast<std::ptrdiff_t>(r));
        p.rhs.erase(p.rhs.begin() + static_cast<std::ptrdiff_t>(r));
        p.eliminated[k] = 1;
        substitute(p, k, def.constant, def.terms);
        p.defs.push_back(std::move(def));
        changed = true;
        break;
      }
      if (changed) break;
    }
  }
  return p;
}

inline BigVec lift(const Presolved& p, const std::vector<std::size_t>& free_cols,
                   const std::vector<std::int64_t>& y, bool homogeneous, std::size_t n) {
  BigVec z(n);
  for (std::size_t i = 0; i < free_cols.size(); ++i) z[free_cols[i]] = y[i];
  for (auto it = p.defs.rbegin(); it != p.defs.rend(); ++it) {
    BigInt v = homogeneous ? BigInt(0) : it->constant;
    for (const auto& [l, c] : it->terms) v += c * z[l];
    z[it->var] = v;
  }
  return z;
}

}  // namespace detail

namespace detail {

inline HilbertBasis hilbert_search(const NatLinearSystem& sys, const HilbertOptions& opt, bool first_part_only) {
  const std::size_t n = sys.cols();
  auto pre = detail::presolve(sys);
  if (pre.infeasible) {
    if (first_part_only) return {};
    NatLinearSystem hom_sys = sys;
    for (auto& b : hom_sys.rhs) b = 0;
    HilbertBasis hb = hilbert_search(hom_sys, opt, false);
    hb.part.clear();
    return hb;
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!pre.eliminated[c]) free_cols.push_back(c);
  const std::size_t m = pre.rows.size();
  const bool inhom = std::any_of(pre.rhs.begin(), pre.rhs.end(), [](const BigInt& b) { return b != 0; });

  std::vector<std::vector<std::int64_t>> cols;
  std::vector<std::int64_t> cap;
  for (std::size_t c : free_cols) {
    std::vector<std::int64_t> col(m);
    for (std::size_t r = 0; r < m; ++r) col[r] = detail::to_i64(pre.rows[r][c]);
    cols.push_back(std::move(col));
    cap.push_back(std::numeric_limits<std::int64_t>::max());
  }
  if (inhom) {
    std::vector<std::int64_t> col(m);
    for (std::size_t r = 0; r < m; ++r) col[r] = detail::to_i64(-pre.rhs[r]);
    cols.push_back(std::move(col));
    cap.push_back(1);
  }

  std::size_t nodes = 0;
  const std::size_t stop = first_part_only && inhom ? cols.size() - 1 : static_cast<std::size_t>(-1);
  auto sols = detail::contejean_devie(cols, cap, nodes, opt.node_budget, stop);
  HilbertBasis hb;
  for (auto& y : sols) {
    bool is_part = inhom && y.back() == 1;
    if (inhom) y.pop_back();
    auto z = detail::lift(pre, free_cols, y, !is_part, n);
    (is_part ? hb.part : hb.hom).push_back(std::move(z));
  }
  if (!inhom) hb.part.push_back(detail::lift(pre, free_cols, std::vector<std::int64_t>(free_cols.size(), 0), false, n));
  std::sort(hb.hom.begin(), hb.hom.end());
  std::sort(hb.part.begin(), hb.part.end());
  return hb;
}

}  // namespace detail

/// Hilbert basis of a system over the naturals, homogenising the right-hand side with one extra
/// variable capped at 1.
inline HilbertBasis hilbert(const NatLinearSystem& sys, const HilbertOptions& opt = {}) {
  sys.validate();
  return detail::hilbert_search(sys, opt, false);
}

inline std::optional<BigVec> feasible(const HilbertBasis& hb) {
  if (hb.part.empty()) return std::nullopt;
  return hb.part.front();
}

/// Some solution, found without computing the whole basis.
inline std::optional<BigVec> feasible(const NatLinearSystem& sys, const HilbertOptions& opt = {}) {
  sys.validate();
  return feasible(detail::hilbert_search(sys, opt, true));
}

inline bool coord_unbounded(const HilbertBasis& hb, std::size_t i) {
  return std::any_of(hb.hom.begin(), hb.hom.end(), [i](const BigVec& h) { return h.at(i) > 0; });
}

inline BigInt coord_max(const HilbertBasis& hb, std::size_t i) {
  if (hb.part.empty()) throw PreconditionError("coord_max: system infeasible");
  if (coord_unbounded(hb, i)) throw PreconditionError("coord_max: coordinate unbounded");
  BigInt m = 0;
  for (const auto& p : hb.part) m = std::max(m, p.at(i));
  return m;
}

/// A solution positive on every listed coordinate: a part element plus, for every coordinate
/// it leaves at zero, a hom element positive there.
inline std::optional<BigVec> positive_support_solution(const HilbertBasis& hb,
                                                       const std::vector<std::size_t>& coords) {
  for (const auto& base : hb.part) {
    BigVec z = base;
    bool ok = true;
    for (std::size_t i : coords) {
      if (z.at(i) > 0) continue;
      auto hit = std::find_if(hb.hom.begin(), hb.hom.end(), [i](const BigVec& h) { return h.at(i) > 0; });
      if (hit == hb.hom.end()) {
        ok = false;
        break;
      }
      for (std::size_t c = 0; c < z.size(); ++c) z[c] += (*hit)[c];
    }
    if (ok) return z;
  }
  return std::nullopt;
}

/// Reads one equation per line: "c1 c2 ... cn | b". Blank lines and '#' comments are skipped.
inline NatLinearSystem parse_system(std::string_view text) {
  NatLinearSystem sys;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> width;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto bar = line.find('|');
    if (bar == std::string::npos) throw ParseError(lineno, "expected '|' before the right-hand side");
    auto ints = [&](const std::string& s) {
      std::istringstream ss(s);
      BigVec v;
      std::string tok;
      while (ss >> tok) {
        try {
          v.emplace_back(tok);
        } catch (const std::exception&) {
          throw ParseError(lineno, "expected integer, got '" + tok + "'");
        }
      }
      return v;
    };
    BigVec row = ints(line.substr(0, bar));
    BigVec b = ints(line.substr(bar + 1));
    if (b.size() != 1) throw ParseError(lineno, "expected exactly one right-hand side value");
    if (row.empty()) throw ParseError(lineno, "empty row");
    if (width && row.size() != *width)
      throw ParseError(lineno, "row has " + std::to_string(row.size()) + " coefficients, expected " +
                                   std::to_string(*width));
    if (!width) {
      width = row.size();
      for (std::size_t c = 0; c < *width; ++c) sys.var_names.push_back("z" + std::to_string(c + 1));
    }
    sys.matrix.push_back(std::move(row));
    sys.rhs.push_back(std::move(b[0]));
  }
  if (!width) throw ParseError(lineno, "no equations");
  return sys;
}

}  // namespace vasreach
