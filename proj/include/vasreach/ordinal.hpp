#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vasreach/error.hpp"

namespace vasreach {

/// The ordinal w^2*a + w*b + c.
struct GraphRank {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 0;

  bool operator==(const GraphRank&) const = default;
  auto operator<=>(const GraphRank&) const = default;
};

inline std::strong_ordering graph_rank_cmp(const GraphRank& x, const GraphRank& y) { return x <=> y; }

/// Cantor normal form sum of w^beta * m with exponents strictly descending.
class Ordinal {
 public:
  struct Term {
    GraphRank exponent;
    std::uint64_t mult = 0;
    bool operator==(const Term&) const = default;
  };

  Ordinal() = default;

  static Ordinal omega_pow(const GraphRank& beta, std::uint64_t mult = 1) {
    Ordinal o;
    if (mult > 0) o.terms_.push_back(Term{beta, mult});
    return o;
  }

  static Ordinal finite(std::uint64_t k) { return omega_pow(GraphRank{}, k); }

  /// Builds the normal form from arbitrary (exponent, multiplicity) pairs.
  static Ordinal from_terms(std::vector<Term> ts) {
    std::sort(ts.begin(), ts.end(), [](const Term& x, const Term& y) { return x.exponent > y.exponent; });
    Ordinal o;
    for (const auto& t : ts) {
      if (t.mult == 0) continue;
      if (!o.terms_.empty() && o.terms_.back().exponent == t.exponent)
        o.terms_.back().mult += t.mult;
      else
        o.terms_.push_back(t);
    }
    return o;
  }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool operator==(const Ordinal&) const = default;

 private:
  std::vector<Term> terms_;
};

inline std::strong_ordering ord_cmp(const Ordinal& x, const Ordinal& y) {
  const auto& a = x.terms();
  const auto& b = y.terms();
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (auto c = a[i].exponent <=> b[i].exponent; c != 0) return c;
    if (auto c = a[i].mult <=> b[i].mult; c != 0) return c;
  }
  return a.size() <=> b.size();
}

inline bool operator<(const Ordinal& x, const Ordinal& y) { return ord_cmp(x, y) < 0; }

inline Ordinal natural_sum(const Ordinal& x, const Ordinal& y) {
  std::vector<Ordinal::Term> ts = x.terms();
  ts.insert(ts.end(), y.terms().begin(), y.terms().end());
  return Ordinal::from_terms(std::move(ts));
}

inline std::uint64_t ord_norm(const Ordinal& x) {
  std::uint64_t n = 0;
  for (const auto& t : x.terms()) n = std::max({n, t.mult, t.exponent.a, t.exponent.b, t.exponent.c});
  return n;
}

namespace detail {

inline std::string exponent_string(const GraphRank& e) {
  std::vector<std::string> parts;
  if (e.a) parts.push_back(e.a == 1 ? "w^2" : "w^2*" + std::to_string(e.a));
  if (e.b) parts.push_back(e.b == 1 ? "w" : "w*" + std::to_string(e.b));
  if (e.c || parts.empty()) parts.push_back(std::to_string(e.c));
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : "+") + p;
  return s;
}

}  // namespace detail

/// Renders e.g. "w^(w^2*2+w*2) + w^(w*3+1)*4"; finite terms print as plain numbers.
inline std::string to_string(const Ordinal& x) {
  if (x.is_zero()) return "0";
  std::string s;
  for (const auto& t : x.terms()) {
    if (!s.empty()) s += " + ";
    const auto& e = t.exponent;
    if (e == GraphRank{}) {
      s += std::to_string(t.mult);
      continue;
    }
    if (e == GraphRank{0, 0, 1})
      s += "w";
    else if (e.a == 0 && e.b == 0)
      s += "w^" + std::to_string(e.c);
    else
      s += "w^(" + detail::exponent_string(e) + ")";
    if (t.mult != 1) s += "*" + std::to_string(t.mult);
  }
  return s;
}

namespace detail {

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view s) {
    for (char ch : s)
      if (!std::isspace(static_cast<unsigned char>(ch))) text_ += ch;
  }

  Ordinal parse() {
    std::vector<Ordinal::Term> ts;
    if (text_ == "0") return Ordinal{};
    do ts.push_back(term());
    while (eat('+'));
    if (pos_ != text_.size()) fail("trailing input");
    return Ordinal::from_terms(std::move(ts));
  }

 private:
  std::string text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(1, "ordinal: " + what + " at offset " + std::to_string(pos_));
  }

  bool eat(char ch) {
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool peek_digit() const {
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  std::uint64_t number() {
    if (!peek_digit()) fail("expected number");
    std::uint64_t v = 0;
    while (peek_digit()) v = v * 10 + static_cast<std::uint64_t>(text_[pos_++] - '0');
    return v;
  }

  std::uint64_t opt_mult() { return eat('*') ? number() : 1; }

  // Exponent: sum of "w^2[*k]", "w[*k]", "k" in any order.
  GraphRank exponent() {
    GraphRank e;
    do {
      if (eat('w')) {
        if (eat('^')) {
          if (number() != 2) fail("exponent degree above 2");
          e.a += opt_mult();
        } else {
          e.b += opt_mult();
        }
      } else {
        e.c += number();
      }
    } while (eat('+'));
    return e;
  }

  Ordinal::Term term() {
    if (peek_digit()) return Ordinal::Term{GraphRank{}, number()};
    if (!eat('w')) fail("expected 'w' or number");
    GraphRank e{0, 0, 1};
    if (eat('^')) {
      if (eat('(')) {
        e = exponent();
        if (!eat(')')) fail("expected ')'");
      } else {
        e = GraphRank{0, 0, number()};
      }
    }
    return Ordinal::Term{e, opt_mult()};
  }
};

}  // namespace detail

inline Ordinal parse_ordinal(std::string_view s) { return detail::OrdinalParser(s).parse(); }

}  // namespace vasreach
