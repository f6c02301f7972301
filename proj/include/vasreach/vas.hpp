#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "vasreach/error.hpp"
#include "vasreach/omega.hpp"

namespace vasreach {

struct Action {
  std::string name;
  IntVec delta;
};

/// A vector addition system: an ordered list of named actions over N^d.
class Vas {
 public:
  Vas() = default;

  Vas(std::size_t dim, std::vector<Action> actions) : dim_(dim), actions_(std::move(actions)) {
    if (dim_ == 0) throw DimensionMismatch("vas: dimension must be positive");
    std::unordered_set<std::string> names;
    for (const auto& a : actions_) {
      if (a.delta.size() != dim_)
        throw DimensionMismatch("action '" + a.name + "' has arity " +
                                std::to_string(a.delta.size()) + ", expected " +
                                std::to_string(dim_));
      if (!names.insert(a.name).second)
        throw std::invalid_argument("duplicate action name '" + a.name + "'");
    }
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return actions_.size(); }
  const std::vector<Action>& actions() const noexcept { return actions_; }
  const Action& operator[](std::size_t i) const { return actions_.at(i); }
  const IntVec& delta(std::size_t i) const { return actions_.at(i).delta; }
  const std::string& name(std::size_t i) const { return actions_.at(i).name; }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < actions_.size(); ++i)
      if (actions_[i].name == name) return i;
    return std::nullopt;
  }

  std::int64_t max_abs_delta() const {
    std::int64_t m = 0;
    for (const auto& a : actions_)
      for (auto v : a.delta) m = std::max<std::int64_t>(m, v < 0 ? -v : v);
    return m;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Action> actions_;
};

/// One letter of a prerun word: (u, a, v). Actions are referenced by index into the Vas.
struct Step {
  Config src;
  std::size_t action = 0;
  Config dst;

  bool operator==(const Step&) const = default;
};

/// (source, word, target). Runs are the connected preruns; no separate type is needed
/// because connectivity is a property checked by validate_run.
struct Prerun {
  Config source;
  std::vector<Step> word;
  Config target;

  std::size_t length() const noexcept { return word.size(); }
  bool operator==(const Prerun&) const = default;
};

using Run = Prerun;

/// (u, a, v) over N_omega with v = u + a under omega arithmetic. Denotes a transition ideal.
struct PartialTransition {
  OmegaVec src;
  std::size_t action = 0;
  OmegaVec dst;

  bool operator==(const PartialTransition&) const = default;
  auto operator<=>(const PartialTransition& o) const {
    if (auto c = src <=> o.src; c != 0) return c;
    if (auto c = action <=> o.action; c != 0) return c;
    return dst <=> o.dst;
  }
};

struct Instance {
  Vas vas;
  Config source;
  Config target;
};

/// c + a, or nullopt if some component would become negative.
inline std::optional<Config> try_apply(const Config& c, const IntVec& delta) {
  Config out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    out[i] = c[i] + delta[i];
    if (out[i] < 0) return std::nullopt;
  }
  return out;
}

inline Config apply_action(const Config& c, const Action& a) {
  if (c.size() != a.delta.size()) throw DimensionMismatch("apply_action: dimensions differ");
  Config out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    out[i] = c[i] + a.delta[i];
    if (out[i] < 0) throw NegativeComponent(i);
  }
  return out;
}

inline bool validate_run(const Prerun& rho, const Vas& vas) {
  const std::size_t d = vas.dim();
  auto ok_config = [d](const Config& c) {
    return c.size() == d && std::all_of(c.begin(), c.end(), [](std::int64_t v) { return v >= 0; });
  };
  if (!ok_config(rho.source) || !ok_config(rho.target)) return false;
  if (rho.word.empty()) return rho.source == rho.target;
  Config cur = rho.source;
  for (const auto& t : rho.word) {
    if (t.action >= vas.size() || !ok_config(t.src) || !ok_config(t.dst)) return false;
    if (t.src != cur) return false;
    const auto& delta = vas.delta(t.action);
    for (std::size_t i = 0; i < d; ++i)
      if (t.dst[i] != t.src[i] + delta[i]) return false;
    cur = t.dst;
  }
  return cur == rho.target;
}

/// Fires the action sequence from source; throws NegativeComponent when it gets stuck.
inline Run run_from_actions(const Vas& vas, const Config& source,
                            const std::vector<std::size_t>& actions) {
  Run r{source, {}, source};
  r.word.reserve(actions.size());
  Config cur = source;
  for (std::size_t a : actions) {
    Config next = apply_action(cur, vas[a]);
    r.word.push_back(Step{cur, a, next});
    cur = std::move(next);
  }
  r.target = cur;
  return r;
}

inline std::optional<Run> try_run_from_actions(const Vas& vas, const Config& source,
                                               const std::vector<std::size_t>& actions) {
  Run r{source, {}, source};
  r.word.reserve(actions.size());
  Config cur = source;
  for (std::size_t a : actions) {
    auto next = try_apply(cur, vas.delta(a));
    if (!next) return std::nullopt;
    r.word.push_back(Step{cur, a, *next});
    cur = std::move(*next);
  }
  r.target = cur;
  return r;
}

inline std::vector<std::size_t> label(const Prerun& rho) {
  std::vector<std::size_t> out;
  out.reserve(rho.word.size());
  for (const auto& t : rho.word) out.push_back(t.action);
  return out;
}

inline std::string label_string(const Prerun& rho, const Vas& vas) {
  std::string s;
  for (const auto& t : rho.word) {
    if (!s.empty()) s += ' ';
    s += vas.name(t.action);
  }
  return s;
}

namespace detail {

inline std::vector<std::int64_t> parse_ints(std::istringstream& in, std::size_t line,
                                            bool naturals) {
  std::vector<std::int64_t> out;
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') break;
    std::size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
      throw ParseError(line, "expected integer, got '" + tok + "'");
    }
    if (pos != tok.size()) throw ParseError(line, "expected integer, got '" + tok + "'");
    if (naturals && v < 0) throw ParseError(line, "expected natural number, got '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

/// Parses the line-oriented instance format:
///   dim <d> / action <name> <d integers> / init <d naturals> / target <d naturals>
/// with '#' comments. Lines may also be separated by " / " for one-line inputs.
inline Instance parse_instance(std::string_view text) {
  std::string normalized;
  normalized.reserve(text.size());
  // A lone '/' between tokens acts as a line break.
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    bool lone_slash = ch == '/' && (i == 0 || std::isspace(static_cast<unsigned char>(text[i - 1]))) &&
                      (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])));
    normalized += lone_slash ? '\n' : ch;
  }

  std::optional<std::size_t> dim;
  std::vector<Action> actions;
  std::unordered_set<std::string> names;
  std::optional<Config> init, target;

  std::istringstream lines(normalized);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(lines, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream in(raw);
    std::string kw;
    if (!(in >> kw)) continue;
    if (kw == "dim") {
      if (dim) throw ParseError(lineno, "duplicate 'dim'");
      auto v = detail::parse_ints(in, lineno, true);
      if (v.size() != 1 || v[0] <= 0) throw ParseError(lineno, "'dim' expects one positive integer");
      dim = static_cast<std::size_t>(v[0]);
      continue;
    }
    if (!dim) throw ParseError(lineno, "'" + kw + "' before 'dim'");
    if (kw == "action") {
      std::string name;
      if (!(in >> name)) throw ParseError(lineno, "action without a name");
      auto v = detail::parse_ints(in, lineno, false);
      if (v.size() != *dim)
        throw ParseError(lineno, "arity mismatch: action '" + name + "' has " +
                                     std::to_string(v.size()) + " components, expected " +
                                     std::to_string(*dim));
      if (!names.insert(name).second) throw ParseError(lineno, "duplicate action name '" + name + "'");
      actions.push_back(Action{name, v});
    } else if (kw == "init" || kw == "target") {
      auto v = detail::parse_ints(in, lineno, true);
      if (v.size() != *dim)
        throw ParseError(lineno, "arity mismatch: '" + kw + "' has " + std::to_string(v.size()) +
                                     " components, expected " + std::to_string(*dim));
      auto& slot = kw == "init" ? init : target;
      if (slot) throw ParseError(lineno, "duplicate '" + kw + "'");
      slot = Config(v);
    } else {
      throw ParseError(lineno, "unknown keyword '" + kw + "'");
    }
  }
  if (!dim) throw ParseError(lineno, "missing 'dim'");
  if (!init) throw ParseError(lineno, "missing 'init'");
  if (!target) throw ParseError(lineno, "missing 'target'");
  return Instance{Vas(*dim, std::move(actions)), *init, *target};
}

inline std::string format_instance(const Instance& inst) {
  std::ostringstream os;
  os << "dim " << inst.vas.dim() << "\n";
  for (const auto& a : inst.vas.actions()) {
    os << "action " << a.name;
    for (auto v : a.delta) os << ' ' << v;
    os << "\n";
  }
  os << "init";
  for (auto v : inst.source) os << ' ' << v;
  os << "\ntarget";
  for (auto v : inst.target) os << ' ' << v;
  os << "\n";
  return os.str();
}

}  // namespace vasreach
