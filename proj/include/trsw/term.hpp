// First-order terms, positions, substitutions, matching and unification.
//
// Terms are immutable values. Internally a term shares its subtrees through
// reference-counted nodes, but equality, ordering and hashing are purely
// structural, so a Term behaves like the plain tree it denotes.
#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace trsw {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidPosition : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  ArityMismatch(const std::string& symbol, std::size_t expected, std::size_t got)
      : Error("arity mismatch for '" + symbol + "': declared " + std::to_string(expected) +
              ", used with " + std::to_string(got)),
        symbol_(symbol) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

/// Name of the reserved 0-ary symbol marking the hole of a context.
inline constexpr std::string_view kHole = "HOLE";

namespace detail {

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix64 finalizer over the combined value.
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return h;
}

inline std::uint64_t hash_name(std::string_view s) {
  // FNV-1a, fixed so hashes are reproducible across standard libraries.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

class Term {
 public:
  /// A variable named `name`.
  static Term var(std::string name) {
    return Term(std::make_shared<const Node>(true, std::move(name), std::vector<Term>{}));
  }

  /// An application `symbol(args...)`; a 0-ary application is a constant.
  static Term app(std::string symbol, std::vector<Term> args = {}) {
    return Term(std::make_shared<const Node>(false, std::move(symbol), std::move(args)));
  }

  bool is_var() const { return node_->is_var; }
  const std::string& name() const { return node_->name; }
  std::span<const Term> args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args.at(i); }
  std::size_t arity() const { return node_->args.size(); }
  /// Number of nodes.
  std::size_t size() const { return node_->size; }
  std::size_t depth() const { return node_->depth; }
  std::uint64_t hash() const { return node_->hash; }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash || a.node_->size != b.node_->size) return false;
    if (a.node_->is_var != b.node_->is_var || a.node_->name != b.node_->name) return false;
    return a.node_->args == b.node_->args;
  }

  /// Structural order: variables before applications, then by name, then
  /// argument-wise.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (a.is_var() != b.is_var()) {
      return a.is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (auto c = a.name().compare(b.name()); c != 0) {
      return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (a.arity() != b.arity()) return a.arity() <=> b.arity();
    for (std::size_t i = 0; i < a.arity(); ++i) {
      if (auto c = a.arg(i) <=> b.arg(i); c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

 private:
  struct Node {
    Node(bool v, std::string n, std::vector<Term> a)
        : is_var(v), name(std::move(n)), args(std::move(a)) {
      hash = detail::mix(detail::hash_name(name), is_var ? 1 : 2 + args.size());
      size = 1;
      depth = 0;
      for (const Term& t : args) {
        hash = detail::mix(hash, t.hash());
        size += t.size();
        depth = std::max(depth, t.depth() + 1);
      }
    }
    bool is_var;
    std::string name;
    std::vector<Term> args;
    std::uint64_t hash = 0;
    std::size_t size = 1;
    std::size_t depth = 0;
  };

  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return static_cast<std::size_t>(t.hash()); }
};

/// Prints `f(t1,...,tn)`, constants and variables bare.
inline void write_term(std::string& out, const Term& t) {
  out += t.name();
  if (t.is_var() || t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ',';
    write_term(out, t.arg(i));
  }
  out += ')';
}

inline std::string to_string(const Term& t) {
  std::string s;
  write_term(s, t);
  return s;
}

// ---------------------------------------------------------------------------
// Signatures

/// Finite set of function symbols with fixed arities.
class Signature {
 public:
  Signature() = default;
  Signature(std::initializer_list<std::pair<std::string, std::size_t>> symbols) {
    for (const auto& [name, arity] : symbols) add(name, arity);
  }

  /// Declares `name/arity`; redeclaring with the same arity is a no-op.
  void add(const std::string& name, std::size_t arity) {
    if (name == kHole) throw Error("'" + std::string(kHole) + "' is reserved for contexts");
    auto [it, inserted] = arities_.emplace(name, arity);
    if (!inserted && it->second != arity) throw ArityMismatch(name, it->second, arity);
  }

  bool contains(const std::string& name) const { return arities_.count(name) != 0; }

  std::optional<std::size_t> arity(const std::string& name) const {
    auto it = arities_.find(name);
    if (it == arities_.end()) return std::nullopt;
    return it->second;
  }

  /// Symbols in name order.
  const std::map<std::string, std::size_t>& symbols() const { return arities_; }

  std::vector<std::string> constants() const {
    std::vector<std::string> out;
    for (const auto& [name, arity] : arities_) {
      if (arity == 0) out.push_back(name);
    }
    return out;
  }

  std::size_t size() const { return arities_.size(); }
  bool empty() const { return arities_.empty(); }

  /// Adds every symbol of `t`, checking arity consistency.
  void absorb(const Term& t) {
    if (t.is_var()) return;
    add(t.name(), t.arity());
    for (const Term& a : t.args()) absorb(a);
  }

  void merge(const Signature& other) {
    for (const auto& [name, arity] : other.arities_) add(name, arity);
  }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::map<std::string, std::size_t> arities_;
};

/// Throws ArityMismatch unless every symbol of `t` is declared in `sig` with
/// the arity it is used at.
inline void check_well_formed(const Signature& sig, const Term& t) {
  if (t.is_var()) return;
  auto a = sig.arity(t.name());
  if (!a) throw Error("undeclared symbol '" + t.name() + "'");
  if (*a != t.arity()) throw ArityMismatch(t.name(), *a, t.arity());
  for (const Term& c : t.args()) check_well_formed(sig, c);
}

// ---------------------------------------------------------------------------
// Positions

/// Path of 1-based argument indices; the empty path is the root.
struct Position {
  std::vector<std::size_t> path;

  Position() = default;
  Position(std::initializer_list<std::size_t> p) : path(p) {}
  explicit Position(std::vector<std::size_t> p) : path(std::move(p)) {}

  bool is_root() const { return path.empty(); }
  Position child(std::size_t i) const {
    Position p = *this;
    p.path.push_back(i);
    return p;
  }
  /// True iff `this` is a (non-strict) prefix of `other`.
  bool is_prefix_of(const Position& other) const {
    return path.size() <= other.path.size() &&
           std::equal(path.begin(), path.end(), other.path.begin());
  }

  friend bool operator==(const Position&, const Position&) = default;
  // Lexicographic order on paths, i.e. pre-order on the tree.
  friend auto operator<=>(const Position&, const Position&) = default;
};

inline std::string to_string(const Position& p) {
  if (p.path.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < p.path.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(p.path[i]);
  }
  return s;
}

namespace detail {
inline void collect_positions(const Term& t, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    cur.path.push_back(i + 1);
    collect_positions(t.arg(i), cur, out);
    cur.path.pop_back();
  }
}
}  // namespace detail

/// All positions of `t` in pre-order (which is also their sorted order).
inline std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  detail::collect_positions(t, cur, out);
  return out;
}

inline const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (std::size_t i : p.path) {
    if (i == 0 || i > cur->arity()) {
      throw InvalidPosition("position " + to_string(p) + " not in " + to_string(t));
    }
    cur = &cur->arg(i - 1);
  }
  return *cur;
}

namespace detail {
inline Term replace_from(const Term& t, const Position& p, std::size_t depth, const Term& s) {
  if (depth == p.path.size()) return s;
  std::size_t i = p.path[depth];
  if (i == 0 || i > t.arity()) throw InvalidPosition("position " + to_string(p) + " is invalid");
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[i - 1] = replace_from(t.arg(i - 1), p, depth + 1, s);
  return Term::app(t.name(), std::move(args));
}
}  // namespace detail

/// `t` with the subterm at `p` replaced by `s`.
inline Term replace_at(const Term& t, const Position& p, const Term& s) {
  return detail::replace_from(t, p, 0, s);
}

// ---------------------------------------------------------------------------
// Variables

inline void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.name());
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out);
}

inline std::set<std::string> vars(const Term& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

inline bool is_ground(const Term& t) {
  if (t.is_var()) return false;
  for (const Term& a : t.args()) {
    if (!is_ground(a)) return false;
  }
  return true;
}

inline bool occurs(const std::string& x, const Term& t) {
  if (t.is_var()) return t.name() == x;
  for (const Term& a : t.args()) {
    if (occurs(x, a)) return true;
  }
  return false;
}

/// True iff no variable occurs twice in `t`.
inline bool is_linear(const Term& t) {
  std::set<std::string> seen;
  bool ok = true;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    if (!ok) return;
    if (u.is_var()) {
      ok = seen.insert(u.name()).second;
      return;
    }
    for (const Term& a : u.args()) walk(a);
  };
  walk(t);
  return ok;
}

// ---------------------------------------------------------------------------
// Substitutions

/// Finite map from variable names to terms; identity elsewhere.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const std::string, Term>> m) : map_(m) {}

  void bind(const std::string& x, Term t) { map_.insert_or_assign(x, std::move(t)); }

  const Term* lookup(const std::string& x) const {
    auto it = map_.find(x);
    return it == map_.end() ? nullptr : &it->second;
  }

  bool contains(const std::string& x) const { return map_.count(x) != 0; }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<std::string, Term>& bindings() const { return map_; }

  Term apply(const Term& t) const {
    if (map_.empty()) return t;
    if (t.is_var()) {
      const Term* b = lookup(t.name());
      return b ? *b : t;
    }
    if (t.arity() == 0) return t;
    std::vector<Term> args;
    args.reserve(t.arity());
    bool changed = false;
    for (const Term& a : t.args()) {
      args.push_back(apply(a));
      changed = changed || !(args.back() == a);
    }
    return changed ? Term::app(t.name(), std::move(args)) : t;
  }

  Term operator()(const Term& t) const { return apply(t); }

  /// The substitution `this ∘ inner`, i.e. x ↦ this(inner(x)).
  Substitution compose(const Substitution& inner) const {
    Substitution out;
    for (const auto& [x, t] : inner.map_) out.map_.insert_or_assign(x, apply(t));
    for (const auto& [x, t] : map_) {
      if (!inner.contains(x)) out.map_.emplace(x, t);
    }
    return out;
  }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<std::string, Term> map_;
};

inline Term apply_subst(const Substitution& s, const Term& t) { return s.apply(t); }

inline std::string to_string(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [x, t] : s.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += x + "->" + to_string(t);
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Matching and unification

namespace detail {
inline bool match_into(const Term& pattern, const Term& subject, Substitution& s) {
  if (pattern.is_var()) {
    if (const Term* b = s.lookup(pattern.name())) return *b == subject;
    s.bind(pattern.name(), subject);
    return true;
  }
  if (subject.is_var() || pattern.name() != subject.name() ||
      pattern.arity() != subject.arity()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!match_into(pattern.arg(i), subject.arg(i), s)) return false;
  }
  return true;
}
}  // namespace detail

/// The unique σ over Var(pattern) with σ(pattern) ≡ subject, if any.
inline std::optional<Substitution> match(const Term& pattern, const Term& subject) {
  Substitution s;
  if (!detail::match_into(pattern, subject, s)) return std::nullopt;
  return s;
}

/// Syntactic most general unifier with occurs check. The result is
/// idempotent: no bound variable occurs in any binding.
inline std::optional<Substitution> unify(const Term& s, const Term& t) {
  Substitution sigma;
  std::vector<std::pair<Term, Term>> work{{s, t}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    a = sigma.apply(a);
    b = sigma.apply(b);
    if (a == b) continue;
    if (!a.is_var() && b.is_var()) std::swap(a, b);
    if (a.is_var()) {
      if (occurs(a.name(), b)) return std::nullopt;
      Substitution single{{a.name(), b}};
      sigma = single.compose(sigma);
      continue;
    }
    if (a.name() != b.name() || a.arity() != b.arity()) return std::nullopt;
    for (std::size_t i = a.arity(); i-- > 0;) work.emplace_back(a.arg(i), b.arg(i));
  }
  return sigma;
}

/// Renaming of the variables of `t` that clash with `avoid`; the renamed
/// variables get fresh names `x_1`, `x_2`, ... distinct from `avoid` and from
/// every variable of `t`.
inline Substitution renaming_apart(const Term& t, const std::set<std::string>& avoid) {
  std::set<std::string> taken = vars(t);
  taken.insert(avoid.begin(), avoid.end());
  Substitution ren;
  for (const std::string& x : vars(t)) {
    if (!avoid.count(x)) continue;
    for (std::size_t k = 1;; ++k) {
      std::string fresh = x + "_" + std::to_string(k);
      if (!taken.count(fresh)) {
        taken.insert(fresh);
        ren.bind(x, Term::var(fresh));
        break;
      }
    }
  }
  return ren;
}

inline Term rename_apart(const Term& t, const std::set<std::string>& avoid) {
  return renaming_apart(t, avoid).apply(t);
}

// ---------------------------------------------------------------------------
// Contexts

inline Term hole() { return Term::app(std::string(kHole)); }

/// The context C with C[subterm_at(t, p)] ≡ t.
inline Term context_at(const Term& t, const Position& p) { return replace_at(t, p, hole()); }

namespace detail {
inline bool find_hole(const Term& c, Position& cur, std::optional<Position>& found,
                      std::size_t& count) {
  if (!c.is_var() && c.arity() == 0 && c.name() == kHole) {
    ++count;
    found = cur;
    return true;
  }
  for (std::size_t i = 0; i < c.arity(); ++i) {
    cur.path.push_back(i + 1);
    find_hole(c.arg(i), cur, found, count);
    cur.path.pop_back();
  }
  return count != 0;
}
}  // namespace detail

/// C[s]. Throws unless `context` contains exactly one hole.
inline Term fill(const Term& context, const Term& s) {
  Position cur;
  std::optional<Position> at;
  std::size_t count = 0;
  detail::find_hole(context, cur, at, count);
  if (count != 1) throw Error("a context must contain exactly one hole");
  return replace_at(context, *at, s);
}

}  // namespace trsw

template <>
struct std::hash<trsw::Term> {
  std::size_t operator()(const trsw::Term& t) const noexcept {
    return static_cast<std::size_t>(t.hash());
  }
};
