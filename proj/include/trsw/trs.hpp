// Rewrite rules, the rewrite relation and the syntactic TRS toolbox:
// reduct enumeration, bounded reduction enumeration, critical pairs,
// classification and ground-term enumeration.
#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "trsw/term.hpp"

namespace trsw {

class VariableLhs : public Error {
 public:
  explicit VariableLhs(std::size_t index)
      : Error("rule " + std::to_string(index) + ": left-hand side is a variable"), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class ExtraVariableRhs : public Error {
 public:
  ExtraVariableRhs(std::size_t index, std::string var)
      : Error("rule " + std::to_string(index) + ": variable '" + var +
              "' of the right-hand side does not occur on the left"),
        index_(index),
        var_(std::move(var)) {}
  std::size_t index() const { return index_; }
  const std::string& var() const { return var_; }

 private:
  std::size_t index_;
  std::string var_;
};

class NoConstants : public Error {
 public:
  NoConstants() : Error("signature has no constant symbol") {}
};

struct Rule {
  Term lhs;
  Term rhs;
  friend bool operator==(const Rule&, const Rule&) = default;
};

inline std::string to_string(const Rule& r) { return to_string(r.lhs) + " -> " + to_string(r.rhs); }

/// A validated rule list over one signature. Construct through validate_trs.
struct Trs {
  Signature signature;
  std::vector<Rule> rules;

  std::size_t size() const { return rules.size(); }
  const Rule& operator[](std::size_t i) const { return rules.at(i); }
  friend bool operator==(const Trs&, const Trs&) = default;
};

/// Checks both rule conditions and arity consistency. Symbols not yet in
/// `signature` are declared at the arity they are used with.
inline Trs validate_trs(Signature signature, std::vector<Rule> rules) {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Rule& r = rules[i];
    if (r.lhs.is_var()) throw VariableLhs(i);
    std::set<std::string> lhs_vars = vars(r.lhs);
    for (const std::string& x : vars(r.rhs)) {
      if (!lhs_vars.count(x)) throw ExtraVariableRhs(i, x);
    }
    signature.absorb(r.lhs);
    signature.absorb(r.rhs);
  }
  return Trs{std::move(signature), std::move(rules)};
}

inline Trs validate_trs(std::vector<Rule> rules) { return validate_trs(Signature{}, std::move(rules)); }

/// A TRS together with its optional designated term and per-rule provenance notes.
struct EncodedSystem {
  Trs trs;
  std::optional<Term> designated;
  std::map<std::size_t, std::string> notes;
};

/// One rewrite step source →_R target, with everything needed to replay it.
struct Step {
  Term source;
  Term target;
  Position position;
  std::size_t rule_index = 0;
  Substitution substitution;
};

/// A finite reduction starting at `start`. Consecutive steps chain.
struct Reduction {
  Term start;
  std::vector<Step> steps;

  std::size_t length() const { return steps.size(); }
  const Term& last() const { return steps.empty() ? start : steps.back().target; }

  /// The terms start, t1, ..., tn.
  std::vector<Term> terms() const {
    std::vector<Term> out{start};
    for (const Step& s : steps) out.push_back(s.target);
    return out;
  }

  Reduction extended(Step s) const {
    Reduction r = *this;
    r.steps.push_back(std::move(s));
    return r;
  }
};

/// True iff `s` is a genuine step of `R`.
inline bool replays(const Trs& R, const Step& s) {
  if (s.rule_index >= R.size()) return false;
  const Rule& rule = R[s.rule_index];
  try {
    if (!(subterm_at(s.source, s.position) == s.substitution.apply(rule.lhs))) return false;
    return replace_at(s.source, s.position, s.substitution.apply(rule.rhs)) == s.target;
  } catch (const InvalidPosition&) {
    return false;
  }
}

/// True iff every step replays and consecutive steps chain.
inline bool replays(const Trs& R, const Reduction& red) {
  Term cur = red.start;
  for (const Step& s : red.steps) {
    if (!(s.source == cur) || !replays(R, s)) return false;
    cur = s.target;
  }
  return true;
}

namespace detail {

template <typename Fn>
void visit_redexes(const Trs& R, const Term& whole, const Term& sub, Position& pos, bool root_only,
                   Fn& fn) {
  if (sub.is_var()) return;
  for (std::size_t i = 0; i < R.size(); ++i) {
    if (auto sigma = match(R[i].lhs, sub)) fn(pos, i, *sigma);
  }
  if (root_only) return;
  for (std::size_t k = 0; k < sub.arity(); ++k) {
    pos.path.push_back(k + 1);
    visit_redexes(R, whole, sub.arg(k), pos, false, fn);
    pos.path.pop_back();
  }
}

inline std::vector<Step> reducts(const Trs& R, const Term& t, bool root_only) {
  std::vector<Step> out;
  Position pos;
  auto emit = [&](const Position& p, std::size_t rule, const Substitution& sigma) {
    Term target = replace_at(t, p, sigma.apply(R[rule].rhs));
    out.push_back(Step{t, std::move(target), p, rule, sigma});
  };
  visit_redexes(R, t, t, pos, root_only, emit);
  return out;
}

}  // namespace detail

/// Every step t →_R t', ordered by position (pre-order), then rule index.
inline std::vector<Step> one_step_reducts(const Trs& R, const Term& t) {
  return detail::reducts(R, t, false);
}

/// The steps of one_step_reducts at the root.
inline std::vector<Step> root_step_reducts(const Trs& R, const Term& t) {
  return detail::reducts(R, t, true);
}

inline bool is_normal_form(const Trs& R, const Term& t) {
  if (t.is_var()) return true;
  for (const Rule& r : R.rules) {
    if (match(r.lhs, t)) return false;
  }
  for (const Term& a : t.args()) {
    if (!is_normal_form(R, a)) return false;
  }
  return true;
}

/// Lazy breadth-first enumeration of every reduction from a term with
/// length at most a bound. Shorter reductions come first; reductions of the
/// same length follow reduct order.
class ReductionEnumerator {
 public:
  ReductionEnumerator(const Trs& R, Term start, std::size_t max_length)
      : trs_(&R), max_length_(max_length) {
    queue_.push_back(Reduction{std::move(start), {}});
  }

  std::optional<Reduction> next() {
    if (queue_.empty()) return std::nullopt;
    Reduction r = std::move(queue_.front());
    queue_.pop_front();
    if (r.length() < max_length_) {
      for (Step& s : one_step_reducts(*trs_, r.last())) queue_.push_back(r.extended(std::move(s)));
    }
    return r;
  }

 private:
  const Trs* trs_;
  std::size_t max_length_;
  std::deque<Reduction> queue_;
};

inline ReductionEnumerator reductions_up_to(const Trs& R, const Term& t, std::size_t n) {
  return ReductionEnumerator(R, t, n);
}

/// Drains reductions_up_to into a vector.
inline std::vector<Reduction> all_reductions_up_to(const Trs& R, const Term& t, std::size_t n) {
  std::vector<Reduction> out;
  auto e = reductions_up_to(R, t, n);
  while (auto r = e.next()) out.push_back(std::move(*r));
  return out;
}

// ---------------------------------------------------------------------------
// Critical pairs

/// ⟨left, right⟩ from the peak left ← peak → right: `left` comes from the
/// outer rule at the root of the peak, `right` from the inner rule at
/// `overlap_position`.
struct CriticalPair {
  Term left;
  Term right;
  Term peak;
  Position overlap_position;
  std::pair<std::size_t, std::size_t> rule_pair;  // (outer, inner)
};

/// All critical pairs: the inner rule (renamed apart) unifies with a
/// non-variable subterm of the outer rule's left-hand side. The overlap of a
/// rule with itself at the root is excluded; root overlaps of distinct rules
/// appear once per ordered pair.
inline std::vector<CriticalPair> critical_pairs(const Trs& R) {
  std::vector<CriticalPair> out;
  for (std::size_t i = 0; i < R.size(); ++i) {
    const Rule& outer = R[i];
    std::set<std::string> outer_vars = vars(outer.lhs);
    for (const Position& p : positions(outer.lhs)) {
      const Term& sub = subterm_at(outer.lhs, p);
      if (sub.is_var()) continue;
      for (std::size_t j = 0; j < R.size(); ++j) {
        if (i == j && p.is_root()) continue;
        Substitution ren = renaming_apart(R[j].lhs, outer_vars);
        Term inner_lhs = ren.apply(R[j].lhs);
        Term inner_rhs = ren.apply(R[j].rhs);
        auto sigma = unify(sub, inner_lhs);
        if (!sigma) continue;
        Term peak = sigma->apply(outer.lhs);
        Term by_outer = sigma->apply(outer.rhs);
        Term by_inner = sigma->apply(replace_at(outer.lhs, p, inner_rhs));
        out.push_back(CriticalPair{std::move(by_outer), std::move(by_inner), std::move(peak), p, {i, j}});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classification

struct Classification {
  bool left_linear = true;
  bool orthogonal = true;
  bool non_erasing = true;
  bool collapsing = false;
};

inline Classification classify(const Trs& R) {
  Classification c;
  for (const Rule& r : R.rules) {
    if (!is_linear(r.lhs)) c.left_linear = false;
    if (vars(r.lhs) != vars(r.rhs)) c.non_erasing = false;
    if (r.rhs.is_var()) c.collapsing = true;
  }
  c.orthogonal = c.left_linear && critical_pairs(R).empty();
  return c;
}

// ---------------------------------------------------------------------------
// Term enumeration

/// Every term with at most `max_size` nodes built from the symbols of `sig`
/// and the given extra leaves (typically variables), each exactly once, in
/// ascending size. Within one size, terms follow symbol order and then the
/// order of their arguments.
inline std::vector<Term> enumerate_terms(const Signature& sig, std::size_t max_size,
                                         const std::vector<Term>& extra_leaves) {
  // by_size[k]: all terms of exactly k nodes.
  std::vector<std::vector<Term>> by_size(max_size + 1);
  if (max_size >= 1) {
    for (const Term& l : extra_leaves) by_size[1].push_back(l);
  }
  for (std::size_t k = 1; k <= max_size; ++k) {
    for (const auto& [name, arity] : sig.symbols()) {
      if (arity == 0) {
        if (k == 1) by_size[1].push_back(Term::app(name));
        continue;
      }
      if (k < arity + 1) continue;
      // Distribute k-1 nodes over the arguments, each getting at least one.
      std::vector<std::size_t> parts(arity, 1);
      std::size_t rest = k - 1 - arity;
      std::function<void(std::size_t, std::size_t)> split = [&](std::size_t idx, std::size_t left) {
        if (idx + 1 == arity) {
          parts[idx] = 1 + left;
          std::vector<std::size_t> choice(arity, 0);
          std::function<void(std::size_t)> pick = [&](std::size_t a) {
            if (a == arity) {
              std::vector<Term> args;
              args.reserve(arity);
              for (std::size_t b = 0; b < arity; ++b) args.push_back(by_size[parts[b]][choice[b]]);
              by_size[k].push_back(Term::app(name, std::move(args)));
              return;
            }
            for (std::size_t c = 0; c < by_size[parts[a]].size(); ++c) {
              choice[a] = c;
              pick(a + 1);
            }
          };
          pick(0);
          return;
        }
        for (std::size_t give = 0; give <= left; ++give) {
          parts[idx] = 1 + give;
          split(idx + 1, left - give);
        }
      };
      split(0, rest);
    }
  }
  std::vector<Term> out;
  for (std::size_t k = 1; k <= max_size; ++k) {
    out.insert(out.end(), by_size[k].begin(), by_size[k].end());
  }
  return out;
}

inline std::vector<Term> enumerate_ground_terms(const Signature& sig, std::size_t max_size) {
  if (sig.constants().empty()) throw NoConstants();
  return enumerate_terms(sig, max_size, {});
}

}  // namespace trsw
