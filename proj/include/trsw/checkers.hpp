// Bounded semi-decision procedures with three-valued outcomes.
//
// Every search is deterministic: reducts are visited in one_step_reducts
// order and all tie-breaks follow insertion order.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "trsw/encodings.hpp"
#include "trsw/term.hpp"
#include "trsw/trs.hpp"

namespace trsw {

using detail::mix;

enum class Verdict { Confirmed, Refuted, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Confirmed: return "Confirmed";
    case Verdict::Refuted: return "Refuted";
    default: return "Unknown";
  }
}

struct Fuel {
  std::size_t max_reduction_length = 50;
  std::size_t max_peak_depth = 3;
  std::size_t max_join_length = 20;
  std::optional<std::size_t> max_term_size;
  /// Terms one search may visit before it gives up with Unknown.
  std::size_t max_states = 200000;
};

struct CheckOutcome {
  Verdict verdict = Verdict::Unknown;
  /// Replayable reductions: the witness of a refutation, or the evidence of
  /// a confirmation (normal form reduction, join legs).
  std::vector<Reduction> witnesses;
  /// Confirmed SN: longest reduction length. Confirmed chain search: 0.
  std::optional<std::size_t> bound;
  /// Largest fuel component actually consumed.
  std::size_t fuel_used = 0;
  /// Number of distinct terms expanded and a hash of the expansion order.
  std::size_t explored = 0;
  std::uint64_t transcript_hash = 0;
  /// Chain search: the witness revisits a term with a root step in between.
  bool cyclic = false;
  /// Minimality check: the n found for each enumerated term.
  std::vector<std::pair<Term, std::size_t>> term_bounds;
  std::string detail;
};

namespace detail {

/// Memoized successor function of one system.
class Successors {
 public:
  using Fn = std::function<std::vector<Step>(const Term&)>;
  explicit Successors(Fn fn) : fn_(std::move(fn)) {}
  explicit Successors(const Trs& R) : fn_([&R](const Term& t) { return one_step_reducts(R, t); }) {}

  const std::vector<Step>& operator()(const Term& t) {
    auto it = memo_.find(t);
    if (it == memo_.end()) it = memo_.emplace(t, fn_(t)).first;
    return it->second;
  }

  std::size_t size() const { return memo_.size(); }
  void clear() { memo_.clear(); }

 private:
  Fn fn_;
  std::unordered_map<Term, std::vector<Step>, TermHash> memo_;
};

/// Steps of →top at the root followed by →base anywhere; base rule indices
/// are shifted by |top|.
inline std::vector<Step> relative_steps(const RelativeProblem& P, const Term& t) {
  std::vector<Step> out = root_step_reducts(P.top, t);
  for (Step& s : one_step_reducts(P.base, t)) {
    s.rule_index += P.top.size();
    out.push_back(std::move(s));
  }
  return out;
}

/// Breadth-first reachable set with parent links, grown one level at a time.
class Reach {
 public:
  explicit Reach(Term start) {
    order_.push_back(std::move(start));
    index_.emplace(order_.front(), 0);
    parent_.push_back({0, std::nullopt});
    depth_.push_back(0);
    level_end_.push_back(1);
  }

  std::size_t levels() const { return level_end_.size() - 1; }
  bool closed() const { return closed_; }
  bool truncated() const { return truncated_; }
  std::size_t size() const { return order_.size(); }
  const std::vector<Term>& order() const { return order_; }
  bool contains(const Term& t) const { return index_.count(t) != 0; }
  std::optional<std::size_t> depth_of(const Term& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) return std::nullopt;
    return depth_[it->second];
  }
  /// Number of terms at depth at most `l`.
  std::size_t prefix(std::size_t l) const { return level_end_[std::min(l, levels())]; }

  /// Adds every reduct of the last level. Returns false once nothing new
  /// appears, i.e. the set is closed under rewriting, or once the set hits
  /// `cap` terms; a truncated last level stays partial for good.
  bool grow(Successors& succ, std::size_t cap = SIZE_MAX) {
    if (closed_ || truncated_) return false;
    std::size_t begin = levels() == 0 ? 0 : level_end_[levels() - 1];
    std::size_t end = level_end_.back();
    for (std::size_t i = begin; i < end && !truncated_; ++i) {
      const Term u = order_[i];
      for (const Step& s : succ(u)) {
        if (order_.size() >= cap) {
          truncated_ = true;
          break;
        }
        if (index_.count(s.target)) continue;
        index_.emplace(s.target, order_.size());
        order_.push_back(s.target);
        parent_.push_back({i, s});
        depth_.push_back(levels() + 1);
      }
    }
    if (order_.size() == end) {
      closed_ = !truncated_;
      return false;
    }
    level_end_.push_back(order_.size());
    return !truncated_;
  }

  /// The breadth-first reduction from the start to `t` (which must be in the set).
  Reduction path_to(const Term& t) const {
    std::vector<Step> steps;
    std::size_t i = index_.at(t);
    while (i != 0) {
      steps.push_back(*parent_[i].second);
      i = parent_[i].first;
    }
    std::reverse(steps.begin(), steps.end());
    return Reduction{order_.front(), std::move(steps)};
  }

 private:
  std::vector<Term> order_;
  std::unordered_map<Term, std::size_t, TermHash> index_;
  std::vector<std::pair<std::size_t, std::optional<Step>>> parent_;
  std::vector<std::size_t> depth_;
  std::vector<std::size_t> level_end_;
  bool closed_ = false;
  bool truncated_ = false;
};

}  // namespace detail

enum class JoinResult { Joined, NotJoinable, Unknown };

/// Bounded joinability with reachable sets cached per term, so repeated
/// queries inside one check share work. Each leg is at most `max_length`
/// steps long. The two sides are grown alternately, smaller side first.
class JoinSearcher {
 public:
  explicit JoinSearcher(const Trs& R, std::size_t max_states = SIZE_MAX) : succ_(R), cap_(max_states) {}

  struct Result {
    JoinResult result = JoinResult::Unknown;
    std::optional<Reduction> left_leg, right_leg;
    std::size_t depth_used = 0;
  };

  Result join(const Term& a, const Term& b, std::size_t max_length) {
    Result res;
    // Cached sets are only a speed-up; drop them before they dominate memory.
    if (cap_ != SIZE_MAX) {
      std::size_t held = succ_.size();
      for (const auto& [t, r] : cache_) held += r->size();
      if (held > 8 * cap_) {
        cache_.clear();
        succ_.clear();
      }
    }
    detail::Reach& ra = reach(a);
    detail::Reach& rb = reach(b);
    std::size_t la = 0, lb = 0;
    while (true) {
      if (auto c = common(ra, la, rb, lb)) {
        res.result = JoinResult::Joined;
        res.left_leg = ra.path_to(*c);
        res.right_leg = rb.path_to(*c);
        res.depth_used = std::max(res.left_leg->length(), res.right_leg->length());
        return res;
      }
      bool can_a = la < max_length && (la < ra.levels() || !(ra.closed() || ra.truncated()));
      bool can_b = lb < max_length && (lb < rb.levels() || !(rb.closed() || rb.truncated()));
      if (!can_a && !can_b) break;
      bool pick_a = can_a && (!can_b || ra.prefix(la) <= rb.prefix(lb));
      detail::Reach& r = pick_a ? ra : rb;
      std::size_t& l = pick_a ? la : lb;
      while (r.levels() <= l && r.grow(succ_, cap_)) {
      }
      ++l;
      res.depth_used = std::max(res.depth_used, l);
    }
    bool a_done = ra.closed() && la >= ra.levels();
    bool b_done = rb.closed() && lb >= rb.levels();
    res.result = a_done && b_done ? JoinResult::NotJoinable : JoinResult::Unknown;
    return res;
  }

  detail::Successors& successors() { return succ_; }

 private:
  detail::Reach& reach(const Term& t) {
    auto it = cache_.find(t);
    if (it == cache_.end()) it = cache_.emplace(t, std::make_unique<detail::Reach>(t)).first;
    return *it->second;
  }

  std::optional<Term> common(const detail::Reach& ra, std::size_t la, const detail::Reach& rb,
                             std::size_t lb) const {
    // Only the first la / lb levels count; deeper levels may already be
    // cached from earlier queries.
    for (std::size_t i = 0, n = ra.prefix(la); i < n; ++i) {
      auto d = rb.depth_of(ra.order()[i]);
      if (d && *d <= lb) return ra.order()[i];
    }
    return std::nullopt;
  }

  detail::Successors succ_;
  std::size_t cap_;
  std::unordered_map<Term, std::unique_ptr<detail::Reach>, TermHash> cache_;
};

// ---------------------------------------------------------------------------
// Longest-path search (SN and its relative variants)

namespace detail {

enum class PathStatus { Exact, Cycle, Exceeded };

struct PathSearch {
  PathStatus status = PathStatus::Exact;
  std::size_t height = 0;
  std::optional<Reduction> cycle;  // from the start term, ending on a repeated term
  std::size_t explored = 0;
  std::uint64_t hash = 0;
};

/// Longest reduction from `start` through terms accepted by `allowed`
/// (the start term is assumed accepted), with cycle detection along each
/// path. Paths are cut at `budget` steps; a cut path that could continue
/// makes the result Exceeded unless a cycle is found elsewhere.
class LongestPath {
 public:
  using Allowed = std::function<bool(const Term&)>;

  LongestPath(Successors& succ, Allowed allowed, std::size_t max_states = SIZE_MAX)
      : succ_(succ), allowed_(std::move(allowed)), cap_(max_states) {}

  PathSearch run(const Term& start, std::size_t budget) {
    PathSearch out;
    exceeded_ = false;
    cycle_.reset();
    path_.clear();
    std::size_t h = dfs(start, budget);
    out.explored = explored_;
    out.hash = hash_;
    if (cycle_) {
      out.status = PathStatus::Cycle;
      out.cycle = Reduction{start, *cycle_};
    } else if (exceeded_) {
      out.status = PathStatus::Exceeded;
      out.height = h;
    } else {
      out.height = h;
    }
    return out;
  }

 private:
  struct Memo {
    std::size_t height = 0;
    bool exact = false;
    std::size_t remaining = 0;
  };

  std::size_t dfs(const Term& u, std::size_t remaining) {
    if (auto it = memo_.find(u); it != memo_.end()) {
      if (it->second.exact) return it->second.height;
      if (it->second.remaining >= remaining) {
        exceeded_ = true;
        return it->second.height;
      }
    } else if (explored_ >= cap_) {
      exceeded_ = true;
      return 0;
    }
    const std::vector<Step>& all = succ_(u);
    std::vector<const Step*> next;
    for (const Step& s : all) {
      if (allowed_(s.target)) next.push_back(&s);
    }
    if (!memo_.count(u)) {
      ++explored_;
      hash_ = mix(hash_, u.hash());
    }
    if (next.empty()) {
      memo_[u] = Memo{0, true, remaining};
      return 0;
    }
    if (remaining == 0) {
      exceeded_ = true;
      memo_[u] = Memo{1, false, 0};
      return 1;
    }
    on_stack_.insert(u);
    std::size_t best = 0;
    bool exact = true;
    for (const Step* s : next) {
      if (on_stack_.count(s->target)) {
        std::vector<Step> steps = path_;
        steps.push_back(*s);
        cycle_ = std::move(steps);
        on_stack_.erase(u);
        return best;
      }
      path_.push_back(*s);
      bool before = exceeded_;
      exceeded_ = false;
      std::size_t h = dfs(s->target, remaining - 1);
      path_.pop_back();
      if (cycle_) {
        on_stack_.erase(u);
        return best;
      }
      if (exceeded_) exact = false;
      exceeded_ = exceeded_ || before;
      best = std::max(best, h + 1);
    }
    on_stack_.erase(u);
    memo_[u] = Memo{best, exact, remaining};
    return best;
  }

  Successors& succ_;
  Allowed allowed_;
  std::size_t cap_;
  std::unordered_map<Term, Memo, TermHash> memo_;
  std::unordered_set<Term, TermHash> on_stack_;
  std::vector<Step> path_;
  std::optional<std::vector<Step>> cycle_;
  bool exceeded_ = false;
  std::size_t explored_ = 0;
  std::uint64_t hash_ = 0;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Single-term checks

/// SN on one term. Confirmed carries the exact longest reduction length,
/// Refuted a reduction that returns to an earlier term.
inline CheckOutcome check_sn_term(const Trs& R, const Term& t, const Fuel& fuel) {
  detail::Successors succ(R);
  detail::LongestPath lp(succ, [](const Term&) { return true; }, fuel.max_states);
  detail::PathSearch ps = lp.run(t, fuel.max_reduction_length);
  CheckOutcome out;
  out.explored = ps.explored;
  out.transcript_hash = ps.hash;
  switch (ps.status) {
    case detail::PathStatus::Exact:
      out.verdict = Verdict::Confirmed;
      out.bound = ps.height;
      out.fuel_used = ps.height;
      break;
    case detail::PathStatus::Cycle:
      out.verdict = Verdict::Refuted;
      out.fuel_used = ps.cycle->length();
      out.witnesses.push_back(*ps.cycle);
      out.detail = "reduction revisits a term";
      break;
    case detail::PathStatus::Exceeded:
      out.fuel_used = fuel.max_reduction_length;
      out.detail = "a reduction reaches the length bound without repeating a term";
      break;
  }
  return out;
}

/// WN on one term by breadth-first search for a normal form.
inline CheckOutcome check_wn_term(const Trs& R, const Term& t, const Fuel& fuel) {
  detail::Successors succ(R);
  detail::Reach reach(t);
  CheckOutcome out;
  std::size_t checked = 0;
  while (true) {
    for (; checked < reach.size(); ++checked) {
      const Term& u = reach.order()[checked];
      out.transcript_hash = mix(out.transcript_hash, u.hash());
      if (succ(u).empty()) {
        out.verdict = Verdict::Confirmed;
        out.witnesses.push_back(reach.path_to(u));
        out.fuel_used = out.witnesses.back().length();
        out.explored = checked + 1;
        return out;
      }
    }
    if (reach.levels() >= fuel.max_reduction_length || reach.size() >= fuel.max_states) break;
    if (!reach.grow(succ, fuel.max_states)) {
      if (reach.truncated()) break;
      out.verdict = Verdict::Refuted;
      out.detail = "reachable set exhausted without a normal form";
      out.fuel_used = reach.levels();
      out.explored = reach.size();
      return out;
    }
  }
  out.fuel_used = fuel.max_reduction_length;
  out.explored = reach.size();
  out.detail = "no normal form within the length bound";
  return out;
}

namespace detail {

/// Folds one join result into an aggregate outcome. Returns true when the
/// aggregate is settled (Refuted).
inline bool fold_join(CheckOutcome& out, const JoinSearcher::Result& j, const Reduction& leg_a,
                      const Reduction& leg_b, bool& unknown) {
  out.fuel_used = std::max(out.fuel_used, j.depth_used);
  if (j.result == JoinResult::NotJoinable) {
    out.verdict = Verdict::Refuted;
    out.witnesses = {leg_a, leg_b};
    return true;
  }
  if (j.result == JoinResult::Unknown) unknown = true;
  return false;
}

}  // namespace detail

/// CR on one term: every peak t1 ←* t →* t2 with legs of at most
/// max_peak_depth steps must join within max_join_length.
inline CheckOutcome check_cr_term(const Trs& R, const Term& t, const Fuel& fuel) {
  JoinSearcher js(R, fuel.max_states);
  detail::Reach peak(t);
  bool peaks_cut = false;
  for (std::size_t d = 0; d < fuel.max_peak_depth && !peak.closed(); ++d) {
    if (peak.size() >= fuel.max_states) {
      peaks_cut = true;
      break;
    }
    peak.grow(js.successors(), fuel.max_states);
    peaks_cut = peaks_cut || peak.truncated();
  }
  CheckOutcome out;
  out.explored = peak.size();
  bool unknown = false;
  const auto& ts = peak.order();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      auto r = js.join(ts[i], ts[j], fuel.max_join_length);
      out.transcript_hash = mix(out.transcript_hash, static_cast<std::uint64_t>(r.result));
      if (detail::fold_join(out, r, peak.path_to(ts[i]), peak.path_to(ts[j]), unknown)) {
        out.detail = "peak " + to_string(ts[i]) + " <-* " + to_string(t) + " ->* " +
                     to_string(ts[j]) + " cannot be joined";
        return out;
      }
    }
  }
  out.verdict = unknown || peaks_cut ? Verdict::Unknown : Verdict::Confirmed;
  return out;
}

// ---------------------------------------------------------------------------
// Uniform checks over enumerated terms

namespace detail {

/// Ground terms up to `size`; with `open_variants`, each term also with its
/// constant leaves replaced by distinct fresh variables.
inline std::vector<Term> uniform_terms(const Signature& sig, std::size_t size, bool open_variants) {
  std::vector<Term> ground = enumerate_ground_terms(sig, size);
  if (!open_variants) return ground;
  std::vector<Term> out = ground;
  std::unordered_set<Term, TermHash> seen(ground.begin(), ground.end());
  for (const Term& g : ground) {
    std::size_t k = 0;
    std::function<Term(const Term&)> open = [&](const Term& u) -> Term {
      if (u.arity() == 0) return Term::var("z" + std::to_string(++k));
      std::vector<Term> args;
      for (const Term& a : u.args()) args.push_back(open(a));
      return Term::app(u.name(), std::move(args));
    };
    Term o = open(g);
    if (seen.insert(o).second) out.push_back(std::move(o));
  }
  return out;
}

template <typename Check>
CheckOutcome check_each(const std::vector<Term>& terms, Check check) {
  CheckOutcome out;
  bool unknown = false;
  for (const Term& t : terms) {
    CheckOutcome r = check(t);
    out.fuel_used = std::max(out.fuel_used, r.fuel_used);
    out.explored += r.explored;
    out.transcript_hash = mix(out.transcript_hash, r.transcript_hash);
    if (r.verdict == Verdict::Refuted) {
      r.detail = "at " + to_string(t) + ": " + r.detail;
      r.fuel_used = out.fuel_used;
      r.explored = out.explored;
      r.transcript_hash = out.transcript_hash;
      return r;
    }
    if (r.verdict == Verdict::Unknown) unknown = true;
    if (r.bound) out.bound = std::max(out.bound.value_or(0), *r.bound);
  }
  out.verdict = unknown ? Verdict::Unknown : Verdict::Confirmed;
  out.detail = "checked " + std::to_string(terms.size()) + " terms up to the size bound";
  return out;
}

inline constexpr std::size_t kDefaultTermSize = 4;

}  // namespace detail

/// CR over ground terms and their open skeletons up to max_term_size.
/// Confirmed is a bounded confirmation.
inline CheckOutcome check_cr_uniform(const Trs& R, const Fuel& fuel) {
  if (R.rules.empty()) {
    CheckOutcome out;
    out.verdict = Verdict::Confirmed;
    out.detail = "no rules: every term is a normal form";
    return out;
  }
  auto terms = detail::uniform_terms(R.signature, fuel.max_term_size.value_or(detail::kDefaultTermSize), true);
  return detail::check_each(terms, [&](const Term& t) { return check_cr_term(R, t, fuel); });
}

/// SN over ground terms up to max_term_size.
inline CheckOutcome check_sn_uniform(const Trs& R, const Fuel& fuel) {
  auto terms = enumerate_ground_terms(R.signature, fuel.max_term_size.value_or(detail::kDefaultTermSize));
  return detail::check_each(terms, [&](const Term& t) { return check_sn_term(R, t, fuel); });
}

/// WN over ground terms up to max_term_size.
inline CheckOutcome check_wn_uniform(const Trs& R, const Fuel& fuel) {
  auto terms = enumerate_ground_terms(R.signature, fuel.max_term_size.value_or(detail::kDefaultTermSize));
  return detail::check_each(terms, [&](const Term& t) { return check_wn_term(R, t, fuel); });
}

// ---------------------------------------------------------------------------
// Local confluence

/// Joins every one-step peak of the given terms.
inline CheckOutcome check_wcr_peaks(const Trs& R, const std::vector<Term>& terms, const Fuel& fuel) {
  JoinSearcher js(R, fuel.max_states);
  CheckOutcome out;
  bool unknown = false;
  for (const Term& t : terms) {
    const std::vector<Step> steps = js.successors()(t);
    ++out.explored;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      for (std::size_t j = i + 1; j < steps.size(); ++j) {
        if (steps[i].target == steps[j].target) continue;
        auto r = js.join(steps[i].target, steps[j].target, fuel.max_join_length);
        out.transcript_hash = mix(out.transcript_hash, static_cast<std::uint64_t>(r.result));
        Reduction a{t, {steps[i]}}, b{t, {steps[j]}};
        if (detail::fold_join(out, r, a, b, unknown)) {
          out.detail = "one-step peak at " + to_string(t) + " cannot be joined";
          return out;
        }
      }
    }
  }
  out.verdict = unknown ? Verdict::Unknown : Verdict::Confirmed;
  return out;
}

/// WCR. With ground_only = false every critical pair is bounded-joined;
/// otherwise one-step peaks of all ground terms up to max_term_size are.
inline CheckOutcome check_wcr(const Trs& R, const Fuel& fuel, bool ground_only) {
  if (ground_only) {
    if (R.rules.empty()) {
      CheckOutcome out;
      out.verdict = Verdict::Confirmed;
      return out;
    }
    auto terms = enumerate_ground_terms(R.signature, fuel.max_term_size.value_or(detail::kDefaultTermSize));
    return check_wcr_peaks(R, terms, fuel);
  }
  JoinSearcher js(R, fuel.max_states);
  CheckOutcome out;
  bool unknown = false;
  for (const CriticalPair& cp : critical_pairs(R)) {
    auto r = js.join(cp.left, cp.right, fuel.max_join_length);
    out.transcript_hash = mix(out.transcript_hash, static_cast<std::uint64_t>(r.result));
    ++out.explored;
    if (r.result == JoinResult::Joined) {
      out.fuel_used = std::max(out.fuel_used, r.depth_used);
      continue;
    }
    // The peak steps, recovered from the reducts of the peak.
    std::optional<Step> outer, inner;
    for (const Step& s : one_step_reducts(R, cp.peak)) {
      if (!outer && s.position.is_root() && s.rule_index == cp.rule_pair.first && s.target == cp.left) outer = s;
      if (!inner && s.position == cp.overlap_position && s.rule_index == cp.rule_pair.second &&
          s.target == cp.right) {
        inner = s;
      }
    }
    Reduction a{cp.peak, {*outer}}, b{cp.peak, {*inner}};
    if (detail::fold_join(out, r, a, b, unknown)) {
      out.detail = "critical pair <" + to_string(cp.left) + ", " + to_string(cp.right) + "> cannot be joined";
      return out;
    }
  }
  out.verdict = unknown ? Verdict::Unknown : Verdict::Confirmed;
  return out;
}

// ---------------------------------------------------------------------------
// Relative problems

/// Replays a reduction of →top at the root ∪ →base, rule indices addressing
/// top followed by base.
inline bool replays(const RelativeProblem& P, const Reduction& red) {
  Term cur = red.start;
  for (Step s : red.steps) {
    if (!(s.source == cur)) return false;
    if (s.rule_index < P.top.size()) {
      if (!s.position.is_root() || !replays(P.top, s)) return false;
    } else {
      s.rule_index -= P.top.size();
      if (!replays(P.base, s)) return false;
    }
    cur = s.target;
  }
  return true;
}

inline std::size_t root_steps(const RelativeProblem& P, const Reduction& red) {
  std::size_t k = 0;
  for (const Step& s : red.steps) k += s.rule_index < P.top.size() ? 1 : 0;
  return k;
}

namespace detail {

inline std::vector<Term> start_terms(const Signature& sig, const Fuel& fuel) {
  return enumerate_terms(sig, fuel.max_term_size.value_or(3), {Term::var("x")});
}

inline Signature joint_signature(const RelativeProblem& P) {
  Signature s = P.top.signature;
  s.merge(P.base.signature);
  return s;
}

}  // namespace detail

/// Searches for a reduction with at least `min_root_steps` root top-steps,
/// breadth-first over (term, root steps so far) within
/// max_reduction_length steps. Refuted: such a reduction exists (`cyclic`
/// when it revisits a term across a root step, which extends it forever).
/// Confirmed: the whole search space is exhausted without one.
inline CheckOutcome chain_search(const RelativeProblem& P, const std::optional<Term>& t,
                                 std::size_t min_root_steps, const Fuel& fuel) {
  if (min_root_steps == 0) throw Error("min_root_steps must be positive");
  struct Node {
    Term term;
    std::size_t roots;
    std::size_t parent;
    std::optional<Step> step;
    std::size_t depth;
  };
  struct Key {
    Term term;
    std::size_t roots;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return static_cast<std::size_t>(mix(k.term.hash(), k.roots));
    }
  };
  detail::Successors succ([&P](const Term& u) { return detail::relative_steps(P, u); });
  std::vector<Node> nodes;
  std::unordered_set<Key, KeyHash> seen;
  std::vector<Term> starts = t ? std::vector<Term>{*t} : detail::start_terms(detail::joint_signature(P), fuel);
  for (const Term& s : starts) {
    if (seen.insert(Key{s, 0}).second) nodes.push_back(Node{s, 0, 0, std::nullopt, 0});
  }
  CheckOutcome out;
  auto witness_of = [&](std::size_t i) {
    std::vector<Step> steps;
    while (nodes[i].step) {
      steps.push_back(*nodes[i].step);
      i = nodes[i].parent;
    }
    std::reverse(steps.begin(), steps.end());
    return Reduction{nodes[i].term, std::move(steps)};
  };
  bool cut = false;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Node cur = nodes[i];
    out.transcript_hash = mix(out.transcript_hash, mix(cur.term.hash(), cur.roots));
    out.fuel_used = std::max(out.fuel_used, cur.depth);
    const std::vector<Step>& steps = succ(cur.term);
    if (steps.empty()) continue;
    if (cur.depth >= fuel.max_reduction_length) {
      cut = true;
      continue;
    }
    if (nodes.size() >= fuel.max_states) {
      cut = true;
      break;
    }
    for (const Step& s : steps) {
      std::size_t roots = std::min(min_root_steps, cur.roots + (s.rule_index < P.top.size() ? 1 : 0));
      if (!seen.insert(Key{s.target, roots}).second) continue;
      nodes.push_back(Node{s.target, roots, i, s, cur.depth + 1});
      if (roots == min_root_steps) {
        Reduction w = witness_of(nodes.size() - 1);
        out.verdict = Verdict::Refuted;
        out.explored = nodes.size();
        out.fuel_used = w.length();
        // A term repeated around a root step makes the reduction extendable forever.
        std::vector<Term> ts = w.terms();
        for (std::size_t a = 0; a < ts.size() && !out.cyclic; ++a) {
          for (std::size_t b = a + 1; b < ts.size(); ++b) {
            if (!(ts[a] == ts[b])) continue;
            for (std::size_t k = a; k < b; ++k) {
              if (w.steps[k].rule_index < P.top.size()) out.cyclic = true;
            }
          }
        }
        out.witnesses.push_back(std::move(w));
        out.detail = out.cyclic ? "reduction with root steps revisits a term" : "reduction reaches the requested root steps";
        return out;
      }
    }
  }
  out.explored = nodes.size();
  if (cut) {
    out.detail = "search cut at the length bound";
  } else {
    out.verdict = Verdict::Confirmed;
    out.bound = 0;
    out.detail = "search space exhausted";
  }
  return out;
}

/// Minimality-flag check at a fixed m over enumerated start terms.
///
/// Criterion A: for each term, the least n such that every n-step
/// (root-top ∪ base) reduction meets a term with an m-step base reduction.
/// Criterion B: a cycle through base-terminating terms refutes.
/// Refuted if B finds a cycle; Confirmed if A finds n for every term;
/// Unknown otherwise. The criteria are cross-checked and a disagreement
/// throws std::logic_error.
inline CheckOutcome check_dp_min(const RelativeProblem& P, const Fuel& fuel, std::size_t m) {
  detail::Successors rel([&P](const Term& u) { return detail::relative_steps(P, u); });
  Fuel base_fuel = fuel;
  base_fuel.max_reduction_length = std::max(fuel.max_reduction_length, m);
  std::unordered_map<Term, CheckOutcome, TermHash> base_sn;
  auto sn_of = [&](const Term& u) -> const CheckOutcome& {
    auto it = base_sn.find(u);
    if (it == base_sn.end()) it = base_sn.emplace(u, check_sn_term(P.base, u, base_fuel)).first;
    return it->second;
  };
  auto base_terminating = [&](const Term& u) { return sn_of(u).verdict == Verdict::Confirmed; };
  auto uncovered = [&](const Term& u) {
    const CheckOutcome& o = sn_of(u);
    return o.verdict == Verdict::Confirmed && *o.bound < m;
  };

  CheckOutcome out;
  std::vector<Term> starts = detail::start_terms(detail::joint_signature(P), fuel);
  bool a_unknown = false;
  std::optional<Term> a_cycle_at;
  std::optional<Reduction> b_cycle;
  std::optional<Term> b_cycle_at;
  detail::LongestPath a_search(rel, uncovered, fuel.max_states);
  detail::LongestPath b_search(rel, base_terminating, fuel.max_states);
  for (const Term& t : starts) {
    // A
    if (!uncovered(t)) {
      out.term_bounds.emplace_back(t, 0);
    } else {
      std::size_t budget = fuel.max_reduction_length == 0 ? 0 : fuel.max_reduction_length - 1;
      detail::PathSearch ps = a_search.run(t, budget);
      out.explored += ps.explored;
      out.transcript_hash = mix(out.transcript_hash, ps.hash);
      if (ps.status == detail::PathStatus::Exact) {
        out.term_bounds.emplace_back(t, ps.height + 1);
        out.fuel_used = std::max(out.fuel_used, ps.height + 1);
      } else if (ps.status == detail::PathStatus::Cycle) {
        if (!a_cycle_at) a_cycle_at = t;
      } else {
        a_unknown = true;
      }
    }
    // B
    if (!b_cycle && base_terminating(t)) {
      detail::PathSearch ps = b_search.run(t, fuel.max_reduction_length);
      out.transcript_hash = mix(out.transcript_hash, ps.hash);
      if (ps.status == detail::PathStatus::Cycle) {
        b_cycle = ps.cycle;
        b_cycle_at = t;
      }
    }
  }
  if (a_cycle_at && !b_cycle) {
    throw std::logic_error("minimality criteria disagree: cycle of uncovered terms from " +
                           to_string(*a_cycle_at) + " but no cycle through terminating terms");
  }
  if (b_cycle) {
    bool all_uncovered = true;
    for (const Term& u : b_cycle->terms()) all_uncovered = all_uncovered && uncovered(u);
    bool a_settled_start = false;
    for (const auto& [u, n] : out.term_bounds) a_settled_start = a_settled_start || u == *b_cycle_at;
    if (all_uncovered && a_settled_start) {
      throw std::logic_error("minimality criteria disagree: bound found for " + to_string(*b_cycle_at) +
                             " despite a cycle of uncovered terms");
    }
    out.verdict = Verdict::Refuted;
    out.fuel_used = std::max(out.fuel_used, b_cycle->length());
    out.witnesses.push_back(*b_cycle);
    out.detail = "cycle through base-terminating terms from " + to_string(*b_cycle_at);
    out.term_bounds.clear();
    return out;
  }
  if (!a_unknown && !a_cycle_at) {
    out.verdict = Verdict::Confirmed;
    std::size_t n = 0;
    for (const auto& tb : out.term_bounds) n = std::max(n, tb.second);
    out.bound = n;
    out.detail = "bound found for all " + std::to_string(starts.size()) + " enumerated terms at m = " +
                 std::to_string(m);
  } else {
    out.detail = "some enumerated term has no bound within fuel";
  }
  return out;
}

}  // namespace trsw
