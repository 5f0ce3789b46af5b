#include <gtest/gtest.h>

#include <algorithm>

#include "trsw/checkers.hpp"
#include "trsw/encodings.hpp"
#include "trsw/format.hpp"
#include "trsw/random.hpp"

using namespace trsw;

namespace {

std::pair<Term, Term> ordered(const Term& a, const Term& b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

Term P(const std::string& s) { return parse_term(s, {"x", "y"}); }

std::vector<Term> targets(const std::vector<Step>& steps) {
  std::vector<Term> out;
  for (const Step& s : steps) out.push_back(s.target);
  std::sort(out.begin(), out.end());
  return out;
}

Term S_pow(std::size_t n, Term t) {
  for (std::size_t i = 0; i < n; ++i) t = Term::app("S", {t});
  return t;
}

// Rule schemas written out directly from δ, as strings.
std::set<std::string> instantiate(const TuringMachine& M) {
  std::set<std::string> out;
  const std::string B = M.blank();
  for (const auto& [key, tr] : M.delta()) {
    const auto& [q, f] = key;
    const std::string& p = tr.state;
    const std::string& w = tr.write;
    if (tr.move == Move::Right) {
      if (f != B) {
        out.insert(q + "(x," + f + "(y)) -> " + p + "(" + w + "(x),y)");
      } else {
        out.insert(q + "(x," + B + "(y)) -> " + p + "(" + w + "(x),y)");
        out.insert(q + "(x,t) -> " + p + "(" + w + "(x),t)");
      }
      continue;
    }
    std::vector<std::string> rights = {f + "(y)"};
    if (f == B) rights.push_back("t");
    for (const std::string& r : rights) {
      std::string rest = r == "t" ? "t" : "y";
      for (const std::string& g : M.alphabet()) {
        out.insert(q + "(" + g + "(x)," + r + ") -> " + p + "(x," + g + "(" + w + "(" + rest + ")))");
      }
      out.insert(q + "(t," + r + ") -> " + p + "(t," + B + "(" + w + "(" + rest + ")))");
    }
  }
  return out;
}

std::set<std::string> rule_strings(const Trs& R) {
  std::set<std::string> out;
  for (const Rule& r : R.rules) out.insert(to_string(r));
  return out;
}

// One pass over each rhs: every defined-rooted subterm gives a pair.
std::set<std::string> pairs_oracle(const Trs& R) {
  std::set<std::string> defined;
  for (const Rule& r : R.rules) defined.insert(r.lhs.name());
  std::set<std::string> out;
  std::function<void(const Term&, const Term&)> scan = [&](const Term& lhs, const Term& u) {
    if (u.is_var()) return;
    if (defined.count(u.name())) {
      std::string l = to_string(lhs), r = to_string(u);
      out.insert(l.insert(lhs.name().size(), "♯") + " -> " + r.insert(u.name().size(), "♯"));
    }
    for (const Term& a : u.args()) scan(lhs, a);
  };
  for (const Rule& r : R.rules) scan(r.lhs, r.rhs);
  return out;
}

std::size_t shortest(const Trs& R, const Term& from, const Term& to, std::size_t max_depth) {
  ::trsw::detail::Successors succ(R);
  ::trsw::detail::Reach reach(from);
  while (!reach.depth_of(to) && reach.levels() < max_depth && reach.grow(succ)) {
  }
  auto d = reach.depth_of(to);
  return d ? *d : SIZE_MAX;
}

}  // namespace

TEST(Tmtrs, SingleRightMoveOnBlank) {
  TuringMachine M({"q0"}, {"B", "a"}, "B", "q0");
  M.add_transition("q0", "B", "q0", "a", Move::Right);
  Trs R = tm_to_trs(M);
  EXPECT_EQ(rule_strings(R), (std::set<std::string>{"q0(x,B(y)) -> q0(a(x),y)", "q0(x,t) -> q0(a(x),t)"}));
}

TEST(Tmtrs, EmptyDeltaHasNoRules) { EXPECT_EQ(tm_to_trs(empty_machine()).size(), 0u); }

TEST(Tmtrs, MatchesSchemaInstantiation) {
  Rng rng(50);
  for (int i = 0; i < 50; ++i) {
    TuringMachine M = random_machine(rng, MachineShape{4, 3, 70, i % 3 == 0});
    Trs R = tm_to_trs(M);
    std::set<std::string> want = instantiate(M);
    EXPECT_EQ(rule_strings(R), want);
    EXPECT_EQ(R.size(), want.size());
    // Count formula: right 1 (2 on blank), left |Γ|+1 (twice that on blank).
    std::size_t count = 0, gamma = M.alphabet().size();
    for (const auto& [key, tr] : M.delta()) {
      std::size_t k = tr.move == Move::Right ? 1 : gamma + 1;
      count += key.second == M.blank() ? 2 * k : k;
    }
    EXPECT_EQ(R.size(), count);
  }
}

TEST(Tmtrs, TapeDecoding) {
  TuringMachine M({"q"}, {"B", "a", "b"}, "B", "q");
  EXPECT_TRUE(phi(M, P("t")).empty());
  EXPECT_EQ(phi(M, P("a(b(t))")), (std::vector<std::string>{"a", "b"}));
  EXPECT_THROW(phi(M, P("q(t,t)")), NotATapeTerm);
  EXPECT_EQ(interpret(M, P("q(t,t)")), (Configuration{"q", {}, {}}));
  EXPECT_EQ(interpret(M, P("q(a(t),b(t))")), (Configuration{"q", {"a"}, {"b"}}));
  EXPECT_EQ(interpret(M, P("q(B(t),t)")), (Configuration{"q", {}, {}}));
  EXPECT_THROW(interpret(M, P("a(t)")), NotAMachineTerm);
  EXPECT_EQ(encode_config(M, Configuration{"q", {}, {}}), P("q(t,t)"));
  EXPECT_EQ(encode_config(M, Configuration{"q", {"a"}, {"b"}}), P("q(a(t),b(t))"));
}

TEST(Tmtrs, EncodeInterpretRoundTrip) {
  Rng rng(1000);
  for (int i = 0; i < 1000; ++i) {
    TuringMachine M = random_machine(rng);
    Configuration c = random_config(rng, M, 6);
    EXPECT_EQ(interpret(M, encode_config(M, c)), c);
  }
}

TEST(Tmtrs, ReservedNamesClash) {
  TuringMachine M({"run"}, {"B", "S", "0"}, "B", "run", std::string("S"), std::string("0"));
  EXPECT_THROW(build_wcr_trs(M), SignatureClash);
  TuringMachine N({"q0"}, {"B", "t"}, "B", "q0");
  EXPECT_THROW(tm_to_trs(N), SignatureClash);
}

TEST(ConfluenceGadget, RunReducts) {
  EncodedSystem S = build_confluence_trs(successor_machine());
  EXPECT_EQ(targets(one_step_reducts(S.trs, P("run(t,S(t))"))),
            (std::vector<Term>{P("q0(t,S(t))"), P("run(S(t),t)")}));
  for (std::size_t n = 0; n < 6; ++n) {
    auto red = one_step_reducts(S.trs, Term::app("run", {S_pow(n, P("t")), P("t")}));
    EXPECT_TRUE(std::any_of(red.begin(), red.end(), [](const Step& s) { return s.target == Term::app("T"); }));
  }
  EXPECT_EQ(shortest(S.trs, P("run(t,S(S(S(t))))"), P("T"), 10), 4u);
}

TEST(ConfluenceGadget, EmptyDeltaJoinsThroughHaltRules) {
  EncodedSystem S = build_confluence_trs(empty_machine());
  Fuel f;
  f.max_join_length = 5;
  JoinSearcher js(S.trs);
  EXPECT_EQ(js.join(P("q0(t,S(t))"), P("T"), 5).result, JoinResult::Joined);
  f.max_term_size = 3;
  EXPECT_NE(check_cr_term(S.trs, P("run(t,S(t))"), f).verdict, Verdict::Refuted);
}

TEST(CrSingleGadget, RunReducts) {
  EncodedSystem S = build_cr_single_trs(successor_machine());
  ASSERT_TRUE(S.designated);
  EXPECT_EQ(*S.designated, P("run(t)"));
  EXPECT_EQ(targets(one_step_reducts(S.trs, P("run(t)"))), (std::vector<Term>{P("T"), P("q0(t,t)"), P("run(S(t))")}));
  EXPECT_EQ(shortest(S.trs, P("run(S(t))"), P("q0(t,S(t))"), 2), 1u);
}

TEST(CrSingleGadget, HaltingMachineIsConfluentOnDesignatedTerm) {
  EncodedSystem S = build_cr_single_trs(successor_machine());
  Fuel f;
  f.max_peak_depth = 3;
  f.max_join_length = 20;
  CheckOutcome o = check_cr_term(S.trs, *S.designated, f);
  EXPECT_EQ(o.verdict, Verdict::Confirmed);
}

TEST(WcrGadget, OnlyCriticalPairOfRunRules) {
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    TuringMachine M = random_machine(rng);
    EncodedSystem S = build_wcr_trs(M);
    ASSERT_TRUE(S.designated);
    EXPECT_EQ(*S.designated, P("run"));
    std::set<std::pair<Term, Term>> pairs;
    for (const auto& cp : critical_pairs(S.trs)) pairs.insert(ordered(cp.left, cp.right));
    ASSERT_EQ(pairs.size(), 1u);
    EXPECT_EQ(*pairs.begin(), ordered(P("T"), Term::app("q0", {P("t"), P("t")})));
  }
}

TEST(WcrGadget, EmptyDeltaPairJoins) {
  EncodedSystem S = build_wcr_trs(empty_machine());
  JoinSearcher js(S.trs);
  auto r = js.join(P("T"), P("q0(t,t)"), 5);
  EXPECT_EQ(r.result, JoinResult::Joined);
  EXPECT_EQ(r.depth_used, 1u);
}

TEST(WcrGadget, OneStepHaltMachineJoins) {
  TuringMachine M({"q0", "h"}, {"B", "a"}, "B", "q0");
  M.add_transition("q0", "B", "h", "a", Move::Right);
  EncodedSystem S = build_wcr_trs(M);
  JoinSearcher js(S.trs);
  auto r = js.join(P("T"), P("q0(t,t)"), 10);
  ASSERT_EQ(r.result, JoinResult::Joined);
  // q0(t,t) -> h(a(t),t) -> T
  EXPECT_EQ(r.right_leg->length(), 2u);
}

TEST(GrwcrGadget, CatchAllIsDisjointFromMachineRules) {
  Rng rng(12);
  for (int i = 0; i < 20; ++i) {
    TuringMachine M = random_machine(rng, MachineShape{3, 3, 60, false});
    EncodedSystem S = build_grwcr_trs(M);
    Trs base = tm_to_trs(M);
    std::size_t catch_all = 0;
    for (std::size_t k = base.size() + 2; k < S.trs.size(); ++k) {
      ++catch_all;
      Term l = S.trs[k].lhs;
      for (const Rule& r : base.rules) {
        Term renamed = rename_apart(r.lhs, vars(l));
        EXPECT_FALSE(unify(l, renamed)) << to_string(l) << " vs " << to_string(r.lhs);
      }
    }
    EXPECT_GT(catch_all, 0u);
  }
}

TEST(GrwcrGadget, UndefinedStateGetsEveryHeadPair) {
  TuringMachine M = empty_machine();
  EncodedSystem S = build_grwcr_trs(M);
  // Machine signature t, B, S, 0, q0 plus run/2 and T.
  std::size_t symbols = 7;
  EXPECT_EQ(S.trs.size(), 2 + symbols * symbols);
}

TEST(Pebbled, RulesWrapRightHandSides) {
  TuringMachine M({"q0"}, {"B", "S", "0"}, "B", "q0", std::string("S"), std::string("0"));
  M.add_transition("q0", "B", "q0", "S", Move::Right);
  Trs R = tm_to_pebbled_trs(M);
  auto rules = rule_strings(R);
  EXPECT_TRUE(rules.count("q0(x,B(y)) -> pebble(q0(S(x),y))"));
  EXPECT_TRUE(rules.count("q0(x,0(y)) -> T"));
  EXPECT_EQ(std::count_if(R.rules.begin(), R.rules.end(),
                          [](const Rule& r) { return to_string(r) == "pebble(T) -> T"; }),
            1);
}

TEST(Pebbled, NonHaltingRunHasFewRootSteps) {
  Trs R = tm_to_pebbled_trs(right_mover());
  for (const Reduction& red : all_reductions_up_to(R, P("q0(t,t)"), 30)) {
    std::size_t roots = 0;
    for (const Step& s : red.steps) roots += s.position.is_root() ? 1 : 0;
    EXPECT_LE(roots, 1u);
  }
}

TEST(Pickn, ThreeRules) { EXPECT_EQ(pickn_trs().size(), 3u); }

TEST(DpGadget, DesignatedTerm) {
  RelativeProblem P_ = build_dp_gadget(rel_succ_machine());
  ASSERT_TRUE(P_.designated);
  EXPECT_EQ(*P_.designated, P("run(T,pickn,pickn)"));
}

TEST(DependencyPairs, Examples) {
  auto self = dependency_pairs(validate_trs({Rule{P("f(x)"), P("f(x)")}}));
  EXPECT_EQ(rule_strings(self.top), std::set<std::string>{"f♯(x) -> f♯(x)"});
  EXPECT_EQ(dependency_pairs(validate_trs({Rule{P("a"), P("b")}})).top.size(), 0u);
  auto pk = dependency_pairs(pickn_trs());
  EXPECT_EQ(rule_strings(pk.top), (std::set<std::string>{"pickn♯ -> pickn♯", "pickn♯ -> c♯(pickn)"}));
  EXPECT_EQ(pk.base.size(), 3u);
}

TEST(DependencyPairs, MatchOnePassExtractor) {
  Rng rng(77);
  for (int i = 0; i < 200; ++i) {
    Trs R = random_trs(rng);
    EXPECT_EQ(rule_strings(dependency_pairs(R).top), pairs_oracle(R));
  }
}
