#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <random>

#include "trsw/format.hpp"
#include "trsw/random.hpp"
#include "trsw/term.hpp"

using namespace trsw;

namespace {

Term P(const std::string& s) { return parse_term(s, {"x", "y", "z", "x1", "x2"}); }

// Independent unifier oracle: every assignment of the variables to ground
// terms from a fixed pool.
std::vector<std::map<std::string, Term>> ground_unifiers(const Term& s, const Term& t,
                                                         const std::vector<Term>& pool) {
  std::set<std::string> vs = vars(s);
  for (const auto& v : vars(t)) vs.insert(v);
  std::vector<std::string> names(vs.begin(), vs.end());
  std::vector<std::map<std::string, Term>> found;
  std::map<std::string, Term> cur;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == names.size()) {
      Substitution sub;
      for (const auto& [x, u] : cur) sub.bind(x, u);
      if (sub.apply(s) == sub.apply(t)) found.push_back(cur);
      return;
    }
    for (const Term& u : pool) {
      cur.insert_or_assign(names[i], u);
      go(i + 1);
    }
  };
  go(0);
  return found;
}

}  // namespace

TEST(Term, StructuralEqualityAndHash) {
  Term a = P("f(x,g(a))"), b = P("f(x,g(a))");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_NE(P("f(x,g(a))"), P("f(y,g(a))"));
  EXPECT_NE(Term::var("a"), Term::app("a"));
  EXPECT_EQ(a.size(), 4u);
  EXPECT_EQ(a.depth(), 2u);  // leaves have depth 0
}

TEST(Term, Positions) {
  EXPECT_EQ(positions(P("x")), std::vector<Position>{Position{}});
  std::vector<Position> want = {Position{}, Position{1}, Position{2}, Position{2, 1}};
  EXPECT_EQ(positions(P("f(x,g(y))")), want);
  EXPECT_EQ(positions(P("t")), std::vector<Position>{Position{}});
}

TEST(Term, PositionCountEqualsSize) {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    Term t = detail::random_term(rng, 1 + draw(rng, 12), {"x", "y"}, true);
    auto ps = positions(t);
    EXPECT_EQ(ps.size(), t.size());
    EXPECT_TRUE(std::is_sorted(ps.begin(), ps.end()));
  }
}

TEST(Term, SubtermAt) {
  EXPECT_EQ(subterm_at(P("f(a,b)"), Position{2}), P("b"));
  Term t = P("f(x,g(y))");
  EXPECT_EQ(subterm_at(t, Position{}), t);
  EXPECT_EQ(subterm_at(P("q(t,S(t))"), Position{2, 1}), P("t"));
  EXPECT_THROW(subterm_at(P("f(a,b)"), Position{3}), InvalidPosition);
  EXPECT_THROW(subterm_at(P("a"), Position{1}), InvalidPosition);
}

TEST(Term, ReplaceAt) {
  EXPECT_EQ(replace_at(P("f(a)"), Position{1}, P("b")), P("f(b)"));
  EXPECT_EQ(replace_at(P("g(a)"), Position{}, P("b")), P("b"));
  EXPECT_EQ(replace_at(P("c(ok(x))"), Position{1}, P("pickn")), P("c(pickn)"));
  EXPECT_THROW(replace_at(P("f(a)"), Position{2}, P("b")), InvalidPosition);
}

TEST(Term, ReplaceThenReadBack) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    Term t = detail::random_term(rng, 1 + draw(rng, 10), {"x"}, true);
    Term s = detail::random_term(rng, 1 + draw(rng, 4), {"y"}, true);
    auto ps = positions(t);
    const Position& p = ps[draw(rng, ps.size())];
    Term r = replace_at(t, p, s);
    EXPECT_EQ(subterm_at(r, p), s);
    EXPECT_EQ(replace_at(r, p, subterm_at(t, p)), t);
    EXPECT_EQ(fill(context_at(t, p), subterm_at(t, p)), t);
  }
}

TEST(Term, ApplySubstitution) {
  Substitution s{{"x", P("t")}};
  EXPECT_EQ(s.apply(P("q(x,f(y))")), P("q(t,f(y))"));
  EXPECT_EQ(Substitution{}.apply(P("f(x,y)")), P("f(x,y)"));
  Substitution r{{"x", P("S(x)")}};
  EXPECT_EQ(apply_subst(r, P("run(x)")), P("run(S(x))"));
}

TEST(Term, Match) {
  auto m = match(P("q(x,f(y))"), P("q(t,f(t))"));
  ASSERT_TRUE(m);
  EXPECT_EQ(*m->lookup("x"), P("t"));
  EXPECT_EQ(*m->lookup("y"), P("t"));
  EXPECT_FALSE(match(P("f(x,x)"), P("f(a,b)")));
  auto e = match(P("run"), P("run"));
  ASSERT_TRUE(e);
  EXPECT_TRUE(e->empty());
}

TEST(Term, MatchAppliesBack) {
  Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    Term pat = detail::random_term(rng, 1 + draw(rng, 5), {"x", "y"}, true);
    Substitution sub;
    for (const auto& x : vars(pat)) sub.bind(x, detail::random_term(rng, 1 + draw(rng, 3), {}, false));
    Term subj = sub.apply(pat);
    auto m = match(pat, subj);
    ASSERT_TRUE(m);
    EXPECT_EQ(m->apply(pat), subj);
  }
}

TEST(Term, UnifyExamples) {
  auto e = unify(P("run"), P("run"));
  ASSERT_TRUE(e);
  EXPECT_TRUE(e->empty());
  auto u = unify(P("f(x)"), P("f(g(y))"));
  ASSERT_TRUE(u);
  EXPECT_EQ(u->size(), 1u);
  EXPECT_EQ(*u->lookup("x"), P("g(y)"));
  EXPECT_FALSE(unify(P("x"), P("f(x)")));
  EXPECT_FALSE(unify(P("f(a,x)"), P("f(b,y)")));
}

TEST(Term, UnifyAgreesWithBruteForce) {
  Rng rng(2024);
  std::vector<Term> pool = enumerate_ground_terms(Signature{{"a", 0}, {"b", 0}, {"g", 1}, {"f", 2}}, 3);
  int unifiable = 0;
  for (int i = 0; i < 300; ++i) {
    Term s = detail::random_term(rng, 1 + draw(rng, 4), {"x", "y"}, true);
    Term t = detail::random_term(rng, 1 + draw(rng, 4), {"x", "z"}, true);
    auto mgu = unify(s, t);
    auto ground = ground_unifiers(s, t, pool);
    if (!ground.empty()) EXPECT_TRUE(mgu) << to_string(s) << " =? " << to_string(t);
    if (!mgu) continue;
    ++unifiable;
    EXPECT_EQ(mgu->apply(s), mgu->apply(t));
    // Idempotent.
    for (const auto& [x, u] : mgu->bindings()) EXPECT_EQ(mgu->apply(u), u);
    // Most general: each ground unifier θ satisfies θ∘σ = θ.
    for (const auto& g : ground) {
      Substitution theta;
      for (const auto& [x, u] : g) theta.bind(x, u);
      for (const auto& [x, u] : g) EXPECT_EQ(theta.apply(mgu->apply(Term::var(x))), u);
    }
  }
  EXPECT_GT(unifiable, 30);
}

TEST(Term, RenameApart) {
  Term r = rename_apart(P("f(x)"), {"x"});
  EXPECT_FALSE(vars(r).count("x"));
  EXPECT_EQ(r, parse_term("f(x_1)", {"x_1"}));
  EXPECT_EQ(rename_apart(P("f(x)"), {}), P("f(x)"));
  Term g = rename_apart(parse_term("g(x,y)", {"x", "y"}), {"x", "y"});
  auto vs = vars(g);
  EXPECT_EQ(vs.size(), 2u);
  EXPECT_FALSE(vs.count("x"));
  EXPECT_FALSE(vs.count("y"));
}

TEST(Term, Groundness) {
  EXPECT_TRUE(is_ground(P("q(t,t)")));
  EXPECT_FALSE(is_ground(P("run(x)")));
  EXPECT_TRUE(is_ground(P("T")));
  EXPECT_TRUE(is_linear(P("f(x,y)")));
  EXPECT_FALSE(is_linear(P("f(x,x)")));
}

TEST(Term, SignatureArity) {
  Signature sig;
  sig.add("f", 2);
  EXPECT_THROW(sig.add("f", 1), ArityMismatch);
  EXPECT_NO_THROW(check_well_formed(sig, P("f(x,y)")));
  EXPECT_THROW(check_well_formed(sig, P("f(x)")), ArityMismatch);
}

TEST(Term, ContextHole) {
  Term t = P("f(a,g(b))");
  Term c = context_at(t, Position{2, 1});
  EXPECT_EQ(fill(c, P("x")), P("f(a,g(x))"));
}
