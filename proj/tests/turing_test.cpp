#include <gtest/gtest.h>

#include <map>

#include "trsw/random.hpp"
#include "trsw/turing.hpp"

using namespace trsw;

namespace {

// Array-backed simulator used as an oracle for tm_step/tm_run.
struct ArrayTape {
  std::map<long, std::string> cells;
  long head = 0;
  std::string state;
};

ArrayTape to_array(const Configuration& c) {
  ArrayTape a;
  a.state = c.state;
  for (std::size_t i = 0; i < c.left.size(); ++i) a.cells[-1 - static_cast<long>(i)] = c.left[i];
  for (std::size_t i = 0; i < c.right.size(); ++i) a.cells[static_cast<long>(i)] = c.right[i];
  return a;
}

Configuration from_array(const ArrayTape& a, const std::string& blank) {
  Configuration c;
  c.state = a.state;
  long lo = a.head, hi = a.head;
  for (const auto& [k, v] : a.cells) {
    if (v == blank) continue;
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  auto at = [&](long k) {
    auto it = a.cells.find(k);
    return it == a.cells.end() ? blank : it->second;
  };
  for (long k = a.head - 1; k >= lo; --k) c.left.push_back(at(k));
  for (long k = a.head; k <= hi; ++k) c.right.push_back(at(k));
  return canonical(std::move(c), blank);
}

bool array_step(const TuringMachine& M, ArrayTape& a) {
  auto it = a.cells.find(a.head);
  std::string read = it == a.cells.end() ? M.blank() : it->second;
  const Transition* t = M.transition(a.state, read);
  if (!t) return false;
  a.cells[a.head] = t->write;
  a.head += t->move == Move::Right ? 1 : -1;
  a.state = t->state;
  return true;
}

}  // namespace

TEST(Turing, StepRightWritesAndMoves) {
  TuringMachine M({"q0"}, {"B", "a"}, "B", "q0");
  M.add_transition("q0", "B", "q0", "a", Move::Right);
  auto next = tm_step(M, Configuration{"q0", {}, {}});
  ASSERT_TRUE(next);
  EXPECT_EQ(*next, (Configuration{"q0", {"a"}, {}}));
}

TEST(Turing, StepLeftCanonicalizes) {
  TuringMachine M({"q0", "q1"}, {"B", "a", "b"}, "B", "q0");
  M.add_transition("q0", "a", "q1", "b", Move::Left);
  auto next = tm_step(M, Configuration{"q0", {}, {"a"}});
  ASSERT_TRUE(next);
  EXPECT_EQ(*next, (Configuration{"q1", {}, {"B", "b"}}));
  EXPECT_EQ(scanned(*next, "B"), "B");
}

TEST(Turing, EmptyDelta) {
  TuringMachine M = empty_machine();
  Configuration c{"q0", {"S"}, {"0", "S"}};
  EXPECT_FALSE(tm_step(M, c));
  RunResult r = tm_run(M, c, 100);
  EXPECT_TRUE(r.halted());
  EXPECT_EQ(r.steps, 0u);
  EXPECT_EQ(r.config, c);
}

TEST(Turing, RightMoverRuns) {
  RunResult r = tm_run(right_mover(), Configuration{"q0", {}, {}}, 10);
  EXPECT_FALSE(r.halted());
  EXPECT_EQ(r.steps, 10u);
  RunResult z = tm_run(right_mover(), Configuration{"q0", {}, {}}, 0);
  EXPECT_FALSE(z.halted());
  EXPECT_EQ(z.config, (Configuration{"q0", {}, {}}));
}

TEST(Turing, InitialConfigurations) {
  TuringMachine M = empty_machine();
  EXPECT_EQ(initial_config_fun(M, 0), (Configuration{"q0", {}, {"0"}}));
  EXPECT_EQ(initial_config_fun(M, 1), (Configuration{"q0", {}, {"S", "0"}}));
  EXPECT_EQ(initial_config_fun(M, 2), (Configuration{"q0", {}, {"S", "S", "0"}}));
  EXPECT_EQ(initial_config_rel(M, 2, 1), (Configuration{"q0", {"S", "S", "0"}, {"S", "0"}}));
}

TEST(Turing, ComputedFunction) {
  for (std::size_t n = 0; n < 6; ++n) {
    EXPECT_EQ(tm_compute_fun(empty_machine(), n, 10), (FunResult{FunStatus::Value, n}));
    EXPECT_EQ(tm_compute_fun(successor_machine(), n, 50), (FunResult{FunStatus::Value, n + 1}));
  }
  // Halts scanning blank.
  TuringMachine M({"q0", "h"}, {"B", "S", "0"}, "B", "q0", std::string("S"), std::string("0"));
  M.add_transition("q0", "S", "h", "S", Move::Left);
  M.add_transition("q0", "0", "h", "0", Move::Left);
  EXPECT_EQ(tm_compute_fun(M, 2, 10).status, FunStatus::Undefined);
  EXPECT_EQ(tm_compute_fun(right_mover(), 2, 10).status, FunStatus::OutOfFuel);
}

TEST(Turing, Relation) {
  for (std::size_t n = 0; n < 4; ++n) {
    EXPECT_EQ(tm_relation(empty_machine(), n, 0, 10), RelationResult::Holds);
    EXPECT_EQ(tm_relation(empty_machine(), n, 1, 10), RelationResult::Fails);
  }
  EXPECT_EQ(tm_relation(rel_succ_machine(), 2, 3, 500), RelationResult::Holds);
  EXPECT_EQ(tm_relation(rel_succ_machine(), 2, 2, 500), RelationResult::Fails);
}

TEST(Turing, RelSuccIsTheSuccessorRelation) {
  for (std::size_t n = 0; n <= 6; ++n) {
    for (std::size_t m = 0; m <= 8; ++m) {
      EXPECT_EQ(tm_relation(rel_succ_machine(), n, m, 2000),
                m == n + 1 ? RelationResult::Holds : RelationResult::Fails)
          << n << " " << m;
    }
  }
}

TEST(Turing, NeverRelatesMachine) {
  for (std::size_t n = 0; n <= 5; ++n) {
    for (std::size_t m = 0; m <= 5; ++m) {
      EXPECT_NE(tm_relation(never_relates_machine(), n, m, 100), RelationResult::Holds);
    }
  }
}

TEST(Turing, AgreesWithArraySimulator) {
  Rng rng(1000);
  for (int i = 0; i < 1000; ++i) {
    TuringMachine M = random_machine(rng);
    Configuration c = random_config(rng, M);
    ArrayTape a = to_array(c);
    for (int k = 0; k < 30; ++k) {
      auto next = tm_step(M, c);
      bool moved = array_step(M, a);
      ASSERT_EQ(next.has_value(), moved);
      if (!moved) break;
      c = *next;
      ASSERT_EQ(c, from_array(a, M.blank()));
    }
  }
}

TEST(Turing, ConfigurationText) {
  TuringMachine M = empty_machine();
  Configuration c{"q0", {"S", "0"}, {"S", "S", "0"}};
  EXPECT_EQ(to_string(c), "0 S q0 S S 0");
  EXPECT_EQ(parse_configuration(M, "0 S q0 S S 0"), c);
  EXPECT_THROW(parse_configuration(M, "S S"), Error);
  EXPECT_THROW(parse_configuration(M, "q0 X"), Error);
}

TEST(Turing, MachineValidation) {
  EXPECT_THROW(TuringMachine({"q0"}, {"B"}, "B", "q1"), Error);
  EXPECT_THROW(TuringMachine({"q0"}, {"a"}, "B", "q0"), Error);
  EXPECT_THROW(TuringMachine({"q0", "B"}, {"B"}, "B", "q0"), Error);
  TuringMachine M({"q0"}, {"B"}, "B", "q0");
  M.add_transition("q0", "B", "q0", "B", Move::Right);
  EXPECT_THROW(M.add_transition("q0", "B", "q0", "B", Move::Left), Error);
  EXPECT_THROW(M.succ_symbol(), MissingDesignatedSymbols);
}
