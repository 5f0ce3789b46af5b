// Seeded generators for machines, configurations and small TRSs, plus a few
// hand-built machines with known behaviour.
#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "trsw/term.hpp"
#include "trsw/trs.hpp"
#include "trsw/turing.hpp"

namespace trsw {

using Rng = std::mt19937_64;

/// Uniform draw from [0, n). Plain modulo keeps sequences identical across
/// standard libraries, unlike std::uniform_int_distribution.
inline std::size_t draw(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

inline bool coin(Rng& rng, std::size_t percent) { return draw(rng, 100) < percent; }

struct MachineShape {
  std::size_t max_states = 4;
  std::size_t max_symbols = 3;
  /// Probability (percent) that δ is defined on a (state, symbol) pair.
  std::size_t defined_percent = 70;
  /// Use the alphabet {B, S, 0} with S and 0 designated.
  bool designated = false;
};

inline TuringMachine random_machine(Rng& rng, const MachineShape& shape = {}) {
  std::size_t nq = 1 + draw(rng, shape.max_states);
  std::vector<std::string> states;
  for (std::size_t i = 0; i < nq; ++i) states.push_back("q" + std::to_string(i));
  std::vector<std::string> alphabet;
  if (shape.designated) {
    alphabet = {"B", "S", "0"};
  } else {
    static const char* names[] = {"B", "a", "b", "c0", "d0"};
    std::size_t na = 1 + draw(rng, shape.max_symbols);
    for (std::size_t i = 0; i < na && i < 5; ++i) alphabet.push_back(names[i]);
  }
  TuringMachine M = shape.designated
                        ? TuringMachine(states, alphabet, "B", "q0", std::string("S"), std::string("0"))
                        : TuringMachine(states, alphabet, "B", "q0");
  for (const std::string& q : states) {
    for (const std::string& f : alphabet) {
      if (!coin(rng, shape.defined_percent)) continue;
      M.add_transition(q, f, states[draw(rng, nq)], alphabet[draw(rng, alphabet.size())],
                       coin(rng, 50) ? Move::Left : Move::Right);
    }
  }
  return M;
}

inline std::vector<std::string> random_word(Rng& rng, const TuringMachine& M, std::size_t max_len) {
  std::vector<std::string> w(draw(rng, max_len + 1));
  for (auto& a : w) a = M.alphabet()[draw(rng, M.alphabet().size())];
  return w;
}

inline Configuration random_config(Rng& rng, const TuringMachine& M, std::size_t max_len = 4) {
  Configuration c;
  c.state = M.states()[draw(rng, M.states().size())];
  c.left = random_word(rng, M, max_len);
  c.right = random_word(rng, M, max_len);
  return canonical(std::move(c), M.blank());
}

// ---------------------------------------------------------------------------
// Random TRSs over {a/0, b/0, g/1, f/2}

struct TrsShape {
  std::size_t max_rules = 4;
  std::size_t max_lhs_size = 3;
  std::size_t max_rhs_size = 3;
};

inline Signature small_signature() { return Signature{{"a", 0}, {"b", 0}, {"g", 1}, {"f", 2}}; }

namespace detail {

/// A random term of at most `size` nodes; leaves are drawn from constants
/// and `vars`.
inline Term random_term(Rng& rng, std::size_t size, const std::vector<std::string>& vars,
                        bool allow_var_root) {
  static const std::pair<const char*, std::size_t> syms[] = {{"a", 0}, {"b", 0}, {"g", 1}, {"f", 2}};
  std::vector<std::pair<const char*, std::size_t>> options;
  for (const auto& s : syms) {
    if (s.second + 1 <= size) options.push_back(s);
  }
  std::size_t choices = options.size() + (allow_var_root ? vars.size() : 0);
  std::size_t k = draw(rng, choices);
  if (k >= options.size()) return Term::var(vars[k - options.size()]);
  auto [name, arity] = options[k];
  std::vector<Term> args;
  std::size_t budget = size - 1;
  for (std::size_t i = 0; i < arity; ++i) {
    std::size_t rest = arity - i - 1;
    std::size_t give = 1 + draw(rng, budget - rest);
    args.push_back(random_term(rng, give, vars, true));
    budget -= give;
  }
  return Term::app(name, std::move(args));
}

}  // namespace detail

/// 1 to max_rules rules; left-hand sides are non-variable terms over x, y;
/// right-hand sides only use variables of their left-hand side.
inline Trs random_trs(Rng& rng, const TrsShape& shape = {}) {
  std::size_t n = 1 + draw(rng, shape.max_rules);
  std::vector<Rule> rules;
  for (std::size_t i = 0; i < n; ++i) {
    Term lhs = detail::random_term(rng, 1 + draw(rng, shape.max_lhs_size), {"x", "y"}, false);
    std::set<std::string> lv = vars(lhs);
    std::vector<std::string> allowed(lv.begin(), lv.end());
    Term rhs = detail::random_term(rng, 1 + draw(rng, shape.max_rhs_size), allowed, !allowed.empty());
    rules.push_back(Rule{std::move(lhs), std::move(rhs)});
  }
  return validate_trs(small_signature(), std::move(rules));
}

// ---------------------------------------------------------------------------
// Known machines

/// δ = ∅ over {B, S, 0}.
inline TuringMachine empty_machine() {
  return TuringMachine({"q0"}, {"B", "S", "0"}, "B", "q0", std::string("S"), std::string("0"));
}

/// Walks right forever: δ(q0, f) = (q0, f, R) for every f.
inline TuringMachine right_mover() {
  TuringMachine M({"q0"}, {"B", "S", "0"}, "B", "q0", std::string("S"), std::string("0"));
  for (const char* f : {"B", "S", "0"}) M.add_transition("q0", f, "q0", f, Move::Right);
  return M;
}

/// Prepends one S to S^n 0 and halts on it, so f(n) = n + 1.
inline TuringMachine successor_machine() {
  TuringMachine M({"q0", "q1", "q2", "h"}, {"B", "S", "0"}, "B", "q0", std::string("S"),
                  std::string("0"));
  M.add_transition("q0", "S", "q1", "S", Move::Left);
  M.add_transition("q0", "0", "q1", "0", Move::Left);
  M.add_transition("q1", "B", "q2", "S", Move::Left);
  M.add_transition("q2", "B", "h", "B", Move::Right);
  return M;
}

/// n ↝ m iff m = n + 1. Pairs S's on the left of the head with S's on the
/// right by marking them (X left, Y right), then checks that exactly one S
/// is left over on the right, halting on the final 0 only in that case.
inline TuringMachine rel_succ_machine() {
  TuringMachine M({"q0", "sl", "sr", "chk", "chk2", "rej"}, {"B", "S", "0", "X", "Y"}, "B", "q0",
                  std::string("S"), std::string("0"));
  M.add_transition("q0", "S", "sl", "S", Move::Left);
  M.add_transition("q0", "0", "sl", "0", Move::Left);
  M.add_transition("sl", "X", "sl", "X", Move::Left);
  M.add_transition("sl", "Y", "sl", "Y", Move::Left);
  M.add_transition("sl", "S", "sr", "X", Move::Right);
  M.add_transition("sl", "0", "chk", "0", Move::Right);
  M.add_transition("sr", "X", "sr", "X", Move::Right);
  M.add_transition("sr", "Y", "sr", "Y", Move::Right);
  M.add_transition("sr", "S", "sl", "Y", Move::Left);
  M.add_transition("sr", "0", "rej", "0", Move::Right);
  M.add_transition("chk", "X", "chk", "X", Move::Right);
  M.add_transition("chk", "Y", "chk", "Y", Move::Right);
  M.add_transition("chk", "S", "chk2", "S", Move::Right);
  M.add_transition("chk", "0", "rej", "0", Move::Right);
  M.add_transition("chk2", "S", "rej", "S", Move::Left);
  return M;
}

/// Never scans 0 when halting: loops right on 0 and halts elsewhere on
/// S or blank, so n ↝ m never holds.
inline TuringMachine never_relates_machine() {
  TuringMachine M({"q0"}, {"B", "S", "0"}, "B", "q0", std::string("S"), std::string("0"));
  M.add_transition("q0", "0", "q0", "0", Move::Right);
  return M;
}

/// From q1 the head bounces between two cells forever; from q0 on a blank
/// tape it halts at once.
inline TuringMachine ping_pong_machine() {
  TuringMachine M({"q0", "q1"}, {"B", "a"}, "B", "q0");
  M.add_transition("q0", "a", "q1", "a", Move::Right);
  M.add_transition("q1", "B", "q0", "B", Move::Left);
  return M;
}

}  // namespace trsw
