// Deterministic single-tape Turing machines over a two-way infinite tape.
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "trsw/term.hpp"

namespace trsw {

class MissingDesignatedSymbols : public Error {
 public:
  MissingDesignatedSymbols()
      : Error("machine has no designated successor/zero symbols (S: and 0: lines)") {}
};

enum class Move { Left, Right };

inline char to_char(Move m) { return m == Move::Left ? 'L' : 'R'; }

struct Transition {
  std::string state;
  std::string write;
  Move move = Move::Right;
  friend bool operator==(const Transition&, const Transition&) = default;
};

class TuringMachine {
 public:
  TuringMachine() = default;

  /// States and alphabet keep their declaration order; the blank and every
  /// designated symbol must belong to the alphabet.
  TuringMachine(std::vector<std::string> states, std::vector<std::string> alphabet,
                std::string blank, std::string initial,
                std::optional<std::string> succ = std::nullopt,
                std::optional<std::string> zero = std::nullopt)
      : states_(std::move(states)),
        alphabet_(std::move(alphabet)),
        blank_(std::move(blank)),
        initial_(std::move(initial)),
        succ_(std::move(succ)),
        zero_(std::move(zero)) {
    validate_header();
  }

  /// Defines δ(state, read). Redefinition throws: δ is a partial function.
  void add_transition(const std::string& state, const std::string& read, Transition t) {
    require_state(state);
    require_symbol(read);
    require_state(t.state);
    require_symbol(t.write);
    if (!delta_.emplace(std::make_pair(state, read), std::move(t)).second) {
      throw Error("transition for (" + state + ", " + read + ") defined twice");
    }
  }

  void add_transition(const std::string& state, const std::string& read, const std::string& next,
                      const std::string& write, Move move) {
    add_transition(state, read, Transition{next, write, move});
  }

  const Transition* transition(const std::string& state, const std::string& read) const {
    auto it = delta_.find({state, read});
    return it == delta_.end() ? nullptr : &it->second;
  }

  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::string& blank() const { return blank_; }
  const std::string& initial() const { return initial_; }
  const std::optional<std::string>& succ() const { return succ_; }
  const std::optional<std::string>& zero() const { return zero_; }
  /// δ sorted by (state, symbol).
  const std::map<std::pair<std::string, std::string>, Transition>& delta() const { return delta_; }

  bool is_state(const std::string& s) const {
    return std::find(states_.begin(), states_.end(), s) != states_.end();
  }
  bool is_symbol(const std::string& s) const {
    return std::find(alphabet_.begin(), alphabet_.end(), s) != alphabet_.end();
  }
  bool has_designated() const { return succ_.has_value() && zero_.has_value(); }

  const std::string& succ_symbol() const {
    if (!has_designated()) throw MissingDesignatedSymbols();
    return *succ_;
  }
  const std::string& zero_symbol() const {
    if (!has_designated()) throw MissingDesignatedSymbols();
    return *zero_;
  }

  friend bool operator==(const TuringMachine&, const TuringMachine&) = default;

 private:
  void validate_header() const {
    std::set<std::string> st(states_.begin(), states_.end());
    std::set<std::string> al(alphabet_.begin(), alphabet_.end());
    if (st.size() != states_.size()) throw Error("duplicate state");
    if (al.size() != alphabet_.size()) throw Error("duplicate tape symbol");
    for (const std::string& q : states_) {
      if (al.count(q)) throw Error("'" + q + "' is both a state and a tape symbol");
    }
    require_state(initial_);
    require_symbol(blank_);
    if (succ_) require_symbol(*succ_);
    if (zero_) require_symbol(*zero_);
    if (succ_ && zero_ && *succ_ == *zero_) throw Error("S and 0 must be distinct symbols");
  }
  void require_state(const std::string& q) const {
    if (!is_state(q)) throw Error("unknown state '" + q + "'");
  }
  void require_symbol(const std::string& a) const {
    if (!is_symbol(a)) throw Error("unknown tape symbol '" + a + "'");
  }

  std::vector<std::string> states_;
  std::vector<std::string> alphabet_;
  std::string blank_;
  std::string initial_;
  std::optional<std::string> succ_;
  std::optional<std::string> zero_;
  std::map<std::pair<std::string, std::string>, Transition> delta_;
};

/// ⟨w1, q, w2⟩: `left` holds cells -1, -2, ... (nearest the head first),
/// `right` holds cells 0, 1, ... (scanned cell first). Canonical
/// configurations carry no trailing blanks on either side.
struct Configuration {
  std::string state;
  std::vector<std::string> left;
  std::vector<std::string> right;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

inline Configuration canonical(Configuration c, const std::string& blank) {
  while (!c.left.empty() && c.left.back() == blank) c.left.pop_back();
  while (!c.right.empty() && c.right.back() == blank) c.right.pop_back();
  return c;
}

inline const std::string& scanned(const Configuration& c, const std::string& blank) {
  return c.right.empty() ? blank : c.right.front();
}

/// Tape cells left to right with the state written before the scanned
/// cell, e.g. "0 S q0 S S 0".
inline std::string to_string(const Configuration& c) {
  std::string s;
  for (auto it = c.left.rbegin(); it != c.left.rend(); ++it) s += *it + " ";
  s += c.state;
  for (const std::string& a : c.right) s += " " + a;
  return s;
}

/// Inverse of to_string(Configuration): the single state token splits the
/// tape. Whitespace separates tokens.
inline Configuration parse_configuration(const TuringMachine& M, const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : text) {
    if (ch == ' ' || ch == '\t' || ch == '\n') {
      if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  Configuration c;
  std::optional<std::size_t> at;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (M.is_state(tokens[i])) {
      if (at) throw Error("configuration names two states");
      at = i;
    } else if (!M.is_symbol(tokens[i])) {
      throw Error("unknown token '" + tokens[i] + "' in configuration");
    }
  }
  if (!at) throw Error("configuration names no state");
  c.state = tokens[*at];
  for (std::size_t i = *at; i-- > 0;) c.left.push_back(tokens[i]);
  for (std::size_t i = *at + 1; i < tokens.size(); ++i) c.right.push_back(tokens[i]);
  return canonical(std::move(c), M.blank());
}

/// The →_M successor, or nullopt when δ is undefined on the scanned symbol.
inline std::optional<Configuration> tm_step(const TuringMachine& M, const Configuration& c) {
  const std::string& read = scanned(c, M.blank());
  const Transition* t = M.transition(c.state, read);
  if (!t) return std::nullopt;
  Configuration next;
  next.state = t->state;
  std::vector<std::string> rest;
  if (!c.right.empty()) rest.assign(c.right.begin() + 1, c.right.end());
  if (t->move == Move::Right) {
    next.left.reserve(c.left.size() + 1);
    next.left.push_back(t->write);
    next.left.insert(next.left.end(), c.left.begin(), c.left.end());
    next.right = std::move(rest);
  } else {
    const std::string& g = c.left.empty() ? M.blank() : c.left.front();
    if (!c.left.empty()) next.left.assign(c.left.begin() + 1, c.left.end());
    next.right.reserve(rest.size() + 2);
    next.right.push_back(g);
    next.right.push_back(t->write);
    next.right.insert(next.right.end(), rest.begin(), rest.end());
  }
  return canonical(std::move(next), M.blank());
}

enum class RunStatus { Halted, Running };

/// Halted: `config` is the →_M normal form reached after `steps` steps.
/// Running: fuel ran out; `config` is the last configuration.
struct RunResult {
  RunStatus status = RunStatus::Running;
  Configuration config;
  std::size_t steps = 0;

  bool halted() const { return status == RunStatus::Halted; }
};

inline RunResult tm_run(const TuringMachine& M, Configuration c, std::size_t fuel) {
  c = canonical(std::move(c), M.blank());
  for (std::size_t k = 0;; ++k) {
    if (!M.transition(c.state, scanned(c, M.blank()))) return {RunStatus::Halted, std::move(c), k};
    if (k == fuel) return {RunStatus::Running, std::move(c), k};
    c = *tm_step(M, c);
  }
}

/// ⟨ε, q0, S^n 0⟩.
inline Configuration initial_config_fun(const TuringMachine& M, std::size_t n) {
  Configuration c;
  c.state = M.initial();
  c.right.assign(n, M.succ_symbol());
  c.right.push_back(M.zero_symbol());
  return canonical(std::move(c), M.blank());
}

/// ⟨S^n 0 (nearest first), q0, S^m 0⟩, i.e. the tape 0 S^n q0 S^m 0.
inline Configuration initial_config_rel(const TuringMachine& M, std::size_t n, std::size_t m) {
  Configuration c;
  c.state = M.initial();
  c.left.assign(n, M.succ_symbol());
  c.left.push_back(M.zero_symbol());
  c.right.assign(m, M.succ_symbol());
  c.right.push_back(M.zero_symbol());
  return canonical(std::move(c), M.blank());
}

enum class FunStatus { Value, Undefined, OutOfFuel };

struct FunResult {
  FunStatus status = FunStatus::OutOfFuel;
  std::size_t value = 0;
  friend bool operator==(const FunResult&, const FunResult&) = default;
};

/// f_M(n): run from q0 S^n 0 and read the final right word as a maximal
/// run of S followed by 0; whatever follows is ignored.
inline FunResult tm_compute_fun(const TuringMachine& M, std::size_t n, std::size_t fuel) {
  RunResult r = tm_run(M, initial_config_fun(M, n), fuel);
  if (!r.halted()) return {FunStatus::OutOfFuel, 0};
  const auto& w = r.config.right;
  std::size_t m = 0;
  while (m < w.size() && w[m] == M.succ_symbol()) ++m;
  if (m < w.size() && w[m] == M.zero_symbol()) return {FunStatus::Value, m};
  return {FunStatus::Undefined, 0};
}

enum class RelationResult { Holds, Fails, OutOfFuel };

/// n ↝_M m: the run from 0 S^n q0 S^m 0 halts scanning 0.
inline RelationResult tm_relation(const TuringMachine& M, std::size_t n, std::size_t m,
                                  std::size_t fuel) {
  RunResult r = tm_run(M, initial_config_rel(M, n, m), fuel);
  if (!r.halted()) return RelationResult::OutOfFuel;
  return scanned(r.config, M.blank()) == M.zero_symbol() ? RelationResult::Holds
                                                         : RelationResult::Fails;
}

}  // namespace trsw
