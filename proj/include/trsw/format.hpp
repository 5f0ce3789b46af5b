// Text formats: terms, TRS files and Turing machine files.
//
// TRS file:
//   # TERM: run(T,pickn,pickn)       optional designated term
//   # SIG: T/0 c/1 run/3 ...          optional, declares unused symbols
//   (VAR x y)
//   (RULES
//     l -> r    # provenance note
//   )
//
// TM file:
//   states: q0 q1
//   initial: q0
//   alphabet: B S 0
//   blank: B
//   S: S
//   0: 0
//   delta: q0 S -> q1 S R
#pragma once

#include <cctype>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trsw/term.hpp"
#include "trsw/trs.hpp"
#include "trsw/turing.hpp"

namespace trsw {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

inline bool is_name_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ',' &&
         c != '#';
}

/// Cursor over one line of text; columns are 1-based.
class Lexer {
 public:
  Lexer(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size() || text_[pos_] == '#';
  }
  bool peek(std::string_view tok) {
    skip_space();
    return text_.substr(pos_, tok.size()) == tok;
  }
  void expect(std::string_view tok) {
    if (!peek(tok)) fail("expected '" + std::string(tok) + "'");
    pos_ += tok.size();
  }
  std::string name() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_]) &&
           text_.substr(pos_, 2) != "->") {
      ++pos_;
    }
    if (pos_ == start) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }
  /// The rest of the line after a `#`, trimmed; empty if there is none.
  std::string comment() {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '#') return {};
    std::string_view rest = text_.substr(pos_ + 1);
    pos_ = text_.size();
    while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.front()))) rest.remove_prefix(1);
    while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) rest.remove_suffix(1);
    return std::string(rest);
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, pos_ + 1, msg); }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

inline Term parse_term_at(Lexer& lx, const std::set<std::string>& variables) {
  std::string n = lx.name();
  if (lx.peek("(")) {
    lx.expect("(");
    std::vector<Term> args;
    if (!lx.peek(")")) {
      args.push_back(parse_term_at(lx, variables));
      while (lx.peek(",")) {
        lx.expect(",");
        args.push_back(parse_term_at(lx, variables));
      }
    }
    lx.expect(")");
    if (variables.count(n)) lx.fail("variable '" + n + "' applied to arguments");
    return Term::app(std::move(n), std::move(args));
  }
  if (variables.count(n)) return Term::var(std::move(n));
  return Term::app(std::move(n));
}

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(std::move(cur));
  return lines;
}

inline std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

}  // namespace detail

/// Parses a single term. Names in `variables` are variables; everything else
/// is a function symbol.
inline Term parse_term(std::string_view text, const std::set<std::string>& variables = {}) {
  detail::Lexer lx(text, 1);
  Term t = detail::parse_term_at(lx, variables);
  if (!lx.at_end()) lx.fail("trailing input after term");
  return t;
}

// ---------------------------------------------------------------------------
// TRS files

inline std::string write_trs(const EncodedSystem& sys) {
  std::string out;
  if (sys.designated) out += "# TERM: " + to_string(*sys.designated) + "\n";
  if (!sys.trs.signature.empty()) {
    out += "# SIG:";
    for (const auto& [name, arity] : sys.trs.signature.symbols()) {
      out += " " + name + "/" + std::to_string(arity);
    }
    out += "\n";
  }
  std::set<std::string> vs;
  for (const Rule& r : sys.trs.rules) collect_vars(r.lhs, vs);
  out += "(VAR";
  for (const std::string& x : vs) out += " " + x;
  out += ")\n(RULES\n";
  for (std::size_t i = 0; i < sys.trs.size(); ++i) {
    out += "  " + to_string(sys.trs[i]);
    if (auto it = sys.notes.find(i); it != sys.notes.end()) out += "  # " + it->second;
    out += "\n";
  }
  out += ")\n";
  return out;
}

inline std::string write_trs(const Trs& R) { return write_trs(EncodedSystem{R, std::nullopt, {}}); }

/// Parses the TRS file format. `(VAR ...)` must precede the rules that use
/// the variables; symbols are declared by use.
inline EncodedSystem parse_trs(const std::string& text) {
  std::set<std::string> variables;
  std::vector<Rule> rules;
  std::map<std::size_t, std::string> notes;
  Signature sig;
  std::optional<std::string> term_text;
  std::size_t term_line = 0;
  bool in_rules = false, saw_rules = false;
  std::vector<std::string> lines = detail::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string& line = lines[ln];
    detail::Lexer lx(line, ln + 1);
    lx.skip_space();
    std::string_view trimmed = std::string_view(line);
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) {
      trimmed.remove_prefix(1);
    }
    if (trimmed.starts_with("# TERM:")) {
      term_text = std::string(trimmed.substr(7));
      term_line = ln + 1;
      continue;
    }
    if (trimmed.starts_with("# SIG:")) {
      for (const std::string& w : detail::words(trimmed.substr(6))) {
        auto slash = w.rfind('/');
        if (slash == std::string::npos || slash == 0) lx.fail("malformed signature entry '" + w + "'");
        try {
          sig.add(w.substr(0, slash), std::stoul(w.substr(slash + 1)));
        } catch (const std::logic_error&) {
          lx.fail("malformed arity in '" + w + "'");
        }
      }
      continue;
    }
    if (lx.at_end()) continue;
    if (in_rules) {
      if (lx.peek(")")) {
        lx.expect(")");
        if (!lx.at_end()) lx.fail("trailing input after ')'");
        in_rules = false;
        continue;
      }
      Term lhs = detail::parse_term_at(lx, variables);
      lx.expect("->");
      Term rhs = detail::parse_term_at(lx, variables);
      std::string note = lx.comment();
      if (!lx.at_end()) lx.fail("trailing input after rule");
      if (!note.empty()) notes[rules.size()] = note;
      rules.push_back(Rule{std::move(lhs), std::move(rhs)});
      continue;
    }
    if (lx.peek("(VAR")) {
      lx.expect("(VAR");
      while (!lx.peek(")")) {
        if (lx.at_end()) lx.fail("unterminated (VAR");
        variables.insert(lx.name());
      }
      lx.expect(")");
      if (!lx.at_end()) lx.fail("trailing input after (VAR ...)");
      continue;
    }
    if (lx.peek("(RULES")) {
      if (saw_rules) lx.fail("second (RULES section");
      lx.expect("(RULES");
      in_rules = saw_rules = true;
      if (lx.peek(")")) {
        lx.expect(")");
        in_rules = false;
      }
      if (!lx.at_end()) lx.fail("rules must start on the line after (RULES");
      continue;
    }
    lx.fail("unexpected input");
  }
  if (in_rules) throw ParseError(lines.size(), 1, "unterminated (RULES");
  EncodedSystem sys{validate_trs(std::move(sig), std::move(rules)), std::nullopt, std::move(notes)};
  if (term_text) {
    detail::Lexer lx(*term_text, term_line);
    Term t = detail::parse_term_at(lx, variables);
    if (!lx.at_end()) lx.fail("trailing input after designated term");
    sys.trs.signature.absorb(t);
    sys.designated = std::move(t);
  }
  return sys;
}

// ---------------------------------------------------------------------------
// Turing machine files

inline std::string write_tm(const TuringMachine& M) {
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const std::string& w : v) s += " " + w;
    return s;
  };
  std::string out;
  out += "states:" + join(M.states()) + "\n";
  out += "initial: " + M.initial() + "\n";
  out += "alphabet:" + join(M.alphabet()) + "\n";
  out += "blank: " + M.blank() + "\n";
  if (M.succ()) out += "S: " + *M.succ() + "\n";
  if (M.zero()) out += "0: " + *M.zero() + "\n";
  for (const auto& [key, t] : M.delta()) {
    out += "delta: " + key.first + " " + key.second + " -> " + t.state + " " + t.write + " " +
           to_char(t.move) + "\n";
  }
  return out;
}

inline TuringMachine parse_tm(const std::string& text) {
  std::optional<std::vector<std::string>> states, alphabet;
  std::optional<std::string> initial, blank, succ, zero;
  struct Pending {
    std::size_t line;
    std::vector<std::string> w;
  };
  std::vector<Pending> deltas;
  std::vector<std::string> lines = detail::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string line = lines[ln];
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::vector<std::string> w = detail::words(line);
    if (w.empty()) continue;
    const std::string key = w.front();
    std::vector<std::string> rest(w.begin() + 1, w.end());
    auto single = [&](std::optional<std::string>& slot) {
      if (rest.size() != 1) throw ParseError(ln + 1, 1, "'" + key + "' takes exactly one name");
      if (slot) throw ParseError(ln + 1, 1, "duplicate '" + key + "' line");
      slot = rest.front();
    };
    if (key == "states:") {
      if (states) throw ParseError(ln + 1, 1, "duplicate 'states:' line");
      states = rest;
    } else if (key == "alphabet:") {
      if (alphabet) throw ParseError(ln + 1, 1, "duplicate 'alphabet:' line");
      alphabet = rest;
    } else if (key == "initial:") {
      single(initial);
    } else if (key == "blank:") {
      single(blank);
    } else if (key == "S:") {
      single(succ);
    } else if (key == "0:") {
      single(zero);
    } else if (key == "delta:") {
      if (rest.size() != 6 || rest[2] != "->" || (rest[5] != "L" && rest[5] != "R")) {
        throw ParseError(ln + 1, 1, "expected 'delta: q a -> q' b L|R'");
      }
      deltas.push_back({ln + 1, rest});
    } else {
      throw ParseError(ln + 1, 1, "unknown line '" + key + "'");
    }
  }
  if (!states || !alphabet || !initial || !blank) {
    throw ParseError(lines.size(), 1, "machine needs states:, initial:, alphabet: and blank: lines");
  }
  TuringMachine M;
  try {
    M = TuringMachine(*states, *alphabet, *blank, *initial, succ, zero);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(1, 1, e.what());
  }
  for (const Pending& d : deltas) {
    try {
      M.add_transition(d.w[0], d.w[1], d.w[3], d.w[4], d.w[5] == "L" ? Move::Left : Move::Right);
    } catch (const Error& e) {
      throw ParseError(d.line, 1, e.what());
    }
  }
  return M;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace trsw
