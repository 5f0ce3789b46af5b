// Compilers from Turing machines to rewrite systems, the term/configuration
// correspondence, and the dependency-pair transformation.
#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "trsw/term.hpp"
#include "trsw/trs.hpp"
#include "trsw/turing.hpp"

namespace trsw {

class NotATapeTerm : public Error {
 public:
  explicit NotATapeTerm(const Term& t) : Error("not a tape term: " + to_string(t)) {}
};

class NotAMachineTerm : public Error {
 public:
  explicit NotAMachineTerm(const Term& t) : Error("not a machine term: " + to_string(t)) {}
};

class SignatureClash : public Error {
 public:
  explicit SignatureClash(const std::string& name)
      : Error("machine symbol '" + name + "' clashes with a symbol the encoding introduces"),
        name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// Reserved symbols introduced by the encoders.
namespace sym {
inline const std::string kEnd = "t";  // end of the written tape
inline const std::string kTop = "T";
inline const std::string kRun = "run";
inline const std::string kPebble = "pebble";
inline const std::string kPickn = "pickn";
inline const std::string kOk = "ok";
inline const std::string kCount = "c";
inline const std::string kMark = "♯";  // suffix of marked symbols
}  // namespace sym

/// (top, base): the problem SN(→top at the root ∪ →base). Both carry the
/// same signature.
struct RelativeProblem {
  Trs top;
  Trs base;
  std::optional<Term> designated;
};

namespace detail {

inline Term v(const char* n) { return Term::var(n); }
inline Term end_marker() { return Term::app(sym::kEnd); }
inline Term un(const std::string& f, Term a) { return Term::app(f, {std::move(a)}); }
inline Term bin(const std::string& f, Term a, Term b) { return Term::app(f, {std::move(a), std::move(b)}); }

inline void reject_clashes(const TuringMachine& M, std::initializer_list<std::string> reserved) {
  for (const std::string& r : reserved) {
    if (M.is_state(r) || M.is_symbol(r)) throw SignatureClash(r);
  }
}

inline const std::string& require_succ(const TuringMachine& M) {
  if (!M.succ()) throw MissingDesignatedSymbols();
  return *M.succ();
}

/// Q/2, Γ/1 and the end marker.
inline Signature machine_signature(const TuringMachine& M) {
  Signature sig;
  for (const std::string& q : M.states()) sig.add(q, 2);
  for (const std::string& a : M.alphabet()) sig.add(a, 1);
  sig.add(sym::kEnd, 0);
  return sig;
}

/// Accumulates rules with notes, validating at the end.
struct Builder {
  Signature sig;
  std::vector<Rule> rules;
  std::map<std::size_t, std::string> notes;

  void add(Term lhs, Term rhs, std::string note) {
    notes[rules.size()] = std::move(note);
    rules.push_back(Rule{std::move(lhs), std::move(rhs)});
  }
  void append(const EncodedSystem& sys) {
    for (std::size_t i = 0; i < sys.trs.size(); ++i) {
      auto it = sys.notes.find(i);
      add(sys.trs[i].lhs, sys.trs[i].rhs, it == sys.notes.end() ? std::string() : it->second);
    }
    sig.merge(sys.trs.signature);
  }
  EncodedSystem finish(std::optional<Term> designated = std::nullopt) {
    EncodedSystem out{validate_trs(std::move(sig), std::move(rules)), std::move(designated),
                      std::move(notes)};
    if (out.designated) out.trs.signature.absorb(*out.designated);
    return out;
  }
};

inline std::string delta_tag(const std::string& q, const std::string& f) {
  return "delta(" + q + "," + f + ")";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// tmtrs

/// The machine-simulating TRS with one provenance note per rule. Rules are
/// emitted per δ entry in (state, symbol) order.
inline EncodedSystem tm_to_trs_system(const TuringMachine& M) {
  using detail::bin;
  using detail::un;
  using detail::v;
  detail::reject_clashes(M, {sym::kEnd});
  detail::Builder b;
  b.sig = detail::machine_signature(M);
  const Term end = detail::end_marker();
  const std::string& blank = M.blank();
  for (const auto& [key, tr] : M.delta()) {
    const auto& [q, f] = key;
    const std::string tag = detail::delta_tag(q, f);
    if (tr.move == Move::Right) {
      b.add(bin(q, v("x"), un(f, v("y"))), bin(tr.state, un(tr.write, v("x")), v("y")),
            "tmtrs: " + tag + " right");
      if (f == blank) {
        b.add(bin(q, v("x"), end), bin(tr.state, un(tr.write, v("x")), end),
              "tmtrs: " + tag + " right, tape end");
      }
      continue;
    }
    for (const std::string& g : M.alphabet()) {
      b.add(bin(q, un(g, v("x")), un(f, v("y"))), bin(tr.state, v("x"), un(g, un(tr.write, v("y")))),
            "tmtrs: " + tag + " left over " + g);
    }
    b.add(bin(q, end, un(f, v("y"))), bin(tr.state, end, un(blank, un(tr.write, v("y")))),
          "tmtrs: " + tag + " left, left end");
    if (f == blank) {
      for (const std::string& g : M.alphabet()) {
        b.add(bin(q, un(g, v("x")), end), bin(tr.state, v("x"), un(g, un(tr.write, end))),
              "tmtrs: " + tag + " left over " + g + ", tape end");
      }
      b.add(bin(q, end, end), bin(tr.state, end, un(blank, un(tr.write, end))),
            "tmtrs: " + tag + " left, both ends");
    }
  }
  return b.finish();
}

inline Trs tm_to_trs(const TuringMachine& M) { return tm_to_trs_system(M).trs; }

// ---------------------------------------------------------------------------
// Terms <-> configurations

/// The tape term a1(a2(...(t))) of a word.
inline Term tape_term(const std::vector<std::string>& word) {
  Term t = detail::end_marker();
  for (auto it = word.rbegin(); it != word.rend(); ++it) t = detail::un(*it, std::move(t));
  return t;
}

/// φ: the word spelled by a tape term over Γ ∪ {t}.
inline std::vector<std::string> phi(const TuringMachine& M, const Term& t) {
  std::vector<std::string> w;
  const Term* cur = &t;
  while (true) {
    if (cur->is_var()) throw NotATapeTerm(t);
    if (cur->arity() == 0 && cur->name() == sym::kEnd) return w;
    if (cur->arity() != 1 || !M.is_symbol(cur->name())) throw NotATapeTerm(t);
    w.push_back(cur->name());
    cur = &cur->arg(0);
  }
}

/// Φ: q(s1, s2) ↦ ⟨φ(s1), q, φ(s2)⟩, canonicalized.
inline Configuration interpret(const TuringMachine& M, const Term& t) {
  if (t.is_var() || t.arity() != 2 || !M.is_state(t.name())) throw NotAMachineTerm(t);
  try {
    Configuration c{t.name(), phi(M, t.arg(0)), phi(M, t.arg(1))};
    return canonical(std::move(c), M.blank());
  } catch (const NotATapeTerm&) {
    throw NotAMachineTerm(t);
  }
}

/// The blank-trimmed representative of Φ⁻¹(c).
inline Term encode_config(const TuringMachine& M, const Configuration& c) {
  Configuration k = canonical(c, M.blank());
  return detail::bin(k.state, tape_term(k.left), tape_term(k.right));
}

// ---------------------------------------------------------------------------
// Gadgets

/// q(x, f(y)) → T for every f with δ(q, f) undefined, and q(x, t) → T when
/// δ(q, blank) is undefined so that halting beyond the written tape is
/// detected as well.
inline void add_halt_rules(const TuringMachine& M, detail::Builder& b) {
  using detail::bin;
  using detail::un;
  using detail::v;
  const Term top = Term::app(sym::kTop);
  for (const std::string& q : M.states()) {
    for (const std::string& f : M.alphabet()) {
      if (!M.transition(q, f)) {
        b.add(bin(q, v("x"), un(f, v("y"))), top, "halt: " + detail::delta_tag(q, f) + " undefined");
      }
    }
    if (!M.transition(q, M.blank())) {
      b.add(bin(q, v("x"), detail::end_marker()), top,
            "halt at tape end: " + detail::delta_tag(q, M.blank()) + " undefined");
    }
  }
}

/// Uniform confluence gadget: tmtrs plus the run shuttle rules (1)-(5).
inline EncodedSystem build_confluence_trs(const TuringMachine& M) {
  using detail::bin;
  using detail::un;
  using detail::v;
  const std::string& S = detail::require_succ(M);
  detail::reject_clashes(M, {sym::kEnd, sym::kTop, sym::kRun});
  detail::Builder b;
  b.append(tm_to_trs_system(M));
  const Term end = detail::end_marker();
  b.add(bin(sym::kRun, v("x"), end), Term::app(sym::kTop), "confluence (1)");
  b.add(bin(sym::kRun, end, v("y")), bin(M.initial(), end, v("y")), "confluence (2)");
  add_halt_rules(M, b);
  b.add(bin(sym::kRun, v("x"), un(S, v("y"))), bin(sym::kRun, un(S, v("x")), v("y")),
        "confluence (4)");
  b.add(bin(sym::kRun, un(S, v("x")), v("y")), bin(sym::kRun, v("x"), un(S, v("y"))),
        "confluence (5)");
  return b.finish();
}

/// Single-term confluence gadget with designated term run(t).
inline EncodedSystem build_cr_single_trs(const TuringMachine& M) {
  using detail::bin;
  using detail::un;
  using detail::v;
  const std::string& S = detail::require_succ(M);
  detail::reject_clashes(M, {sym::kEnd, sym::kTop, sym::kRun});
  detail::Builder b;
  b.append(tm_to_trs_system(M));
  const Term end = detail::end_marker();
  b.add(un(sym::kRun, v("x")), Term::app(sym::kTop), "cr-single: run to T");
  b.add(un(sym::kRun, v("x")), un(sym::kRun, un(S, v("x"))), "cr-single: run counts up");
  b.add(un(sym::kRun, v("x")), bin(M.initial(), end, v("x")), "cr-single: run starts machine");
  add_halt_rules(M, b);
  return b.finish(un(sym::kRun, end));
}

/// Weak confluence gadget with designated term run.
inline EncodedSystem build_wcr_trs(const TuringMachine& M) {
  detail::reject_clashes(M, {sym::kEnd, sym::kTop, sym::kRun});
  detail::Builder b;
  b.append(tm_to_trs_system(M));
  const Term run = Term::app(sym::kRun);
  const Term end = detail::end_marker();
  b.add(run, Term::app(sym::kTop), "wcr: run to T");
  b.add(run, detail::bin(M.initial(), end, end), "wcr: run starts machine on blank tape");
  add_halt_rules(M, b);
  return b.finish(run);
}

/// Ground weak confluence gadget: binary run rules plus a left-linear
/// catch-all q(f(xs), g(ys)) → T for every head pair no tmtrs rule covers.
/// f and g range over the whole extended signature.
inline EncodedSystem build_grwcr_trs(const TuringMachine& M) {
  using detail::bin;
  using detail::v;
  detail::reject_clashes(M, {sym::kEnd, sym::kTop, sym::kRun});
  EncodedSystem base = tm_to_trs_system(M);
  detail::Builder b;
  b.append(base);
  b.add(bin(sym::kRun, v("x"), v("y")), Term::app(sym::kTop), "grwcr: run to T");
  b.add(bin(sym::kRun, v("x"), v("y")), bin(M.initial(), v("x"), v("y")), "grwcr: run starts machine");
  Signature ext = b.sig;
  ext.add(sym::kRun, 2);
  ext.add(sym::kTop, 0);
  auto headed = [](const std::string& f, std::size_t arity, const std::string& prefix) {
    std::vector<Term> args;
    for (std::size_t i = 1; i <= arity; ++i) args.push_back(Term::var(prefix + std::to_string(i)));
    return Term::app(f, std::move(args));
  };
  for (const std::string& q : M.states()) {
    for (const auto& [f, af] : ext.symbols()) {
      for (const auto& [g, ag] : ext.symbols()) {
        Term lhs = bin(q, headed(f, af, "x"), headed(g, ag, "y"));
        bool covered = false;
        for (const Rule& r : base.trs.rules) {
          if (match(r.lhs, lhs)) {
            covered = true;
            break;
          }
        }
        if (!covered) b.add(std::move(lhs), Term::app(sym::kTop), "grwcr: catch-all " + q + "/" + f + "/" + g);
      }
    }
  }
  return b.finish();
}

/// tmtrs with one pebble per machine step and T-rules for halting on 0.
/// The halt rule q(x, 0(y)) → T is emitted for states with δ(q, 0)
/// undefined.
inline EncodedSystem tm_to_pebbled_system(const TuringMachine& M) {
  using detail::bin;
  using detail::un;
  using detail::v;
  const std::string& zero = M.zero_symbol();
  detail::reject_clashes(M, {sym::kEnd, sym::kTop, sym::kPebble});
  EncodedSystem base = tm_to_trs_system(M);
  detail::Builder b;
  b.sig = base.trs.signature;
  for (std::size_t i = 0; i < base.trs.size(); ++i) {
    b.add(base.trs[i].lhs, un(sym::kPebble, base.trs[i].rhs), "pebbled " + base.notes.at(i));
  }
  for (const std::string& q : M.states()) {
    if (!M.transition(q, zero)) {
      b.add(bin(q, v("x"), un(zero, v("y"))), Term::app(sym::kTop),
            "pebbled halt: " + detail::delta_tag(q, zero) + " undefined");
    }
  }
  b.add(un(sym::kPebble, Term::app(sym::kTop)), Term::app(sym::kTop), "pebbled: absorb pebble");
  return b.finish();
}

inline Trs tm_to_pebbled_trs(const TuringMachine& M) { return tm_to_pebbled_system(M).trs; }

/// pickn → c(pickn), pickn → ok(0(t)), c(ok(x)) → ok(S(x)).
inline EncodedSystem pickn_system(const std::string& succ = "S", const std::string& zero = "0") {
  using detail::un;
  detail::Builder b;
  const Term pickn = Term::app(sym::kPickn);
  b.add(pickn, un(sym::kCount, pickn), "pickn: count");
  b.add(pickn, un(sym::kOk, un(zero, detail::end_marker())), "pickn: stop");
  b.add(un(sym::kCount, un(sym::kOk, detail::v("x"))), un(sym::kOk, un(succ, detail::v("x"))),
        "pickn: carry");
  return b.finish();
}

inline Trs pickn_trs(const std::string& succ = "S", const std::string& zero = "0") {
  return pickn_system(succ, zero).trs;
}

/// The single system S = pebbled(M) ⊎ pickn + the ternary run rule, with
/// designated term run(T, pickn, pickn).
inline EncodedSystem build_dp_system(const TuringMachine& M) {
  using detail::un;
  using detail::v;
  const std::string& succ = M.succ_symbol();
  const std::string& zero = M.zero_symbol();
  detail::reject_clashes(M, {sym::kEnd, sym::kTop, sym::kPebble, sym::kRun, sym::kOk, sym::kCount,
                             sym::kPickn});
  detail::Builder b;
  b.append(tm_to_pebbled_system(M));
  b.append(pickn_system(succ, zero));
  const Term top = Term::app(sym::kTop);
  const Term pickn = Term::app(sym::kPickn);
  b.add(Term::app(sym::kRun, {top, un(sym::kOk, v("x")), un(sym::kOk, v("y"))}),
        Term::app(sym::kRun, {detail::bin(M.initial(), v("x"), v("y")), un(sym::kOk, v("y")), pickn}),
        "dp: run restarts machine");
  return b.finish(Term::app(sym::kRun, {top, pickn, pickn}));
}

/// top = base = build_dp_system(M).
inline RelativeProblem build_dp_gadget(const TuringMachine& M) {
  EncodedSystem s = build_dp_system(M);
  return RelativeProblem{s.trs, s.trs, s.designated};
}

// ---------------------------------------------------------------------------
// Dependency pairs

inline std::string marked(const std::string& f) { return f + sym::kMark; }

inline std::set<std::string> defined_symbols(const Trs& R) {
  std::set<std::string> d;
  for (const Rule& r : R.rules) d.insert(r.lhs.name());
  return d;
}

/// top: f♯(ss) → g♯(us) for every rule f(ss) → r and every subterm g(us) of
/// r with g defined, in rule order then pre-order, duplicates dropped.
/// base: R. Both share the signature extended with the marked symbols.
inline RelativeProblem dependency_pairs(const Trs& R) {
  std::set<std::string> defined = defined_symbols(R);
  auto mark = [](const Term& t) {
    std::vector<Term> args(t.args().begin(), t.args().end());
    return Term::app(marked(t.name()), std::move(args));
  };
  std::vector<Rule> pairs;
  for (const Rule& r : R.rules) {
    for (const Position& p : positions(r.rhs)) {
      const Term& u = subterm_at(r.rhs, p);
      if (u.is_var() || !defined.count(u.name())) continue;
      Rule dp{mark(r.lhs), mark(u)};
      if (std::find(pairs.begin(), pairs.end(), dp) == pairs.end()) pairs.push_back(std::move(dp));
    }
  }
  Signature sig = R.signature;
  for (const std::string& f : defined) sig.add(marked(f), *R.signature.arity(f));
  Trs top = validate_trs(sig, std::move(pairs));
  Trs base = R;
  base.signature = top.signature;
  return RelativeProblem{std::move(top), std::move(base), std::nullopt};
}

}  // namespace trsw
