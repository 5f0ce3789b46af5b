// Seeded end-to-end suites. Each suite returns a pass flag, a one-line
// summary and a transcript that depends only on the seed and case count.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trsw/checkers.hpp"
#include "trsw/encodings.hpp"
#include "trsw/random.hpp"
#include "trsw/trs.hpp"
#include "trsw/turing.hpp"

namespace trsw::acceptance {

struct SuiteResult {
  std::string name;
  bool pass = false;
  std::string summary;
  std::string transcript;
};

struct SuiteSpec {
  std::string name;
  std::size_t default_cases;
  std::function<SuiteResult(std::uint64_t seed, std::size_t cases)> run;
};

inline constexpr std::uint64_t kDefaultSeed = 20240611;

namespace detail {

inline std::string hex(std::uint64_t h) {
  std::ostringstream s;
  s << std::hex << h;
  return s.str();
}

inline Term s_pow(const std::string& succ, std::size_t n, Term base) {
  for (std::size_t i = 0; i < n; ++i) base = Term::app(succ, {std::move(base)});
  return base;
}

inline Term end_term() { return Term::app(sym::kEnd); }

/// The corpus shared by the simulation and halting suites.
inline std::vector<std::pair<TuringMachine, Configuration>> machine_corpus(std::uint64_t seed,
                                                                           std::size_t cases) {
  Rng rng(seed);
  std::vector<std::pair<TuringMachine, Configuration>> out;
  for (std::size_t i = 0; i < cases; ++i) {
    TuringMachine M = random_machine(rng, MachineShape{4, 3, 70, false});
    Configuration c = random_config(rng, M);
    out.emplace_back(std::move(M), std::move(c));
  }
  return out;
}

}  // namespace detail

/// tm_step and tmtrs one-step reduction agree through Φ in lock step.
inline SuiteResult simulation(std::uint64_t seed, std::size_t cases) {
  SuiteResult r{"simulation", false, "", ""};
  std::ostringstream tr;
  std::size_t mismatches = 0, steps_total = 0;
  auto corpus = detail::machine_corpus(seed, cases);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& [M, c0] = corpus[i];
    Trs R = tm_to_trs(M);
    Term t = encode_config(M, c0);
    Configuration c = c0;
    std::size_t k = 0;
    bool bad = false;
    for (; k < 50; ++k) {
      auto next = tm_step(M, c);
      auto red = one_step_reducts(R, t);
      if (!next) {
        bad = !red.empty();
        break;
      }
      if (red.size() != 1) {
        bad = true;
        break;
      }
      try {
        bad = !(interpret(M, red[0].target) == *next);
      } catch (const Error&) {
        bad = true;
      }
      if (bad) break;
      t = red[0].target;
      c = *next;
    }
    steps_total += k;
    mismatches += bad ? 1 : 0;
    tr << "case " << i << " steps " << k << (bad ? " MISMATCH" : " ok") << " final " << detail::hex(t.hash())
       << "\n";
  }
  r.pass = mismatches == 0;
  r.summary = std::to_string(cases) + " machines, " + std::to_string(steps_total) + " lock steps, " +
              std::to_string(mismatches) + " mismatches";
  r.transcript = tr.str();
  return r;
}

/// check_sn_term's bound equals the halting step count; looping machines
/// are never confirmed.
inline SuiteResult halting(std::uint64_t seed, std::size_t cases) {
  SuiteResult r{"halting", false, "", ""};
  std::ostringstream tr;
  const std::size_t fuel = 100;
  Fuel f;
  f.max_reduction_length = fuel;
  auto corpus = detail::machine_corpus(seed, cases);
  std::size_t halted = 0, loops = 0, failures = 0;
  auto check = [&](const std::string& label, const TuringMachine& M, const Configuration& c, bool must_loop) {
    RunResult run = tm_run(M, c, fuel);
    CheckOutcome sn = check_sn_term(tm_to_trs(M), encode_config(M, c), f);
    bool ok;
    if (run.halted()) {
      ++halted;
      ok = !must_loop && sn.verdict == Verdict::Confirmed && sn.bound == run.steps;
    } else {
      ++loops;
      ok = sn.verdict != Verdict::Confirmed;
    }
    failures += ok ? 0 : 1;
    tr << label << " tm " << (run.halted() ? "halted " + std::to_string(run.steps) : std::string("running"))
       << " sn " << to_string(sn.verdict) << (sn.bound ? " " + std::to_string(*sn.bound) : std::string())
       << (ok ? " ok" : " FAIL") << "\n";
  };
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    check("case " + std::to_string(i), corpus[i].first, corpus[i].second, false);
  }
  // Machines with total δ never halt.
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (std::size_t i = 0; i < 20; ++i) {
    TuringMachine M = random_machine(rng, MachineShape{4, 3, 100, false});
    check("loop " + std::to_string(i), M, random_config(rng, M), true);
  }
  TuringMachine pp = ping_pong_machine();
  check("ping-pong", pp, Configuration{"q1", {"a"}, {}}, true);
  TuringMachine rm = right_mover();
  check("right-mover", rm, Configuration{"q0", {}, {}}, true);
  r.pass = failures == 0;
  r.summary = std::to_string(halted) + " halting runs matched exactly, " + std::to_string(loops) +
              " non-halting runs never confirmed, " + std::to_string(failures) + " failures";
  r.transcript = tr.str();
  return r;
}

/// tmtrs is orthogonal and non-erasing for every generated machine.
inline SuiteResult classification(std::uint64_t seed, std::size_t cases) {
  SuiteResult r{"classify", false, "", ""};
  std::ostringstream tr;
  Rng rng(seed);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < cases; ++i) {
    TuringMachine M = random_machine(rng, MachineShape{4, 3, 70, i % 2 == 1});
    Trs R = tm_to_trs(M);
    Classification c = classify(R);
    bool ok = c.orthogonal && c.non_erasing;
    bad += ok ? 0 : 1;
    tr << "case " << i << " rules " << R.size() << " orthogonal " << c.orthogonal << " non_erasing "
       << c.non_erasing << "\n";
  }
  r.pass = bad == 0;
  r.summary = std::to_string(cases - bad) + "/" + std::to_string(cases) + " machines orthogonal and non-erasing";
  r.transcript = tr.str();
  return r;
}

/// pickn reaches ok(S^n(0(t))) for n ≤ 20 and nothing else under ok.
inline SuiteResult pickn(std::uint64_t, std::size_t max_n) {
  SuiteResult r{"pickn", false, "", ""};
  std::ostringstream tr;
  Trs P = pickn_trs();
  ::trsw::detail::Successors succ(P);
  ::trsw::detail::Reach reach(Term::app(sym::kPickn));
  const std::size_t deep = 2 * max_n + 1;
  while (reach.levels() < std::max<std::size_t>(deep, 25) && reach.grow(succ)) {
  }
  std::size_t missing = 0;
  for (std::size_t n = 0; n <= max_n; ++n) {
    Term goal = Term::app(sym::kOk, {detail::s_pow("S", n, Term::app("0", {detail::end_term()}))});
    auto d = reach.depth_of(goal);
    missing += d ? 0 : 1;
    tr << "n " << n << (d ? " reached at depth " + std::to_string(*d) : std::string(" MISSING")) << "\n";
  }
  ::trsw::detail::Reach shallow(Term::app(sym::kPickn));
  while (shallow.levels() < 25 && shallow.grow(succ)) {
  }
  std::size_t ok_terms = 0, bad_shape = 0;
  for (const Term& u : shallow.order()) {
    if (u.is_var() || u.name() != sym::kOk) continue;
    ++ok_terms;
    const Term* cur = &u.arg(0);
    while (!cur->is_var() && cur->name() == "S" && cur->arity() == 1) cur = &cur->arg(0);
    bool shaped = !cur->is_var() && cur->name() == "0" && cur->arity() == 1 && cur->arg(0) == detail::end_term();
    if (!shaped) {
      ++bad_shape;
      tr << "bad ok term " << to_string(u) << "\n";
    }
  }
  tr << "depth 25: " << shallow.size() << " terms, " << ok_terms << " under ok\n";
  r.pass = missing == 0 && bad_shape == 0;
  r.summary = "n <= " + std::to_string(max_n) + ": " + std::to_string(max_n + 1 - missing) +
              " reached; depth 25: " + std::to_string(ok_terms) + " ok-terms, " + std::to_string(bad_shape) +
              " malformed";
  r.transcript = tr.str();
  return r;
}

/// One critical pair outside tmtrs; its joinability matches halting on the
/// blank tape.
inline SuiteResult wcr_gadget(std::uint64_t seed, std::size_t cases) {
  SuiteResult r{"wcr-gadget", false, "", ""};
  std::ostringstream tr;
  Rng rng(seed);
  const std::size_t fuel = 50;
  std::size_t failures = 0, halting_count = 0;
  const Term top = Term::app(sym::kTop);
  for (std::size_t i = 0; i < cases; ++i) {
    TuringMachine M = random_machine(rng, MachineShape{4, 3, 70, false});
    EncodedSystem S = build_wcr_trs(M);
    std::size_t base = tm_to_trs(M).size();
    Trs extra{S.trs.signature, std::vector<Rule>(S.trs.rules.begin() + base, S.trs.rules.end())};
    std::set<std::pair<Term, Term>> unordered;
    for (const CriticalPair& cp : critical_pairs(extra)) {
      unordered.insert(cp.left < cp.right ? std::pair{cp.left, cp.right} : std::pair{cp.right, cp.left});
    }
    Term start = Term::app(M.initial(), {detail::end_term(), detail::end_term()});
    std::pair<Term, Term> expected = top < start ? std::pair{top, start} : std::pair{start, top};
    bool one = unordered.size() == 1 && *unordered.begin() == expected;
    JoinSearcher js(S.trs);
    // The T-rule adds one step after the machine's last.
    auto j = js.join(top, start, fuel + 1);
    RunResult run = tm_run(M, Configuration{M.initial(), {}, {}}, fuel);
    halting_count += run.halted() ? 1 : 0;
    bool agree = (j.result == JoinResult::Joined) == run.halted();
    bool ok = one && agree;
    failures += ok ? 0 : 1;
    tr << "case " << i << " pairs " << unordered.size() << " join "
       << (j.result == JoinResult::Joined ? "joined" : j.result == JoinResult::NotJoinable ? "not-joinable" : "unknown")
       << " tm " << (run.halted() ? "halted " + std::to_string(run.steps) : std::string("running"))
       << (ok ? " ok" : " FAIL") << "\n";
  }
  r.pass = failures == 0;
  r.summary = std::to_string(cases) + " machines (" + std::to_string(halting_count) +
              " halt on blank tape), " + std::to_string(failures) + " failures";
  r.transcript = tr.str();
  return r;
}

/// Shuttle distance n + 1 to T and joinability matching halting on q0 S^n.
inline SuiteResult confluence_gadget(std::uint64_t seed, std::size_t cases) {
  SuiteResult r{"confluence-gadget", false, "", ""};
  std::ostringstream tr;
  Rng rng(seed);
  const std::size_t fuel = 50, max_n = 10;
  std::vector<std::pair<std::string, TuringMachine>> machines = {
      {"empty", empty_machine()},
      {"successor", successor_machine()},
      {"rel-succ", rel_succ_machine()},
      {"right-mover", right_mover()}};
  for (std::size_t i = 0; i < cases; ++i) {
    machines.emplace_back("random " + std::to_string(i), random_machine(rng, MachineShape{4, 3, 70, true}));
  }
  const Term top = Term::app(sym::kTop);
  std::size_t failures = 0, joined = 0, total = 0;
  for (const auto& [label, M] : machines) {
    EncodedSystem S = build_confluence_trs(M);
    std::vector<Rule> shuttle;
    for (std::size_t k = 0; k < S.trs.size(); ++k) {
      const std::string& note = S.notes.at(k);
      if (note == "confluence (1)" || note == "confluence (4)" || note == "confluence (5)") {
        shuttle.push_back(S.trs[k]);
      }
    }
    Trs shuttle_trs = validate_trs(S.trs.signature, shuttle);
    ::trsw::detail::Successors shuttle_succ(shuttle_trs);
    JoinSearcher js(S.trs);
    for (std::size_t n = 0; n <= max_n; ++n) {
      ++total;
      Term sn = detail::s_pow("S", n, detail::end_term());
      Term start = Term::app(sym::kRun, {detail::end_term(), sn});
      Term machine_side = Term::app(M.initial(), {detail::end_term(), sn});
      ::trsw::detail::Reach reach(start);
      while (!reach.depth_of(top) && reach.levels() < n + 2 && reach.grow(shuttle_succ)) {
      }
      auto d = reach.depth_of(top);
      bool shuttle_ok = d && *d == n + 1;
      bool starts = false;
      for (const Step& s : one_step_reducts(S.trs, start)) starts = starts || s.target == machine_side;
      auto j = js.join(top, machine_side, fuel + 1);
      Configuration c{M.initial(), {}, std::vector<std::string>(n, "S")};
      RunResult run = tm_run(M, c, fuel);
      bool agree = (j.result == JoinResult::Joined) == run.halted();
      joined += j.result == JoinResult::Joined ? 1 : 0;
      bool ok = shuttle_ok && starts && agree;
      failures += ok ? 0 : 1;
      tr << label << " n " << n << " T-path " << (d ? std::to_string(*d) : std::string("none")) << " join "
         << (j.result == JoinResult::Joined ? "joined" : "no") << " tm "
         << (run.halted() ? "halted" : "running") << (ok ? " ok" : " FAIL") << "\n";
    }
  }
  r.pass = failures == 0;
  r.summary = std::to_string(machines.size()) + " machines x n <= 10: " + std::to_string(joined) + "/" +
              std::to_string(total) + " peaks joined, " + std::to_string(failures) + " failures";
  r.transcript = tr.str();
  return r;
}

/// Chain search on the dependency-pair gadget.
inline SuiteResult dp_chain(std::uint64_t, std::size_t) {
  SuiteResult r{"dp-chain", false, "", ""};
  std::ostringstream tr;
  auto describe = [](const CheckOutcome& o) {
    std::string s = to_string(o.verdict);
    if (!o.witnesses.empty()) s += " witness length " + std::to_string(o.witnesses.front().length());
    if (o.cyclic) s += " cyclic";
    return s + " explored " + std::to_string(o.explored);
  };

  RelativeProblem succ_gadget = build_dp_gadget(rel_succ_machine());
  Fuel fa;
  fa.max_reduction_length = 40;
  CheckOutcome a = chain_search(succ_gadget, succ_gadget.designated, 3, fa);
  bool a_ok = a.verdict == Verdict::Refuted && replays(succ_gadget, a.witnesses.front()) &&
              root_steps(succ_gadget, a.witnesses.front()) >= 3 &&
              a.witnesses.front().start == *succ_gadget.designated;
  tr << "rel-succ, 3 root steps, fuel 40: " << describe(a) << "\n";
  if (!a.witnesses.empty()) {
    for (const Term& u : a.witnesses.front().terms()) tr << "  " << to_string(u) << "\n";
  }

  RelativeProblem empty_gadget = build_dp_gadget(empty_machine());
  Fuel fb;
  fb.max_reduction_length = 200;
  CheckOutcome b = chain_search(empty_gadget, empty_gadget.designated, 2, fb);
  bool b_ok = b.verdict != Verdict::Refuted;
  tr << "empty delta, 2 root steps, fuel 200: " << describe(b) << "\n";
  if (!b.witnesses.empty()) {
    for (const Term& u : b.witnesses.front().terms()) tr << "  " << to_string(u) << "\n";
  }

  // A machine whose relation is empty cannot restart the run rule.
  RelativeProblem never_gadget = build_dp_gadget(never_relates_machine());
  Fuel fc;
  fc.max_reduction_length = 30;
  CheckOutcome c = chain_search(never_gadget, never_gadget.designated, 2, fc);
  tr << "empty relation, 2 root steps, fuel 30: " << describe(c) << "\n";

  r.pass = a_ok && b_ok;
  r.summary = std::string("rel-succ 3 root steps: ") + (a_ok ? "found" : "NOT found") +
              "; empty delta >= 2 root steps within 200: " +
              (b.verdict == Verdict::Refuted ? "found in " + std::to_string(b.witnesses.front().length()) + " steps"
                                             : std::string("none")) +
              "; empty relation: " + to_string(c.verdict);
  r.transcript = tr.str();
  return r;
}

/// Critical-pair WCR against exhaustive one-step peak enumeration.
inline SuiteResult critical_pairs_vs_peaks(std::uint64_t seed, std::size_t cases) {
  SuiteResult r{"critical-pairs", false, "", ""};
  std::ostringstream tr;
  Rng rng(seed);
  Fuel f;
  f.max_join_length = 6;
  f.max_states = 5000;
  const std::size_t size = 5;
  const Signature sig = small_signature();
  const std::vector<Term> open_terms =
      enumerate_terms(sig, size, {Term::var("x1"), Term::var("x2"), Term::var("x3")});
  const std::vector<Term> ground_terms = enumerate_ground_terms(sig, size);
  std::size_t contradictions = 0, ground_contradictions = 0, resolved = 0;
  auto clash = [](Verdict a, Verdict b) {
    return (a == Verdict::Confirmed && b == Verdict::Refuted) || (a == Verdict::Refuted && b == Verdict::Confirmed);
  };
  for (std::size_t i = 0; i < cases; ++i) {
    Trs R = random_trs(rng);
    CheckOutcome cp = check_wcr(R, f, false);
    CheckOutcome peaks = check_wcr_peaks(R, open_terms, f);
    CheckOutcome ground = check_wcr_peaks(R, ground_terms, f);
    bool bad = clash(cp.verdict, peaks.verdict);
    bool ground_bad = clash(cp.verdict, ground.verdict);
    contradictions += bad ? 1 : 0;
    ground_contradictions += ground_bad ? 1 : 0;
    resolved += cp.verdict != Verdict::Unknown && peaks.verdict != Verdict::Unknown ? 1 : 0;
    tr << "case " << i << " rules " << R.size() << " cp " << to_string(cp.verdict) << " peaks "
       << to_string(peaks.verdict) << " ground " << to_string(ground.verdict) << (bad ? " CONTRADICTION" : "")
       << (ground_bad ? " ground-gap" : "") << "\n";
  }
  r.pass = contradictions == 0;
  r.summary = std::to_string(cases) + " TRSs, " + std::to_string(resolved) + " resolved by both, " +
              std::to_string(contradictions) + " contradictions (terms <= 5 with variables); ground-only: " +
              std::to_string(ground_contradictions) + " contradictions";
  r.transcript = tr.str();
  return r;
}

/// SN of R against the minimality-flag check of its dependency pairs.
inline SuiteResult minimality(std::uint64_t seed, std::size_t cases) {
  SuiteResult r{"minimality", false, "", ""};
  std::ostringstream tr;
  Rng rng(seed);
  Fuel f;
  f.max_reduction_length = 50;
  f.max_term_size = 4;
  f.max_states = 20000;
  const std::size_t m = 4;
  std::size_t qualified = 0, attempts = 0, disagreements = 0, resolved = 0;
  while (qualified < cases && attempts < 50 * cases) {
    ++attempts;
    Trs R = random_trs(rng);
    bool unknown = false, refuted = false;
    for (const Term& t : enumerate_ground_terms(R.signature, 4)) {
      Verdict v = check_sn_term(R, t, f).verdict;
      unknown = unknown || v == Verdict::Unknown;
      refuted = refuted || v == Verdict::Refuted;
      if (unknown) break;
    }
    if (unknown) continue;
    ++qualified;
    Verdict sn = refuted ? Verdict::Refuted : Verdict::Confirmed;
    std::string verdict, note;
    bool bad = false;
    try {
      CheckOutcome dp = check_dp_min(dependency_pairs(R), f, m);
      verdict = to_string(dp.verdict);
      if (dp.verdict != Verdict::Unknown) {
        ++resolved;
        bad = dp.verdict != sn;
      }
    } catch (const std::logic_error& e) {
      verdict = "criteria-disagree";
      note = e.what();
      bad = true;
    }
    disagreements += bad ? 1 : 0;
    tr << "trs " << qualified - 1 << " (attempt " << attempts << ") rules " << R.size() << " sn " << to_string(sn)
       << " dp-min " << verdict << (bad ? " DISAGREE " + note : "") << "\n";
  }
  r.pass = qualified == cases && disagreements == 0;
  r.summary = std::to_string(qualified) + " qualifying TRSs, " + std::to_string(resolved) + " resolved by the minimality check, " +
              std::to_string(disagreements) + " disagreements";
  r.transcript = tr.str();
  return r;
}

inline std::vector<SuiteSpec> suites() {
  return {
      {"simulation", 200, simulation},
      {"halting", 200, halting},
      {"classify", 200, classification},
      {"pickn", 20, pickn},
      {"wcr-gadget", 50, wcr_gadget},
      {"confluence-gadget", 50, confluence_gadget},
      {"dp-chain", 1, dp_chain},
      {"critical-pairs", 300, critical_pairs_vs_peaks},
      {"minimality", 50, minimality},
  };
}

/// Every suite twice with the same seed; transcripts must match byte for byte.
inline SuiteResult determinism(std::uint64_t seed, std::size_t) {
  SuiteResult r{"determinism", true, "", ""};
  std::ostringstream tr;
  std::size_t same = 0, total = 0;
  for (const SuiteSpec& s : suites()) {
    SuiteResult a = s.run(seed, s.default_cases);
    SuiteResult b = s.run(seed, s.default_cases);
    bool eq = a.transcript == b.transcript && a.summary == b.summary && a.pass == b.pass;
    ++total;
    same += eq ? 1 : 0;
    r.pass = r.pass && eq;
    tr << s.name << " " << (eq ? "identical" : "DIFFERENT") << " " << detail::hex(::trsw::detail::hash_name(a.transcript))
       << "\n";
  }
  r.summary = std::to_string(same) + "/" + std::to_string(total) + " suites byte-identical across two runs";
  r.transcript = tr.str();
  return r;
}

}  // namespace trsw::acceptance
