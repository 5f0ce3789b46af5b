// trsw: run machines, compile encodings, check rewrite properties.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "trsw/acceptance.hpp"
#include "trsw/checkers.hpp"
#include "trsw/encodings.hpp"
#include "trsw/format.hpp"
#include "trsw/trs.hpp"
#include "trsw/turing.hpp"

using json = nlohmann::json;
using namespace trsw;

namespace {

enum Exit { kConfirmed = 0, kRefuted = 1, kUnknown = 2, kInputError = 3 };

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::Confirmed:
      return kConfirmed;
    case Verdict::Refuted:
      return kRefuted;
    case Verdict::Unknown:
      break;
  }
  return kUnknown;
}

// Bad input detected after CLI parsing.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Report {
  bool as_json = false;
  json doc = json::object();
  std::string text;

  int emit(int code) const {
    if (as_json) {
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << text;
    }
    return code;
  }
};

json reduction_json(const Reduction& r) {
  json steps = json::array();
  for (const Step& s : r.steps) {
    steps.push_back({{"position", to_string(s.position)}, {"rule", s.rule_index}, {"target", to_string(s.target)}});
  }
  return {{"start", to_string(r.start)}, {"steps", steps}};
}

std::string reduction_text(const Reduction& r, const std::string& indent = "  ") {
  std::string s = indent + to_string(r.start) + "\n";
  for (const Step& st : r.steps) {
    s += indent + "-> " + to_string(st.target) + "    @" + to_string(st.position) + " rule " +
         std::to_string(st.rule_index) + "\n";
  }
  return s;
}

void describe(Report& rep, const std::string& command, const CheckOutcome& o) {
  json ev = json::array();
  for (const Reduction& r : o.witnesses) ev.push_back(reduction_json(r));
  rep.doc["command"] = command;
  rep.doc["verdict"] = to_string(o.verdict);
  rep.doc["fuel_used"] = o.fuel_used;
  rep.doc["explored"] = o.explored;
  rep.doc["evidence"] = ev;
  rep.doc["detail"] = o.detail;
  if (o.bound) rep.doc["bound"] = *o.bound;
  rep.text += to_string(o.verdict);
  if (o.bound) rep.text += " (bound " + std::to_string(*o.bound) + ")";
  rep.text += "\n";
  if (!o.detail.empty()) rep.text += o.detail + "\n";
  rep.text += "fuel used " + std::to_string(o.fuel_used) + ", explored " + std::to_string(o.explored) + "\n";
  for (std::size_t i = 0; i < o.witnesses.size(); ++i) {
    rep.text += "evidence " + std::to_string(i + 1) + ":\n" + reduction_text(o.witnesses[i]);
  }
}

std::set<std::string> split_vars(const std::string& list) {
  std::set<std::string> out;
  std::string cur;
  for (char c : list + ",") {
    if (c == ',' || c == ' ') {
      if (!cur.empty()) out.insert(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

EncodedSystem load_trs(const std::string& path) { return parse_trs(read_file(path)); }

struct FuelOptions {
  std::size_t reduction_length = Fuel{}.max_reduction_length;
  std::size_t peak_depth = Fuel{}.max_peak_depth;
  std::size_t join_length = Fuel{}.max_join_length;
  std::size_t term_size = 0;
  std::size_t max_states = Fuel{}.max_states;

  void attach(CLI::App* app) {
    app->add_option("--fuel", reduction_length, "Reduction length bound")->capture_default_str();
    app->add_option("--peak-depth", peak_depth, "Peak leg bound (cr)")->capture_default_str();
    app->add_option("--join-length", join_length, "Join leg bound (cr, wcr)")->capture_default_str();
    app->add_option("--term-size", term_size, "Enumeration size bound for uniform checks (0 = default)");
    app->add_option("--max-states", max_states, "Terms one search may visit")->capture_default_str();
  }

  Fuel fuel() const {
    Fuel f;
    f.max_reduction_length = reduction_length;
    f.max_peak_depth = peak_depth;
    f.max_join_length = join_length;
    if (term_size) f.max_term_size = term_size;
    f.max_states = max_states;
    return f;
  }
};

struct TermOptions {
  std::string term;
  std::string vars;
  bool designated = false;

  void attach(CLI::App* app) {
    app->add_option("--term", term, "Start term");
    app->add_option("--vars", vars, "Comma-separated variables of --term");
    app->add_flag("--designated", designated, "Use the file's designated term");
  }

  std::optional<Term> resolve(const std::optional<Term>& file_term) const {
    if (!term.empty()) return parse_term(term, split_vars(vars));
    if (designated) {
      if (!file_term) throw InputError("the file carries no designated term");
      return file_term;
    }
    return std::nullopt;
  }
};

const std::map<std::string, EncodedSystem (*)(const TuringMachine&)>& encoders() {
  static const std::map<std::string, EncodedSystem (*)(const TuringMachine&)> table = {
      {"tmtrs", tm_to_trs_system},         {"confluence", build_confluence_trs}, {"cr-single", build_cr_single_trs},
      {"wcr", build_wcr_trs},              {"grwcr", build_grwcr_trs},           {"pebbled", tm_to_pebbled_system},
      {"dp", build_dp_system},
  };
  return table;
}

std::string encoder_names() {
  std::string s;
  for (const auto& [name, fn] : encoders()) s += (s.empty() ? "" : ", ") + name;
  return s;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Turing machines as term rewriting systems: encoders and bounded checkers"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --json follow any subcommand
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable report");

  // tm
  CLI::App* tm = app.add_subcommand("tm", "Turing machines");
  tm->require_subcommand(1);

  CLI::App* tm_run_cmd = tm->add_subcommand("run", "Run a machine");
  std::string tm_file, config_text;
  std::size_t tm_fuel = 1000;
  std::optional<std::size_t> fun_arg;
  std::vector<std::size_t> rel_args;
  tm_run_cmd->add_option("machine", tm_file, "Machine file")->required();
  tm_run_cmd->add_option("--config", config_text, "Start configuration, e.g. \"0 S q0 S 0\"");
  tm_run_cmd->add_option("--fuel", tm_fuel, "Step bound")->capture_default_str();
  auto* fun_opt = tm_run_cmd->add_option("--fun", fun_arg, "Compute f(n)");
  auto* rel_opt = tm_run_cmd->add_option("--rel", rel_args, "Decide n ~> m")->expected(2);
  fun_opt->excludes(rel_opt);
  rel_opt->excludes(fun_opt);

  CLI::App* tm_compile = tm->add_subcommand("compile", "Encode a machine as a TRS");
  std::string encoding, out_file;
  tm_compile->add_option("machine", tm_file, "Machine file")->required();
  tm_compile->add_option("--encoding", encoding, "One of: " + encoder_names())->required();
  tm_compile->add_option("-o,--output", out_file, "Output file (default stdout)");

  // trs
  CLI::App* trs = app.add_subcommand("trs", "Term rewriting systems");
  trs->require_subcommand(1);

  CLI::App* trs_check = trs->add_subcommand("check", "Bounded property check");
  std::string property, trs_file;
  bool ground_only = false;
  FuelOptions fuel_opts;
  TermOptions term_opts;
  trs_check->add_option("property", property, "sn, wn, cr or wcr")
      ->required()
      ->check(CLI::IsMember({"sn", "wn", "cr", "wcr"}));
  trs_check->add_option("file", trs_file, "TRS file")->required();
  trs_check->add_flag("--ground-only", ground_only, "wcr: one-step peaks of ground terms instead of critical pairs");
  fuel_opts.attach(trs_check);
  term_opts.attach(trs_check);

  CLI::App* trs_reduce = trs->add_subcommand("reduce", "Reduce a term, always taking the first redex");
  std::size_t max_steps = 100;
  trs_reduce->add_option("file", trs_file, "TRS file")->required();
  trs_reduce->add_option("--max-steps", max_steps, "Step bound")->capture_default_str();
  term_opts.attach(trs_reduce);

  CLI::App* trs_cp = trs->add_subcommand("critical-pairs", "List critical pairs");
  bool ordered = false;
  trs_cp->add_option("file", trs_file, "TRS file")->required();
  trs_cp->add_flag("--ordered", ordered, "Keep both orientations of symmetric pairs");

  CLI::App* trs_dp = trs->add_subcommand("dependency-pairs", "Dependency pairs of a TRS");
  std::string top_out, base_out;
  trs_dp->add_option("file", trs_file, "TRS file")->required();
  trs_dp->add_option("--top-out", top_out, "Write the pairs here");
  trs_dp->add_option("--base-out", base_out, "Write the base system here");

  // dp
  CLI::App* dp = app.add_subcommand("dp", "Relative (dependency-pair) problems");
  dp->require_subcommand(1);
  CLI::App* dp_check = dp->add_subcommand("check", "Chain search or minimality-flag check");
  std::string top_file, base_file;
  bool minimal = false;
  std::size_t min_m = 4, min_root_steps = 2;
  FuelOptions dp_fuel;
  TermOptions dp_term;
  dp_check->add_option("--top", top_file, "Top (root) rules")->required();
  dp_check->add_option("--base", base_file, "Base rules")->required();
  dp_check->add_flag("--min", minimal, "Minimality-flag check instead of chain search");
  dp_check->add_option("--m", min_m, "Base reduction length that covers a term (--min)")->capture_default_str();
  dp_check->add_option("--min-root-steps", min_root_steps, "Root steps a chain needs")->capture_default_str();
  dp_fuel.attach(dp_check);
  dp_term.attach(dp_check);

  // verify
  CLI::App* verify = app.add_subcommand("verify", "Run a seeded acceptance suite");
  std::string suite_name;
  std::uint64_t seed = acceptance::kDefaultSeed;
  std::size_t cases = 0;
  bool transcript = false;
  std::string suite_list = "all, determinism";
  for (const auto& s : acceptance::suites()) suite_list += ", " + s.name;
  verify->add_option("suite", suite_name, "One of: " + suite_list)->required();
  verify->add_option("--seed", seed, "RNG seed")->capture_default_str();
  verify->add_option("--cases", cases, "Case count (0 = suite default)");
  verify->add_flag("--transcript", transcript, "Print the per-case transcript");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  Report rep;
  rep.as_json = as_json;
  try {
    if (*tm_run_cmd) {
      TuringMachine M = parse_tm(read_file(tm_file));
      rep.doc["command"] = "tm run";
      rep.doc["evidence"] = json::array();
      if (fun_arg) {
        FunResult r = tm_compute_fun(M, *fun_arg, tm_fuel);
        Verdict v = r.status == FunStatus::Value ? Verdict::Confirmed
                    : r.status == FunStatus::Undefined ? Verdict::Refuted
                                                       : Verdict::Unknown;
        rep.doc["verdict"] = to_string(v);
        rep.doc["fuel_used"] = tm_fuel;
        if (r.status == FunStatus::Value) rep.doc["value"] = r.value;
        rep.text = r.status == FunStatus::Value       ? "f(" + std::to_string(*fun_arg) + ") = " + std::to_string(r.value) + "\n"
                   : r.status == FunStatus::Undefined ? "f(" + std::to_string(*fun_arg) + ") undefined\n"
                                                      : "out of fuel\n";
        return rep.emit(exit_for(v));
      }
      if (!rel_args.empty()) {
        RelationResult r = tm_relation(M, rel_args[0], rel_args[1], tm_fuel);
        Verdict v = r == RelationResult::Holds ? Verdict::Confirmed
                    : r == RelationResult::Fails ? Verdict::Refuted
                                                 : Verdict::Unknown;
        rep.doc["verdict"] = to_string(v);
        rep.doc["fuel_used"] = tm_fuel;
        std::string rel = std::to_string(rel_args[0]) + " ~> " + std::to_string(rel_args[1]);
        rep.text = r == RelationResult::Holds ? rel + " holds\n" : r == RelationResult::Fails ? rel + " fails\n" : "out of fuel\n";
        return rep.emit(exit_for(v));
      }
      Configuration c = config_text.empty() ? Configuration{M.initial(), {}, {}} : parse_configuration(M, config_text);
      RunResult r = tm_run(M, c, tm_fuel);
      Verdict v = r.halted() ? Verdict::Confirmed : Verdict::Unknown;
      rep.doc["verdict"] = to_string(v);
      rep.doc["fuel_used"] = r.steps;
      rep.doc["halted"] = r.halted();
      rep.doc["steps"] = r.steps;
      rep.doc["configuration"] = to_string(r.config);
      rep.text = (r.halted() ? "halted after " : "still running after ") + std::to_string(r.steps) + " steps\n" +
                 to_string(r.config) + "\n";
      return rep.emit(exit_for(v));
    }

    if (*tm_compile) {
      auto it = encoders().find(encoding);
      if (it == encoders().end()) {
        throw InputError("unknown encoding '" + encoding + "'; valid encodings: " + encoder_names());
      }
      TuringMachine M = parse_tm(read_file(tm_file));
      EncodedSystem sys = it->second(M);
      std::string text = write_trs(sys);
      rep.doc = {{"command", "tm compile"}, {"verdict", "Confirmed"}, {"fuel_used", 0}, {"evidence", json::array()},
                 {"encoding", encoding}, {"rules", sys.trs.size()}};
      if (sys.designated) rep.doc["designated"] = to_string(*sys.designated);
      if (out_file.empty() && !as_json) {
        std::cout << text;
        return kConfirmed;
      }
      if (out_file.empty()) {
        rep.doc["trs"] = text;
      } else {
        write_output(out_file, text);
        rep.text = "wrote " + std::to_string(sys.trs.size()) + " rules to " + out_file + "\n";
      }
      return rep.emit(kConfirmed);
    }

    if (*trs_check) {
      EncodedSystem sys = load_trs(trs_file);
      std::optional<Term> t = term_opts.resolve(sys.designated);
      Fuel f = fuel_opts.fuel();
      CheckOutcome o;
      if (property == "sn") {
        o = t ? check_sn_term(sys.trs, *t, f) : check_sn_uniform(sys.trs, f);
      } else if (property == "wn") {
        o = t ? check_wn_term(sys.trs, *t, f) : check_wn_uniform(sys.trs, f);
      } else if (property == "cr") {
        o = t ? check_cr_term(sys.trs, *t, f) : check_cr_uniform(sys.trs, f);
      } else {
        o = t ? check_wcr_peaks(sys.trs, {*t}, f) : check_wcr(sys.trs, f, ground_only);
      }
      describe(rep, "trs check " + property, o);
      if (!t && !(property == "wcr" && !ground_only)) {
        rep.doc["scope"] = "terms up to the size bound";
        rep.text += "(uniform verdicts cover enumerated terms only)\n";
      }
      return rep.emit(exit_for(o.verdict));
    }

    if (*trs_reduce) {
      EncodedSystem sys = load_trs(trs_file);
      std::optional<Term> t = term_opts.resolve(sys.designated);
      if (!t) throw InputError("reduce needs --term or --designated");
      Reduction red{*t, {}};
      bool normal = false;
      while (red.length() < max_steps) {
        auto next = one_step_reducts(sys.trs, red.last());
        if (next.empty()) {
          normal = true;
          break;
        }
        red.steps.push_back(next.front());
      }
      normal = normal || is_normal_form(sys.trs, red.last());
      Verdict v = normal ? Verdict::Confirmed : Verdict::Unknown;
      rep.doc = {{"command", "trs reduce"}, {"verdict", to_string(v)}, {"fuel_used", red.length()},
                 {"evidence", json::array({reduction_json(red)})}, {"normal_form", normal},
                 {"result", to_string(red.last())}};
      rep.text = reduction_text(red, "") + (normal ? "normal form after " : "no normal form within ") +
                 std::to_string(red.length()) + " steps\n";
      return rep.emit(exit_for(v));
    }

    if (*trs_cp) {
      EncodedSystem sys = load_trs(trs_file);
      std::vector<CriticalPair> shown;
      std::set<std::pair<Term, Term>> seen;
      for (const CriticalPair& cp : critical_pairs(sys.trs)) {
        auto key = cp.left < cp.right ? std::pair{cp.left, cp.right} : std::pair{cp.right, cp.left};
        if (!ordered && !seen.insert(key).second) continue;
        shown.push_back(cp);
      }
      json list = json::array();
      rep.text = std::to_string(shown.size()) + (shown.size() == 1 ? " critical pair" : " critical pairs") +
                 (ordered ? "" : " (up to symmetry)") + "\n";
      for (const CriticalPair& cp : shown) {
        list.push_back({{"left", to_string(cp.left)},
                        {"right", to_string(cp.right)},
                        {"peak", to_string(cp.peak)},
                        {"position", to_string(cp.overlap_position)},
                        {"rules", {cp.rule_pair.first, cp.rule_pair.second}}});
        rep.text += "  " + to_string(cp.left) + " <- " + to_string(cp.peak) + " -> " + to_string(cp.right) +
                    "    rules " + std::to_string(cp.rule_pair.first) + "," + std::to_string(cp.rule_pair.second) +
                    " @" + to_string(cp.overlap_position) + "\n";
      }
      rep.doc = {{"command", "trs critical-pairs"}, {"verdict", "Confirmed"}, {"fuel_used", 0},
                 {"evidence", json::array()}, {"critical_pairs", list}};
      return rep.emit(kConfirmed);
    }

    if (*trs_dp) {
      EncodedSystem sys = load_trs(trs_file);
      RelativeProblem P = dependency_pairs(sys.trs);
      // A designated start term carries over, marked, so chains can start from it.
      std::optional<Term> start;
      if (sys.designated && !sys.designated->is_var() && defined_symbols(sys.trs).count(sys.designated->name())) {
        std::vector<Term> args(sys.designated->args().begin(), sys.designated->args().end());
        start = Term::app(marked(sys.designated->name()), std::move(args));
      }
      std::string top_text = write_trs(EncodedSystem{P.top, start, {}}), base_text = write_trs(P.base);
      if (!top_out.empty()) write_output(top_out, top_text);
      if (!base_out.empty()) write_output(base_out, base_text);
      json pairs = json::array();
      for (const Rule& r : P.top.rules) pairs.push_back(to_string(r));
      rep.doc = {{"command", "trs dependency-pairs"}, {"verdict", "Confirmed"}, {"fuel_used", 0},
                 {"evidence", json::array()}, {"pairs", pairs}};
      rep.text = top_out.empty() ? top_text : std::to_string(P.top.size()) + " pairs written to " + top_out + "\n";
      return rep.emit(kConfirmed);
    }

    if (*dp_check) {
      EncodedSystem top = load_trs(top_file);
      EncodedSystem base = load_trs(base_file);
      RelativeProblem P{top.trs, base.trs, top.designated};
      Fuel f = dp_fuel.fuel();
      CheckOutcome o;
      if (minimal) {
        o = check_dp_min(P, f, min_m);
      } else {
        o = chain_search(P, dp_term.resolve(top.designated), min_root_steps, f);
      }
      describe(rep, minimal ? "dp check --min" : "dp check", o);
      if (o.cyclic) {
        rep.doc["cyclic"] = true;
        rep.text += "the chain revisits a term across a root step\n";
      }
      if (minimal) {
        json bounds = json::array();
        for (const auto& [t, n] : o.term_bounds) bounds.push_back({{"term", to_string(t)}, {"n", n}});
        rep.doc["term_bounds"] = bounds;
      }
      return rep.emit(exit_for(o.verdict));
    }

    if (*verify) {
      std::vector<acceptance::SuiteSpec> chosen;
      for (const auto& s : acceptance::suites()) {
        if (suite_name == "all" || s.name == suite_name) chosen.push_back(s);
      }
      if (suite_name == "all" || suite_name == "determinism") {
        chosen.push_back({"determinism", 0, acceptance::determinism});
      }
      if (chosen.empty()) throw InputError("unknown suite '" + suite_name + "'; valid suites: " + suite_list);
      bool all_pass = true;
      json results = json::array();
      for (const auto& s : chosen) {
        acceptance::SuiteResult r = s.run(seed, cases ? cases : s.default_cases);
        all_pass = all_pass && r.pass;
        results.push_back({{"suite", r.name}, {"pass", r.pass}, {"summary", r.summary}});
        if (transcript) results.back()["transcript"] = r.transcript;
        rep.text += std::string(r.pass ? "[PASS] " : "[FAIL] ") + r.name + ": " + r.summary + "\n";
        if (transcript) rep.text += r.transcript;
      }
      rep.text += "seed " + std::to_string(seed) + "\n";
      Verdict v = all_pass ? Verdict::Confirmed : Verdict::Refuted;
      rep.doc = {{"command", "verify"}, {"verdict", to_string(v)}, {"fuel_used", 0}, {"evidence", json::array()},
                 {"seed", seed}, {"results", results}};
      return rep.emit(exit_for(v));
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
