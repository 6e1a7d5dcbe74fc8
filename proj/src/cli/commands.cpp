#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pct/cli.hpp"
#include "pct/errors.hpp"
#include "pct/oracle/suites.hpp"
#include "pct/speclang/model.hpp"
#include "pct/speclang/parser.hpp"
#include "pct/speclang/printer.hpp"

namespace pct::cli {

namespace {

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::invalid_argument, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(Errc::invalid_argument, "cannot write '" + path + "'");
}

struct Loaded {
  std::string path;
  speclang::Model model;
};

Loaded load(const std::string& path) { return {path, speclang::Model::from_text(read_file(path))}; }

ProbContract contract_named(const speclang::Model& m, const std::string& name) {
  if (!m.has_prob_contract(name) && !m.has_contract(name))
    throw Error(Errc::invalid_argument, "no contract or probcontract named '" + name + "'");
  return m.prob_contract(name);
}

Implementation impl_named(const speclang::Model& m, const std::string& name) {
  if (!m.has_impl(name)) throw Error(Errc::invalid_argument, "no impl named '" + name + "'");
  return m.implementation(name);
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

std::string percent(std::size_t good, std::size_t total) {
  if (total == 0 || good == total) return "100%";
  std::string s = to_decimal(Rational(100 * good) / total, 2);
  return s + "%";
}

std::string counts(const oracle::SuiteResult& r) {
  return std::to_string(r.passed) + "/" + std::to_string(r.total);
}

nlohmann::json record_json(const oracle::Record& r) {
  nlohmann::json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["pass"] = r.pass;
  for (const auto& [k, v] : r.fields) j[k] = v;
  return j;
}

// ---------------------------------------------------------------------------

struct SatArgs {
  std::string file, impl, contract, at_least;
  bool witness = false;
};

int cmd_sat(const SatArgs& a, std::ostream& out) {
  const Loaded l = load(a.file);
  const ProbContract pc = contract_named(l.model, a.contract);
  const SatReport report = sat_level(impl_named(l.model, a.impl), pc);
  out << format_level(report.level) << '\n';
  if (a.witness && report.witness_bad)
    out << "most likely violating history: " << describe(*report.witness_bad, pc.dist().space()) << '\n';
  if (!a.at_least.empty() && report.level < parse_rational(a.at_least)) return kExitFailed;
  return kExitOk;
}

struct ComposeArgs {
  std::string file, name, out_path;
  std::vector<std::string> contracts;
};

int cmd_compose(const ComposeArgs& a, std::ostream& out) {
  if (a.contracts.size() != 2) throw Error(Errc::invalid_argument, "--contracts takes exactly two names");
  const Loaded l = load(a.file);
  for (const auto& n : a.contracts) contract_named(l.model, n);
  const std::string name = a.name.empty() ? a.contracts[0] + "_" + a.contracts[1] : a.name;
  const speclang::Document doc = speclang::with_composition(l.model, a.contracts[0], a.contracts[1], name);
  const std::string text = speclang::print(doc);
  if (a.out_path.empty()) {
    out << text;
    return kExitOk;
  }
  write_file(a.out_path, text);
  const ProbContract composed = compose_prob(l.model.prob_contract(a.contracts[0]), l.model.prob_contract(a.contracts[1]));
  out << "wrote " << a.out_path << ": " << name << " over " << describe(composed.signature())
      << ", probabilistic ports {" << join(composed.pports()) << "}\n";
  return kExitOk;
}

struct RefineArgs {
  std::string file, from, to, at_least;
};

int cmd_refine(const RefineArgs& a, std::ostream& out) {
  const Loaded l = load(a.file);
  const RefineReport r = refine_level(contract_named(l.model, a.from), contract_named(l.model, a.to));
  out << "gamma: " << (r.level ? format_level(*r.level) : "undefined") << '\n';
  out << "P(good1): " << format_level(r.p_good1) << '\n';
  out << "P(good1 and good2): " << format_level(r.p_good_both) << '\n';
  out << "degenerate: " << (r.degenerate() ? "yes" : "no") << '\n';
  if (r.degenerate()) return kExitFailed;
  if (!a.at_least.empty() && *r.level < parse_rational(a.at_least)) return kExitFailed;
  return kExitOk;
}

struct VerifyArgs {
  std::size_t seeds = 500;
  std::uint64_t first_seed = 0;
  std::string budget;
  bool json_lines = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  oracle::SuiteOptions opt;
  opt.first_seed = a.first_seed;
  opt.seeds = a.seeds;
  opt.budget = oracle::Budget::parse(a.budget);
  if (a.json_lines) opt.sink = [&out](const oracle::Record& r) { out << record_json(r).dump() << '\n'; };
  const oracle::VerifyReport report = oracle::verify(opt);

  const std::size_t checks = report.oracle_checks();
  const std::size_t agree = checks - report.oracle_mismatches();
  if (a.json_lines) {
    nlohmann::json s;
    s["summary"] = true;
    for (const auto& r : report.suites) {
      s[r.name] = {{"passed", r.passed}, {"total", r.total}, {"skipped", r.skipped},
                   {"oracle_mismatches", r.oracle_mismatches}};
      if (r.first_failure) s[r.name]["first_failure"] = *r.first_failure;
    }
    s["oracle_checks"] = checks;
    s["oracle_agreeing"] = agree;
    s["ok"] = report.ok();
    out << s.dump() << '\n';
    return report.ok() ? kExitOk : kExitFailed;
  }

  out << "theorem1: " << counts(report.suite("theorem1")) << ", theorem2: " << counts(report.suite("theorem2"))
      << ", lemma1: " << counts(report.suite("lemma1")) << ", lemma2: " << counts(report.suite("lemma2"))
      << ", oracle-agreement: " << percent(agree, checks) << '\n';
  out << "theorem1-tightness: " << counts(report.suite("theorem1-tightness"))
      << ", theorem2-tightness: " << (report.suite("theorem2-tightness").holds() ? "equality reached" : "no equality")
      << ", formulas: " << counts(report.suite("formulas"))
      << ", canonical-form: " << counts(report.suite("canonical-form")) << '\n';
  for (const auto& r : report.suites) {
    if (r.skipped) out << r.name << ": " << r.skipped << " degenerate instances skipped\n";
    if (r.first_failure)
      out << r.name << ": first counterexample seed " << *r.first_failure << " (" << r.first_failure_detail << ")\n";
    if (r.first_mismatch)
      out << r.name << ": engine and oracle disagree, first at seed " << *r.first_mismatch << '\n';
  }
  return report.ok() ? kExitOk : kExitFailed;
}

int cmd_example(bool source, std::ostream& out) {
  if (source) {
    out << example_document();
    return kExitOk;
  }
  const ExampleReport r = run_example();
  print_example(out, r);
  return r.composed_bound_holds() && r.prime_bound_holds() && r.disjoint_equality_holds() ? kExitOk : kExitFailed;
}

struct FmtArgs {
  std::string file;
  bool check = false;
  bool in_place = false;
};

int cmd_fmt(const FmtArgs& a, std::ostream& out) {
  const std::string text = read_file(a.file);
  const std::string normalized = speclang::print(speclang::parse(text));
  if (a.check) return normalized == text ? kExitOk : kExitFailed;
  if (a.in_place) {
    if (a.file == "-") throw Error(Errc::invalid_argument, "--in-place needs a file");
    write_file(a.file, normalized);
    return kExitOk;
  }
  out << normalized;
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Probabilistic assume/guarantee contracts over finite traces"};
  app.name("pct");
  app.require_subcommand(1);

  SatArgs sat;
  auto* sat_cmd = app.add_subcommand("sat", "Satisfaction level of an implementation against a contract");
  sat_cmd->add_option("file", sat.file, ".pct document")->required();
  sat_cmd->add_option("--impl", sat.impl, "implementation name")->required();
  sat_cmd->add_option("--contract", sat.contract, "contract or probcontract name")->required();
  sat_cmd->add_option("--at-least", sat.at_least, "exit 1 when the level is below this rational");
  sat_cmd->add_flag("--witness", sat.witness, "also print a most likely violating history");

  ComposeArgs compose;
  auto* compose_cmd = app.add_subcommand("compose", "Compose two contracts and emit the extended document");
  compose_cmd->add_option("file", compose.file, ".pct document")->required();
  compose_cmd->add_option("--contracts", compose.contracts, "two names, comma separated")
      ->required()
      ->delimiter(',');
  compose_cmd->add_option("--name", compose.name, "name of the composition (default A_B)");
  compose_cmd->add_option("--out", compose.out_path, "write the document here instead of stdout");

  RefineArgs refine;
  auto* refine_cmd = app.add_subcommand("refine", "Refinement level between two contracts");
  refine_cmd->add_option("file", refine.file, ".pct document")->required();
  refine_cmd->add_option("--from", refine.from, "refining contract")->required();
  refine_cmd->add_option("--to", refine.to, "refined contract")->required();
  refine_cmd->add_option("--at-least", refine.at_least, "exit 1 when the level is below this rational");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the randomized property suites against the oracle");
  verify_cmd->add_option("--seeds", verify.seeds, "instances per suite")->capture_default_str();
  verify_cmd->add_option("--first-seed", verify.first_seed, "first seed")->capture_default_str();
  verify_cmd->add_option("--budget", verify.budget, "e.g. ports=3,prob=2,h=3,domain=3,cap=4096");
  verify_cmd->add_flag("--json-lines", verify.json_lines, "one JSON record per instance, then a summary");

  bool source = false;
  auto* example_cmd = app.add_subcommand("example", "Reproduce the bundled two-component example");
  example_cmd->add_flag("--source", source, "print the bundled document instead");

  FmtArgs fmt;
  auto* fmt_cmd = app.add_subcommand("fmt", "Print a document in normal form");
  fmt_cmd->add_option("file", fmt.file, ".pct document, - for stdin")->required();
  fmt_cmd->add_flag("--check", fmt.check, "exit 1 unless the file is already normalized");
  fmt_cmd->add_flag("-i,--in-place", fmt.in_place, "rewrite the file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  std::string file;
  try {
    if (sat_cmd->parsed()) return file = sat.file, cmd_sat(sat, out);
    if (compose_cmd->parsed()) return file = compose.file, cmd_compose(compose, out);
    if (refine_cmd->parsed()) return file = refine.file, cmd_refine(refine, out);
    if (verify_cmd->parsed()) return cmd_verify(verify, out);
    if (example_cmd->parsed()) return cmd_example(source, out);
    if (fmt_cmd->parsed()) return file = fmt.file, cmd_fmt(fmt, out);
  } catch (const speclang::SpecError& e) {
    err << file << ':' << e.diagnostic().format() << '\n';
    return kExitError;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace pct::cli
