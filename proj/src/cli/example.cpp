#include <ostream>

#include "pct/cli.hpp"
#include "pct/speclang/model.hpp"

namespace pct::cli {

namespace {

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

ExampleReport run_example(std::string_view document) {
  const auto model = speclang::Model::from_text(document);
  const Implementation m1 = model.implementation("M1");
  const Implementation m2 = model.implementation("M2");
  const ProbContract p1 = model.prob_contract("P1");
  const ProbContract p2 = model.prob_contract("P2");
  const ProbContract p = model.prob_contract("P");
  const ProbContract prime = model.prob_contract("Pprime");

  ExampleReport r;
  r.alpha = sat_level(m1, p1).level;
  r.beta = sat_level(m2, p2).level;
  const ProbContract composed = compose_prob(p1, p2);
  const Implementation m = compose_implementations(m1, m2);
  r.composed = sat_level(m, composed).level;
  r.composed_pports = composed.pports();
  r.composed_vs_stated = sat_level(m, p).level;

  const RefineReport stated = refine_level(p, prime);
  r.gamma = stated.level;
  r.gamma_p_good1 = stated.p_good1;
  const RefineReport computed = refine_level(composed, prime);
  r.gamma_computed = computed.level;
  r.gamma_computed_p_good1 = computed.p_good1;
  r.vs_prime = sat_level(m, prime).level;

  // Second component moved onto fresh ports: the signatures no longer meet.
  ProbContract q2 = p2;
  Implementation n2 = m2;
  for (const std::string port : {"f2", "x", "y"}) {
    q2 = rename_port(q2, port, port + "_copy");
    n2 = rename_port(n2, port, port + "_copy");
  }
  r.disjoint_composed = sat_level(compose_implementations(m1, n2), compose_prob(p1, q2)).level;
  r.disjoint_product = r.alpha * sat_level(n2, q2).level;
  return r;
}

void print_example(std::ostream& out, const ExampleReport& r) {
  out << "alpha = sat(M1, P1) = " << format_level(r.alpha) << '\n';
  out << "beta = sat(M2, P2) = " << format_level(r.beta) << '\n';
  out << "alpha*beta = " << format_level(r.alpha_beta()) << '\n';
  out << "P1 || P2 probabilistic ports: " << join(r.composed_pports) << '\n';
  out << "sat(M1 x M2, P1 || P2) = " << format_level(r.composed)
      << ", at least alpha*beta: " << yes_no(r.composed_bound_holds()) << '\n';
  out << "sat(M1 x M2, P) = " << format_level(r.composed_vs_stated) << '\n';
  out << "gamma = refine(P, Pprime) = " << (r.gamma ? format_level(*r.gamma) : "undefined")
      << ", P(good1) = " << format_level(r.gamma_p_good1) << '\n';
  out << "refine(P1 || P2, Pprime) = " << (r.gamma_computed ? format_level(*r.gamma_computed) : "degenerate")
      << ", P(good1) = " << format_level(r.gamma_computed_p_good1) << '\n';
  out << "alpha*beta*gamma = " << format_level(r.alpha_beta_gamma()) << '\n';
  out << "sat(M1 x M2, Pprime) = " << format_level(r.vs_prime)
      << ", at least alpha*beta*gamma: " << yes_no(r.prime_bound_holds()) << '\n';
  out << "disjoint copy: sat = " << format_level(r.disjoint_composed) << ", product = "
      << format_level(r.disjoint_product) << ", equal: " << yes_no(r.disjoint_equality_holds()) << '\n';
}

}  // namespace pct::cli
