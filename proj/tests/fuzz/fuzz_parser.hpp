#pragma once

// Mutation fuzzer for the document parser. Inputs come from well-formed
// documents (the bundled example and generated ones) with bytes and tokens
// flipped, spliced or cut, plus plain token soup. Every input must either
// parse, and then survive print and re-parse, or raise a located
// diagnostic. Anything else counts as a crash.

#include <exception>
#include <string>
#include <vector>

#include "docgen.hpp"
#include "pct/cli.hpp"
#include "pct/speclang/parser.hpp"
#include "pct/speclang/printer.hpp"

namespace pct::test {

struct FuzzStats {
  std::size_t inputs = 0;
  std::size_t parsed = 0;
  std::size_t diagnostics = 0;
  std::size_t crashes = 0;           // non-diagnostic exceptions
  std::size_t unlocated = 0;         // diagnostics without a usable span
  std::size_t roundtrip_failures = 0;
  std::string first_problem;
};

namespace fuzz_detail {

inline const std::vector<std::string>& fragments() {
  static const std::vector<std::string> f{
      "horizon", "port", "bool", "controlled", "prob", "bernoulli(", "predicate", "dist", "over", "table",
      "contract", "impl", "probcontract", "ports", "controls", "assume", "guarantee", "behavior", "true",
      "false", "not", "and", "or", "implies", "iff", "always(", "never(", "eventually(", "at(", "prev(",
      "init", "runs", "{", "}", "(", ")", "[", "]", ";", ":", ",", "=", "==", "!=", "1/2", "0.5", "3", "x",
      "a", "//", "\n", " ", "\"", "@", "#", "\xff", "99999999999999999999", "-1", "1/0", "0/0"};
  return f;
}

inline std::string mutate(oracle::Rng& rng, std::string s) {
  const int edits = rng.between(1, 6);
  for (int i = 0; i < edits; ++i) {
    const std::size_t pos = s.empty() ? 0 : rng.below(s.size() + 1);
    switch (rng.below(7)) {
      case 0:
        if (!s.empty() && pos < s.size()) s[pos] = static_cast<char>(rng.below(256));
        break;
      case 1:
        if (pos < s.size()) s.erase(pos, 1 + rng.below(12));
        break;
      case 2:
        s.insert(pos, fragments()[rng.below(fragments().size())]);
        break;
      case 3:
        s.resize(pos);
        break;
      case 4:
        if (!s.empty()) {
          const std::size_t from = rng.below(s.size());
          s.insert(pos, s.substr(from, 1 + rng.below(40)));
        }
        break;
      case 5:
        s.insert(pos, std::string(1 + rng.below(300), "(["[rng.below(2)]));
        break;
      default:
        if (pos < s.size()) std::swap(s[pos], s[rng.below(s.size())]);
        break;
    }
  }
  return s;
}

inline std::string soup(oracle::Rng& rng) {
  std::string s;
  const int n = rng.between(0, 60);
  for (int i = 0; i < n; ++i) s += fragments()[rng.below(fragments().size())] + (rng.chance(1, 2) ? " " : "");
  return s;
}

}  // namespace fuzz_detail

inline FuzzStats fuzz_parser(std::uint64_t seed, std::size_t count) {
  using namespace speclang;
  FuzzStats st;
  oracle::Rng rng(seed);
  std::vector<std::string> corpus{std::string(cli::example_document())};
  for (std::uint64_t k = 0; k < 64; ++k) {
    DocGen gen(seed * 1000 + k, k);
    corpus.push_back(gen.document());
  }
  auto note = [&](const std::string& what, const std::string& input) {
    if (st.first_problem.empty()) st.first_problem = what + " on input:\n" + input;
  };
  for (std::size_t i = 0; i < count; ++i) {
    const std::string input = rng.chance(1, 10) ? fuzz_detail::soup(rng)
                                                : fuzz_detail::mutate(rng, corpus[rng.below(corpus.size())]);
    ++st.inputs;
    try {
      const Document d = parse(input);
      ++st.parsed;
      const std::string printed = print(d);
      if (!same(parse(printed), d) || print(parse(printed)) != printed) {
        ++st.roundtrip_failures;
        note("round-trip mismatch", input);
      }
    } catch (const SpecError& e) {
      ++st.diagnostics;
      const Span& sp = e.diagnostic().span;
      if (sp.begin.line < 1 || sp.begin.column < 1 || e.diagnostic().message.empty()) {
        ++st.unlocated;
        note("unlocated diagnostic", input);
      }
    } catch (const std::exception& e) {
      ++st.crashes;
      note(std::string("exception '") + e.what() + "'", input);
    } catch (...) {
      ++st.crashes;
      note("unknown exception", input);
    }
  }
  return st;
}

}  // namespace pct::test
