#pragma once

// Random well-formed documents, as text. Structure and layout draw from
// separate generators so one structure can be spelled several ways.

#include <string>
#include <vector>

#include "pct/oracle/generator.hpp"

namespace pct::test {

class DocGen {
 public:
  DocGen(std::uint64_t structure_seed, std::uint64_t layout_seed)
      : rng_(structure_seed), layout_(layout_seed) {}

  std::string document() {
    h_ = rng_.between(1, 3);
    out_.clear();
    line("horizon " + std::to_string(h_) + ";");
    line("port a : bool;");
    line("port b : bool controlled;");
    line("port m : {r, s, t};");
    line("port f : bool prob bernoulli(" + std::to_string(rng_.between(0, 4)) + "/4);");
    const int preds = rng_.between(0, 2);
    for (int i = 0; i < preds; ++i) {
      line("predicate q" + std::to_string(i) + " =" + ws() + expr(3) + ";");
      ++predicates_;
    }
    if (rng_.chance(1, 2)) {
      std::string t = "dist D over (f) = table {";
      const int n = 1 << h_;
      for (int i = 0; i < n; ++i) t += ws() + "(f = " + history(i) + ") : 1/" + std::to_string(n) + ";";
      line(t + " };");
      dist_ = true;
    }
    const int contracts = rng_.between(1, 3);
    for (int i = 0; i < contracts; ++i) {
      const bool explicit_ports = rng_.chance(1, 2);
      std::string c = "contract C" + std::to_string(i) + " {";
      if (explicit_ports) c += ws() + "ports a, b, f, m;" + ws() + "controls b;";
      c += ws() + "assume " + expr(3) + ";" + ws() + "guarantee " + expr(4) + "; }";
      line(c);
      if (explicit_ports && rng_.chance(2, 3)) {
        std::string p = "probcontract P" + std::to_string(i) + " { contract C" + std::to_string(i) + "; prob f;";
        if (dist_ && rng_.chance(1, 2)) p += " dist D;";
        line(p + " }");
      }
    }
    if (rng_.chance(1, 2)) line("impl M {" + ws() + "ports a, b, f, m;" + ws() + "controls b;" + ws() + "behavior " + expr(3) + "; }");
    return out_;
  }

  int horizon() const { return h_; }

 private:
  std::string ws() {
    switch (layout_.below(4)) {
      case 0: return " ";
      case 1: return "  ";
      case 2: return "\n  ";
      default: return rng_comment();
    }
  }

  std::string rng_comment() { return layout_.chance(1, 2) ? " // note\n" : "\t"; }

  void line(const std::string& s) { out_ += s + (layout_.chance(1, 3) ? "\n\n" : "\n"); }

  std::string bool_value() { return rng_.chance(1, 2) ? "true" : "false"; }

  std::string history(int bits) {
    std::string s = "[";
    for (int t = 0; t < h_; ++t) s += std::string(t ? ", " : "") + (((bits >> t) & 1) ? "true" : "false");
    return s + "]";
  }

  std::string paren(const std::string& s) { return layout_.chance(1, 4) ? "(" + s + ")" : s; }

  std::string atom() {
    switch (rng_.below(predicates_ > 0 ? 11 : 10)) {
      case 0: return bool_value();
      case 1: return "a";
      case 2: return "b";
      case 3: return "f";
      case 4: return std::string("m ") + (rng_.chance(1, 2) ? "==" : "!=") + " " + "rst"[rng_.below(3)];
      case 5: return "a == b";
      case 6: return "prev(a init " + bool_value() + ")";
      case 7: return std::string("m == prev(m init ") + "rst"[rng_.below(3)] + ")";
      case 8: return "runs { (a = " + history(static_cast<int>(rng_.below(1u << h_))) + ") }";
      case 9: return "b != prev(f init " + bool_value() + ")";
      default: return "q" + std::to_string(rng_.below(static_cast<std::uint64_t>(predicates_)));
    }
  }

  std::string expr(int depth) {
    if (depth == 0 || rng_.chance(1, 3)) return atom();
    static const char* const binary[] = {" and ", " or ", " implies ", " iff "};
    switch (rng_.below(7)) {
      case 0: return "not " + paren_always(expr(depth - 1));
      case 1: return "always(" + expr(depth - 1) + ")";
      case 2: return "never(" + expr(depth - 1) + ")";
      case 3: return "eventually(" + expr(depth - 1) + ")";
      case 4: return "at(" + std::to_string(rng_.below(static_cast<std::uint64_t>(h_))) + ", " + expr(depth - 1) + ")";
      default:
        return paren("(" + expr(depth - 1) + ")" + binary[rng_.below(4)] + "(" + expr(depth - 1) + ")");
    }
  }

  std::string paren_always(const std::string& s) { return "(" + s + ")"; }

  oracle::Rng rng_;
  oracle::Rng layout_;
  int h_ = 1;
  int predicates_ = 0;
  bool dist_ = false;
  std::string out_;
};

}  // namespace pct::test
