#pragma once

#include <string>

#include "pct/errors.hpp"
#include "pct/speclang/ast.hpp"

namespace pct::speclang {

enum class DiagKind { lexical, syntax, resolution, semantic };

struct Diagnostic {
  DiagKind kind;
  Span span;
  std::string message;

  /// `line:col: kind error: message`
  std::string format() const;
};

class SpecError : public Error {
 public:
  explicit SpecError(Diagnostic diag);
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

}  // namespace pct::speclang
