#pragma once

#include <string>

#include "pct/speclang/ast.hpp"

namespace pct::speclang {

/// Normalized text: declarations grouped by kind and sorted by name, one
/// space between tokens, only the parentheses the grammar needs. Parsing the
/// result gives back a structurally equal document.
std::string print(const Document& doc);

std::string print(const Expr& expr);
std::string print(const RunLiteral& run);

}  // namespace pct::speclang
