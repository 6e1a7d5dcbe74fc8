#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pct/speclang/ast.hpp"
#include "pct/speclang/diagnostics.hpp"

namespace pct::speclang {

/// Parses and checks a `.pct` document: syntax, name resolution, and the
/// semantic checks that do not need run enumeration (domains, horizon,
/// distribution tables). Throws SpecError carrying the first diagnostic.
Document parse(std::string_view text);

/// Resolution and semantic checks alone, for documents built in code.
void check(const Document& doc);

}  // namespace pct::speclang

namespace pct::speclang {

/// Ports an expression mentions, following predicate references; sorted,
/// without duplicates. A name on the right of `==` counts as a port when the
/// document declares a port of that name.
std::vector<std::string> referenced_ports(const Document& doc, const Expr& expr);

/// Reserved words cannot be used as names.
bool is_keyword(std::string_view word);

}  // namespace pct::speclang
