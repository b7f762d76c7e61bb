#ifndef PSERIES_PARSER_HPP
#define PSERIES_PARSER_HPP

#include <map>
#include <optional>
#include <string>

#include "pseries/upops.hpp"

namespace pseries {

/// Operations requested by a .ups file: a command name plus integer options,
/// e.g. "ops hensel k=40 threads=4".
struct OpsRequest {
    std::string command;
    std::map<std::string, long> params;
};

struct ParsedInput {
    unsigned n_vars = 0;
    UPoPS upops;
    std::optional<OpsRequest> ops;
};

/// Parse a full .ups file: a "vars <n>" declaration, one "upops <expr>"
/// polynomial over X1..Xn and Y, and an optional "ops" line. '#' starts a
/// comment. Grammar of expressions (see docs/ups-format.md): + - * / ^ with
/// parentheses, ^ binding tightest, then unary minus, then * and /; division
/// only by nonzero constants. Throws ParseError with line/column.
ParsedInput parse_upops_file(const std::string& text);

/// Parse just a polynomial expression in X1..Xn and Y.
UPoPS parse_upops_expr(const std::string& expr, unsigned n_vars);

/// Canonical text of the truncation of f to total degree k: Y-terms in
/// descending degree, each coefficient in ascending part degree. Inverse of
/// parsing on canonical forms.
std::string render_parts(const UPoPS& f, int k);

/// Canonical text of one series truncated to degree k ("0" when zero).
std::string render_series(const PowerSeries& f, int k);

} // namespace pseries

#endif
