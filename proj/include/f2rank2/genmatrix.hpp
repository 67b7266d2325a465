#pragma once

#include <stdexcept>
#include <string>

#include "f2rank2/space.hpp"

namespace f2rank2 {

struct GenMatrixParseError : std::runtime_error {
    size_t pos;
    GenMatrixParseError(const std::string& what, size_t pos_)
        : std::runtime_error(what + " (at position " + std::to_string(pos_) + ")"), pos(pos_) {}
};

// Parses generic-matrix notation:
//   matrix := '[' row (';' row)* ']'
//   row    := expr (',' expr)*
//   expr   := term ('+' term)*
//   term   := '0' | '1' | letter        (letters 'a'..'z')
// Repeated letters denote the same F2 scalar. Whitespace is ignored.
// The translation space is the span of the per-letter coefficient matrices;
// the base is the constant matrix. The result is linear iff the base lies in
// the translation space.
AffineMatrixSpace parse_generic(const std::string& text);

// Deterministic inverse-direction printer: letters 'a','b',... are assigned
// to the canonical RREF basis in order, so parse_generic(format_generic(s))
// reproduces s exactly. dim <= 26.
std::string format_generic(const AffineMatrixSpace& s);
std::string format_generic(const MatrixSpace& v);

}  // namespace f2rank2
