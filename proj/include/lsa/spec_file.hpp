#pragma once

// Polynomial description files.
//
//   file       := (blank | comment | section | assignment)*
//   comment    := '#' text
//   section    := '[' ('term' | 'ratio' | 'gap') ']'
//   assignment := key '=' value
//
// Top-level keys: name, base_ratio (expression), length (rational, default 1).
// [term] keys: exponent (expression), multiplicity (expression, default 1).
// [ratio] keys: value (rational), count (positive integer, default 1).
// [gap] keys: value (rational).
// Either base_ratio with [term] sections, or [ratio] and [gap] sections
// describing a self-similar string. Expressions use the RealExpr grammar.

#include <optional>
#include <string>
#include <string_view>

#include "lsa/dirichlet.hpp"

namespace lsa {

struct PolynomialSpec {
  std::string name;
  DirichletPolynomial f;
  /// Present for self-similar string descriptions.
  std::optional<GeometricZeta> zeta;
};

/// Throws ParseError with 1-based line and column.
PolynomialSpec parse_polynomial_spec(std::string_view text);

/// Reads and parses a file; throws ValidationError when it cannot be read.
PolynomialSpec load_polynomial_spec(const std::string& path);

}  // namespace lsa
