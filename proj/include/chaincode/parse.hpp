#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chaincode/metrics.hpp"
#include "chaincode/poly.hpp"

namespace chaincode {

// Polynomial expression over a ring.  Grammar, whitespace-insensitive:
//
//   expr   := term (("+" | "-") term)*
//   term   := factor ("*" factor)*
//   factor := atom ("^" uint)?
//   atom   := uint | "z" | "g" | "w" | "(" expr ")" | "-" atom
//
// "g" is the maximal-ideal generator, "w" the residue-field generator
// (legal only when s > 1); the Unicode spellings γ and ω are accepted
// as aliases.  Integer literals map via k -> k * 1_R.  Per the atom
// rule a leading minus binds to the single following atom, so -z^2
// parses as (-z)^2.  Evaluation happens in R[z]; callers reduce mod
// z^n - 1 where appropriate.  Errors are input_error carrying the
// byte offset of the offending token.
rpoly parse_poly(const std::string& src, const ring_ptr& ring);

// Residue-field modulus expression: the same grammar restricted to the
// symbol "w", evaluated over F_p.  Returns ascending coefficients
// suitable for ring_descriptor::field_modulus.
std::vector<std::uint32_t> parse_field_modulus(const std::string& src,
                                               std::uint64_t p);

// One parsed input file: ring parameters, length, generator
// expressions (kept as text until the ring exists), and optional
// analysis preferences.
struct code_spec {
    ring_descriptor ring;
    std::uint32_t n = 0;
    std::vector<std::string> generators;
    std::optional<classify_options::mode> method;
    std::optional<std::uint64_t> max_enum;
};

// Parses either the line-oriented key=value format or, when the first
// non-space character is '{', its JSON mirror.
//
// key=value keys: ring.family, ring.p, ring.s, ring.nu, ring.modulus,
// n, gen (repeatable, one per line), distance-method, max-enum.
// '#' starts a comment.  JSON: {"ring": {"family", "p", "s", "nu",
// "modulus"}, "n", "generators", "distance-method", "max-enum"}, where
// "modulus" is an expression string or an ascending coefficient array.
// Unknown and duplicate keys are errors, as are missing ring.family,
// ring.p, n, or generators.
code_spec parse_code_spec(const std::string& text);

// Reads and parses a spec file; the path is prefixed to any error.
code_spec load_code_spec(const std::string& path);

// "auto" | "torsion-search" | "exhaustive" | "formula".
classify_options::mode parse_method_name(const std::string& name);

// CHAINCODE_MAX_ENUM, when set; malformed or zero values are errors.
std::optional<std::uint64_t> env_max_enum();

} // namespace chaincode
