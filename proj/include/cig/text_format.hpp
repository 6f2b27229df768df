#pragma once

#include <cig/algebra.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace cig {

/// Parses term := variable | '(' term ' ' term ')'. The shorthand a*b is
/// accepted and normalized to (a b); '*' associates to the left.
auto parse_term(std::string_view text) -> Term;

/// Parses "lhs = rhs" or "lhs ≈ rhs".
auto parse_identity(std::string_view text) -> Identity;

/// Evaluates a ground expression written with digits for elements and
/// juxtaposition or '·' for the product, e.g. "0(0·1)" or "((0·1)1)2".
/// Juxtaposition associates to the left.
auto eval_ground(std::string_view text, const CayleyTable & g) -> Element;

/// Reads one .alg block: optional '#' comment lines, then n, then n rows.
/// Returns false at end of input before any block starts.
auto read_alg(std::istream & in, CayleyTable & out) -> bool;
auto parse_alg(std::string_view text) -> CayleyTable;
auto load_alg(const std::filesystem::path & path) -> CayleyTable;

/// Bit-exact serialization: n, then n rows, single spaces, '\n' line ends.
auto to_alg(const CayleyTable & g) -> std::string;

} // namespace cig
