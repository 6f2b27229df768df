#pragma once

#include <cig/algebra.hpp>
#include <cig/bol_moufang.hpp>

#include <functional>
#include <optional>
#include <vector>

namespace cig {

struct SearchSpec
{
    std::size_t n = 1;
    std::vector<Identity> require;
    std::vector<Identity> forbid;
    bool commutative = true;
    bool idempotent = true;
};

/// Largest carrier size enumerate_models accepts for a spec.
auto search_bound(const SearchSpec & spec) -> std::size_t;

/// Lexicographic minimum of the row-major cells over all n! relabelings.
auto canonical_form(const CayleyTable & g) -> CayleyTable;
auto is_canonical(const CayleyTable & g) -> bool;
auto isomorphic(const CayleyTable & g, const CayleyTable & h) -> bool;

/// Streams one canonical representative per isomorphism class, in ascending
/// canonical order, until the callback returns false.
auto for_each_model(const SearchSpec & spec, const std::function<bool(const CayleyTable &)> & emit) -> void;

/// All models of the spec, sorted. workers > 1 splits the first branching
/// cell across threads; the result does not depend on the worker count.
auto enumerate_models(const SearchSpec & spec, unsigned workers = 1) -> std::vector<CayleyTable>;

struct SeparatingModel
{
    CayleyTable table;
    std::vector<Violation> witnesses; ///< one per unsat identity, same order
};

/// Smallest-n, then lexicographically least, CI model satisfying all of sat
/// and violating each member of unsat.
auto find_separating_model(const std::vector<Identity> & sat, const std::vector<Identity> & unsat, std::size_t max_n)
    -> std::optional<SeparatingModel>;

/// Isomorphism classes of n-element CI models of the variety.
auto count_models(std::size_t n, VarietyName variety) -> std::size_t;

/// The identities a model must satisfy to lie in the variety (beyond CI).
auto variety_identities(VarietyName variety) -> std::vector<Identity>;

} // namespace cig
