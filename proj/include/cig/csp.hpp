#pragma once

#include <cig/algebra.hpp>
#include <cig/congruence.hpp>
#include <cig/plonka.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cig {

using Tuple = std::vector<Element>;

/// A set of tuples; coordinate i ranges over the carrier of sort signature[i].
/// Tuples are kept sorted and unique.
class Relation
{
public:
    Relation() = default;
    Relation(std::vector<std::size_t> signature, std::vector<Tuple> tuples);

    /// Single-sorted relation of the given arity over sort 0.
    static auto single_sorted(std::size_t arity, std::vector<Tuple> tuples) -> Relation;

    auto arity() const -> std::size_t { return _signature.size(); }
    auto signature() const -> const std::vector<std::size_t> & { return _signature; }
    auto tuples() const -> const std::vector<Tuple> & { return _tuples; }
    auto size() const -> std::size_t { return _tuples.size(); }
    auto empty() const -> bool { return _tuples.empty(); }
    auto contains(const Tuple & t) const -> bool;

    auto operator==(const Relation &) const -> bool = default;

private:
    std::vector<std::size_t> _signature;
    std::vector<Tuple> _tuples;
};

struct Constraint
{
    std::vector<std::size_t> scope;
    Relation relation;
};

/// A CSP instance over one or more sorts. Values of variable v are local
/// elements of sorts[domain[v]].
struct CSPInstance
{
    std::vector<CayleyTable> sorts;
    std::vector<std::string> names;
    std::vector<std::size_t> domain;
    std::vector<Constraint> constraints;

    auto variable_count() const -> std::size_t { return names.size(); }
    auto add_variable(std::string name, std::size_t sort = 0) -> std::size_t;
    auto add_constraint(std::vector<std::size_t> scope, std::vector<Tuple> tuples) -> void;

    /// Throws InvalidArgument unless scopes, signatures and tuples agree
    /// with the domain function.
    auto validate() const -> void;
};

using Solution = std::vector<Element>;

auto satisfies(const CSPInstance & inst, const Solution & f) -> bool;

/// Closed under the coordinatewise product of every pair of tuples.
auto is_invariant(const Relation & r, const CayleyTable & g) -> bool;
/// Many-sorted form: coordinate i uses sorts[signature[i]].
auto is_invariant(const Relation & r, const std::vector<CayleyTable> & sorts) -> bool;

/// All m-ary operations on {0..n-1} (tables of length n^m, argument tuples
/// in lexicographic order) preserving every relation. m <= 2, n <= 4.
auto polymorphisms(const std::vector<Relation> & rels, std::size_t m, std::size_t n) -> std::vector<std::vector<Element>>;

/// Complete search; returns the lexicographically least solution.
auto solve_brute(const CSPInstance & inst) -> std::optional<Solution>;

struct ConsistencyResult
{
    std::optional<Solution> solution;
    bool refuted_without_search = false;
    std::size_t nodes = 0;
};

/// (2,3)-consistency pruning followed by forward-checking backtracking.
/// Returns the same solution as solve_brute.
auto solve_consistency(const CSPInstance & inst) -> ConsistencyResult;

/// Left fold of the join table over the elements in the given order.
auto fold_join(const CayleyTable & join, const std::vector<Element> & elements) -> Element;

/// The many-sorted instance built from a single-sorted instance over an
/// idempotent algebra with a pseudopartition operation.
struct Reduction
{
    CSPInstance reduced;
    std::vector<std::vector<Element>> b;     ///< B_v after the subdirect pass
    std::vector<Element> a;                  ///< a_v, the fold of B_v
    PartitionCongruence sigma;
    std::vector<std::vector<Element>> fibers; ///< global members of each sigma block
    CayleyTable join;                        ///< join table on the original carrier
    bool empty_projection = false;           ///< some B_v was empty

    /// v -> f(v) v a_v, as local elements of the reduced sorts.
    auto transform(const Solution & f) const -> Solution;
    /// Maps a reduced solution back to original elements.
    auto lift(const Solution & h) const -> Solution;
};

auto reduce_theorem41(const CSPInstance & inst, const Term & join) -> Reduction;

/// Re-domains every variable over the direct product of all sorts; element
/// encoding is mixed radix with sort 0 most significant.
auto multisorted_to_product(const CSPInstance & inst) -> CSPInstance;
/// Coordinate of a product element in the given sort of the original instance.
auto product_coordinate(const CSPInstance & inst, Element p, std::size_t sort) -> Element;

/// Subuniverse of g^k generated by the tuples.
auto subpower_closure(const CayleyTable & g, std::vector<Tuple> generators) -> std::vector<Tuple>;

/// Random instance whose relations are subpowers of the template.
auto gen_instance(std::uint64_t seed, const CayleyTable & tmpl, std::size_t vars, std::size_t constraints,
    std::size_t max_arity) -> CSPInstance;

/// Line format: "sorts k", then k .alg blocks or "@file <path>" lines,
/// "var <name> <sort>", and "con <v1> ... <vk>" with "t e1 ... ek" lines up
/// to "end". '#' starts a comment line.
auto parse_csp(const std::string & text, const std::filesystem::path & base_dir = ".") -> CSPInstance;
auto load_csp(const std::filesystem::path & path) -> CSPInstance;
auto to_text(const CSPInstance & inst) -> std::string;

} // namespace cig
