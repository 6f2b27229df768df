#pragma once

#include <cig/algebra.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cig {

/// A partition of {0..n-1}, stored as block ids numbered by first appearance.
class PartitionCongruence
{
public:
    PartitionCongruence() = default;
    /// Any labelling is accepted; ids are renumbered by first appearance.
    explicit PartitionCongruence(std::vector<std::size_t> labels);

    static auto identity(std::size_t n) -> PartitionCongruence;
    static auto full(std::size_t n) -> PartitionCongruence;

    auto size() const -> std::size_t { return _block.size(); }
    auto block_of(Element a) const -> std::size_t { return _block[a]; }
    auto related(Element a, Element b) const -> bool { return _block[a] == _block[b]; }
    auto block_count() const -> std::size_t { return _count; }
    auto blocks() const -> std::vector<std::vector<Element>>;
    auto block_ids() const -> const std::vector<std::size_t> & { return _block; }

    /// Refinement order: every block of *this lies inside a block of other.
    auto refines(const PartitionCongruence & other) const -> bool;
    auto meet(const PartitionCongruence & other) const -> PartitionCongruence;
    auto join(const PartitionCongruence & other) const -> PartitionCongruence;

    /// Blocks written as "{0,1,2}{3}".
    auto to_string() const -> std::string;

    auto operator<=>(const PartitionCongruence &) const = default;

private:
    std::vector<std::size_t> _block;
    std::size_t _count = 0;
};

/// A pair a ~ a' whose products with c fall into different blocks.
struct CompatibilityWitness
{
    Element a, a_prime, c;
    bool on_left; ///< true for c*a vs c*a', false for a*c vs a'*c
};

auto to_string(const CompatibilityWitness & w) -> std::string;

auto find_incompatibility(const CayleyTable & g, const PartitionCongruence & p) -> std::optional<CompatibilityWitness>;
auto is_congruence(const CayleyTable & g, const PartitionCongruence & p) -> bool;

/// Cg(a,b): the least congruence identifying a and b.
auto principal_congruence(const CayleyTable & g, Element a, Element b) -> PartitionCongruence;

/// Quotient table on block ids.
auto quotient(const CayleyTable & g, const PartitionCongruence & p) -> CayleyTable;

class CongruenceLattice
{
public:
    explicit CongruenceLattice(std::vector<PartitionCongruence> elements);

    auto size() const -> std::size_t { return _elements.size(); }
    auto element(std::size_t i) const -> const PartitionCongruence & { return _elements[i]; }
    auto elements() const -> const std::vector<PartitionCongruence> & { return _elements; }

    auto bottom() const -> std::size_t { return 0; }
    auto top() const -> std::size_t { return _elements.size() - 1; }
    auto leq(std::size_t i, std::size_t j) const -> bool { return _elements[i].refines(_elements[j]); }
    auto meet(std::size_t i, std::size_t j) const -> std::size_t { return _meet[i * size() + j]; }
    auto join(std::size_t i, std::size_t j) const -> std::size_t { return _join[i * size() + j]; }

    /// Elements covering the bottom.
    auto atoms() const -> std::vector<std::size_t>;
    /// Length of the longest chain from bottom to top.
    auto height() const -> std::size_t;

private:
    std::vector<PartitionCongruence> _elements;
    std::vector<std::size_t> _meet, _join;

    auto index_of(const PartitionCongruence & p) const -> std::size_t;
};

/// Join closure of the principal congruences together with the identity
/// relation. Limited to n <= 12.
auto all_congruences(const CayleyTable & g) -> CongruenceLattice;

/// The quasi-identity (x^y = x^z) => x^(y v z) = x^y over all triples.
auto is_sd_meet(const CongruenceLattice & lattice) -> bool;

} // namespace cig
