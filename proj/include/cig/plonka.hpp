#pragma once

#include <cig/algebra.hpp>
#include <cig/congruence.hpp>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cig {

/// The binary term operation a v b = join(x:=a, y:=b) as a table. The join
/// term may use only the variables x and y.
auto join_table(const CayleyTable & g, const Term & join) -> CayleyTable;

/// The join used for T2: x v y = y(xy).
auto t2_join() -> Term;

/// The five Płonka identities for the binary operation, with v the join:
///   P1 x v x = x
///   P2 (x v y) v z = x v (y v z)
///   P3 x v (y v z) = x v (z v y)
///   P4 y v (x1 x2) = (y v x1) v x2
///   P5 (x1 x2) v y = (x1 v y)(x2 v y)
struct P5Status
{
    std::array<bool, 5> holds{};
    std::array<std::optional<Assignment>, 5> witness;

    auto pseudopartition() const -> bool { return holds[0] && holds[1] && holds[2] && holds[3]; }
    auto partition() const -> bool { return pseudopartition() && holds[4]; }
    /// "P1 P2 P3 P4 ok; P5 FAIL witness=x1=0 x2=1 y=2" style summary.
    auto to_string() const -> std::string;
};

/// The five identities written as terms over a join term.
auto plonka_identities(const Term & join) -> std::array<Identity, 5>;

auto check_pseudopartition(const CayleyTable & g, const Term & join) -> P5Status;

/// sigma = {(a,b) : a v b = a and b v a = b}; throws NotACongruence when the
/// relation is not a congruence of g.
auto sigma(const CayleyTable & g, const Term & join) -> PartitionCongruence;

struct Fiber
{
    std::vector<Element> members; ///< global ids, ascending; local index k is members[k]
    CayleyTable table;
};

/// A semilattice-indexed system of fibers. maps[{s,t}] for s <= t in the
/// replica (s*t = t) sends local indices of fiber s to local indices of
/// fiber t. The maps are absent when the join fails P5.
struct PlonkaSystem
{
    CayleyTable replica;
    std::vector<Fiber> fibers;
    std::optional<std::map<std::pair<std::size_t, std::size_t>, std::vector<Element>>> maps;

    auto carrier_size() const -> std::size_t;
    auto leq(std::size_t s, std::size_t t) const -> bool { return replica(static_cast<Element>(s), static_cast<Element>(t)) == t; }
};

/// Builds a system whose fibers take consecutive global ids.
auto make_system(CayleyTable replica, std::vector<CayleyTable> fibers,
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Element>> maps) -> PlonkaSystem;

/// Throws InvalidArgument unless the replica is a semilattice, the members
/// partition the carrier, and the maps form a coherent system of
/// homomorphisms (identity on s <= s, closed under composition).
auto validate_system(const PlonkaSystem & sys) -> void;

auto decompose(const CayleyTable & g, const Term & join) -> PlonkaSystem;
auto plonka_sum(const PlonkaSystem & sys) -> CayleyTable;

/// A with an absorbing element n adjoined.
auto adjoin_infinity(const CayleyTable & g) -> CayleyTable;

/// x*y = k(x+y) mod n with 2k = 1 mod n.
auto cie_cyclic(std::size_t n) -> CayleyTable;

/// Least j >= 1 such that the power term x y^j is a pseudopartition
/// operation on the commutative idempotent distributive groupoid g.
auto cid_exponent(const CayleyTable & g) -> int;

/// Replica block, then each fiber headed "# fiber <id> elements <ids>",
/// then "# map <s> <t>: <global images>" lines.
auto to_text(const PlonkaSystem & sys) -> std::string;
auto parse_system(const std::string & text) -> PlonkaSystem;

} // namespace cig
