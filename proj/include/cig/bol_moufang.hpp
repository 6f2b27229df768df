#pragma once

#include <cig/algebra.hpp>

#include <bitset>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cig {

/// An identity of Bol-Moufang type in the Xij notation: X picks the variable
/// word, i and j (i < j) the bracketings of the left and right sides.
///
///   A xxyz   1 o(o(oo))
///   B xyxz   2 o((oo)o)
///   C xyyz   3 (oo)(oo)
///   D xyzx   4 (o(oo))o
///   E xyzy   5 ((oo)o)o
///   F xyzz
class BMIdentity
{
public:
    BMIdentity(char ordering, int i, int j);

    static auto parse(std::string_view name) -> BMIdentity;
    static auto from_index(std::size_t index) -> BMIdentity;

    auto ordering() const -> char { return _ordering; }
    auto left_bracketing() const -> int { return _i; }
    auto right_bracketing() const -> int { return _j; }

    /// Position in the canonical (letter, i, j) order, 0..59.
    auto index() const -> std::size_t;
    auto name() const -> std::string;
    auto identity() const -> Identity;

    auto operator<=>(const BMIdentity &) const = default;

private:
    char _ordering;
    int _i, _j;
};

inline constexpr std::size_t bm_count = 60;

/// All 60 identities in canonical order A12, A13, ..., F45.
auto enumerate_bm() -> std::vector<BMIdentity>;

/// X'j'i' under A'=F, B'=E, C'=C, D'=D, 1'=5, 2'=4, 3'=3.
auto dual(const BMIdentity & b) -> BMIdentity;

/// One satisfaction bit per identity, indexed canonically.
class IdentityProfile
{
public:
    auto operator[](std::size_t index) const -> bool { return _bits[index]; }
    auto operator[](const BMIdentity & b) const -> bool { return _bits[b.index()]; }
    auto set(std::size_t index, bool value) -> void { _bits[index] = value; }
    auto count() const -> std::size_t { return _bits.count(); }

    /// 60 characters of 0/1 in canonical order.
    auto to_string() const -> std::string;
    auto operator==(const IdentityProfile &) const -> bool = default;

private:
    std::bitset<bm_count> _bits;
};

auto classify_bm(const CayleyTable & g) -> IdentityProfile;

enum class VarietyName
{
    C,
    TwoSL,
    X,
    SL,
    T2,
    T1,
    S2,
    S1
};

auto all_varieties() -> std::vector<VarietyName>;
auto variety_name(VarietyName v) -> std::string;
auto parse_variety(std::string_view name) -> VarietyName;

/// The identities of one row of the classification table, canonical order.
auto table1_members(VarietyName v) -> std::vector<BMIdentity>;
auto table1_class(const BMIdentity & b) -> VarietyName;

/// A single identity that defines the variety relative to CI-groupoids
/// (the first member of its row); empty for C.
auto defining_identity(VarietyName v) -> std::optional<Identity>;

/// Reflexive-transitive closure of the nine covers
/// SL<X<2SL<C, SL<T1<T2<C, SL<S1<S2<C.
auto included_in(VarietyName lower, VarietyName upper) -> bool;

} // namespace cig
