#pragma once

#include <cig/error.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cig {

using Element = std::uint32_t;

/// A finite groupoid on {0..n-1}, stored row-major: entry (i,j) is i*j.
///
/// Commutativity and idempotence are deliberately not enforced so that
/// counterexamples such as left-zero semigroups stay representable.
class CayleyTable
{
public:
    CayleyTable() = default;
    CayleyTable(std::size_t n, std::vector<Element> cells);

    static auto from_function(std::size_t n, const std::function<Element(Element, Element)> & op) -> CayleyTable;

    auto size() const -> std::size_t { return _n; }
    auto operator()(Element a, Element b) const -> Element { return _cells[a * _n + b]; }
    auto cells() const -> std::span<const Element> { return _cells; }
    auto row(Element a) const -> std::span<const Element> { return std::span{_cells}.subspan(a * _n, _n); }

    /// Lexicographic on (n, row-major cells), which is the canonical-string order.
    auto operator<=>(const CayleyTable &) const = default;
    auto operator==(const CayleyTable &) const -> bool = default;

private:
    std::size_t _n = 0;
    std::vector<Element> _cells;
};

/// Sub-table on a subset closed under the operation. Local index k stands for members[k].
auto restrict_to(const CayleyTable & g, std::span<const Element> members) -> CayleyTable;

/// Direct product; the pair (a,b) is encoded as a * h.size() + b.
auto direct_product(const CayleyTable & g, const CayleyTable & h) -> CayleyTable;

/// Relabels g along the bijection perm: the result maps (perm[a], perm[b]) to perm[a*b].
auto relabel(const CayleyTable & g, std::span<const Element> perm) -> CayleyTable;

/// A groupoid term: a variable or a fully parenthesized product of two terms.
class Term
{
public:
    static auto variable(std::string name) -> Term;
    static auto product(Term left, Term right) -> Term;

    auto is_variable() const -> bool;
    auto name() const -> const std::string &;
    auto left() const -> const Term &;
    auto right() const -> const Term &;

    /// Variables in order of first occurrence.
    auto variables() const -> std::vector<std::string>;
    auto depth() const -> std::size_t;

    /// Fully parenthesized form, e.g. "(x (y z))".
    auto to_string() const -> std::string;

    auto operator==(const Term & other) const -> bool;

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> _node;
};

inline auto operator*(const Term & a, const Term & b) -> Term { return Term::product(a, b); }

/// Replaces each variable named in the map; other variables are left alone.
auto substitute(const Term & t, const std::map<std::string, Term> & by) -> Term;

struct Identity
{
    Term lhs;
    Term rhs;

    /// Union of both sides' variables, lhs first.
    auto variables() const -> std::vector<std::string>;
    auto is_regular() const -> bool;
    auto to_string() const -> std::string;
    auto operator==(const Identity &) const -> bool = default;
};

using Assignment = std::map<std::string, Element>;

auto eval_term(const Term & t, const Assignment & a, const CayleyTable & g) -> Element;

/// A term flattened to postfix code against a declared variable order.
/// Evaluation takes the arguments positionally.
class CompiledTerm
{
public:
    CompiledTerm(const Term & t, std::vector<std::string> vars);

    auto arity() const -> std::size_t { return _vars.size(); }
    auto variables() const -> const std::vector<std::string> & { return _vars; }
    auto operator()(const CayleyTable & g, std::span<const Element> args) const -> Element;

    static constexpr int product_op = -1;
    auto code() const -> std::span<const int> { return _code; }
    auto stack_depth() const -> std::size_t { return _stack_depth; }

private:
    std::vector<std::string> _vars;
    std::vector<int> _code;
    std::size_t _stack_depth = 0;
};

struct Violation
{
    Assignment assignment;
    Element lhs_value;
    Element rhs_value;
};

/// Exhaustive search over all n^k assignments; returns the first failing one.
auto find_violation(const CayleyTable & g, const Identity & id) -> std::optional<Violation>;
auto check_identity(const CayleyTable & g, const Identity & id) -> bool;

auto to_string(const Violation & v) -> std::string;

/// Named laws used throughout, all over the variables x, y, z, w.
namespace laws {
    auto commutative() -> Identity;
    auto idempotent() -> Identity;
    auto associative() -> Identity;
    auto two_semilattice() -> Identity;
    auto squag() -> Identity;
    auto distributive() -> Identity;
    auto entropic() -> Identity;
}

enum class Property
{
    commutative,
    idempotent,
    associative,
    two_semilattice,
    distributive,
    entropic,
    latin_square,
    squag,
    semilattice
};

auto property_name(Property p) -> std::string;
auto parse_property(const std::string & name) -> Property;
auto all_properties() -> std::vector<Property>;

/// The identities defining a property; empty for latin-square, which is
/// not equational.
auto defining_identities(Property p) -> std::vector<Identity>;
auto check_property(const CayleyTable & g, Property p) -> bool;

/// Left-nested x y^j: xy^1 = (x y), xy^(j+1) = ((xy^j) y).
auto power_term(const std::string & x, const std::string & y, int j) -> Term;

struct TermCondition
{
    enum class Kind
    {
        wnu,
        nu,
        maltsev,
        edge
    };
    Kind kind;
    std::size_t k = 0; ///< arity for WNU/NU, k for k-edge; unused for Maltsev

    static auto wnu(std::size_t k) -> TermCondition { return {Kind::wnu, k}; }
    static auto nu(std::size_t k) -> TermCondition { return {Kind::nu, k}; }
    static auto maltsev() -> TermCondition { return {Kind::maltsev, 3}; }
    static auto edge(std::size_t k) -> TermCondition { return {Kind::edge, k}; }

    auto arity() const -> std::size_t;
    auto to_string() const -> std::string;
};

/// Checks the defining identity schema of the condition for the term
/// operation t(vars...) over g. vars fixes the argument positions.
auto term_condition(const CayleyTable & g, const Term & t, const std::vector<std::string> & vars,
    TermCondition condition) -> bool;

struct Quasigroup
{
    CayleyTable mul;
    CayleyTable left_div;  ///< left_div(a,b) = the c with a*c = b
    CayleyTable right_div; ///< right_div(b,a) = the d with d*a = b
};

auto latin_expand(const CayleyTable & g) -> Quasigroup;

/// The quasigroup Maltsev operation (x/(y\y)) * (y\z).
auto quasigroup_maltsev(const Quasigroup & q, Element x, Element y, Element z) -> Element;

} // namespace cig
