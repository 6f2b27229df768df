#include <cig/algebra.hpp>

#include <algorithm>
#include <sstream>

namespace cig {

CayleyTable::CayleyTable(std::size_t n, std::vector<Element> cells)
    : _n(n)
    , _cells(std::move(cells))
{
    if (n == 0)
        throw InvalidArgument("a Cayley table needs at least one element");
    if (_cells.size() != n * n)
        throw InvalidArgument("expected " + std::to_string(n * n) + " cells, got " + std::to_string(_cells.size()));
    for (auto c : _cells)
        if (c >= n)
            throw InvalidArgument("entry " + std::to_string(c) + " outside 0.." + std::to_string(n - 1));
}

auto CayleyTable::from_function(std::size_t n, const std::function<Element(Element, Element)> & op) -> CayleyTable
{
    std::vector<Element> cells(n * n);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            cells[a * n + b] = op(a, b);
    return CayleyTable{n, std::move(cells)};
}

auto restrict_to(const CayleyTable & g, std::span<const Element> members) -> CayleyTable
{
    std::vector<Element> local(g.size(), g.size());
    for (std::size_t k = 0; k < members.size(); ++k)
        local[members[k]] = static_cast<Element>(k);
    return CayleyTable::from_function(members.size(), [&](Element a, Element b) {
        auto p = g(members[a], members[b]);
        if (local[p] == g.size())
            throw InvalidArgument("subset is not closed: " + std::to_string(members[a]) + "*" +
                std::to_string(members[b]) + "=" + std::to_string(p));
        return local[p];
    });
}

auto direct_product(const CayleyTable & g, const CayleyTable & h) -> CayleyTable
{
    auto m = h.size();
    return CayleyTable::from_function(g.size() * m, [&](Element a, Element b) {
        return static_cast<Element>(g(a / m, b / m) * m + h(a % m, b % m));
    });
}

auto relabel(const CayleyTable & g, std::span<const Element> perm) -> CayleyTable
{
    auto n = g.size();
    std::vector<Element> cells(n * n);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            cells[perm[a] * n + perm[b]] = perm[g(a, b)];
    return CayleyTable{n, std::move(cells)};
}

// Terms

struct Term::Node
{
    std::string name;
    Term left{nullptr};
    Term right{nullptr};
};

Term::Term(std::shared_ptr<const Node> node)
    : _node(std::move(node))
{
}

auto Term::variable(std::string name) -> Term
{
    if (name.empty())
        throw InvalidArgument("empty variable name");
    return Term{std::make_shared<const Node>(Node{std::move(name)})};
}

auto Term::product(Term left, Term right) -> Term
{
    return Term{std::make_shared<const Node>(Node{{}, std::move(left), std::move(right)})};
}

auto Term::is_variable() const -> bool { return ! _node->left._node; }

auto Term::name() const -> const std::string & { return _node->name; }

auto Term::left() const -> const Term & { return _node->left; }

auto Term::right() const -> const Term & { return _node->right; }

namespace {
    void collect_variables(const Term & t, std::vector<std::string> & out)
    {
        if (t.is_variable()) {
            if (std::find(out.begin(), out.end(), t.name()) == out.end())
                out.push_back(t.name());
            return;
        }
        collect_variables(t.left(), out);
        collect_variables(t.right(), out);
    }

    void print(const Term & t, std::string & out)
    {
        if (t.is_variable()) {
            out += t.name();
            return;
        }
        out += '(';
        print(t.left(), out);
        out += ' ';
        print(t.right(), out);
        out += ')';
    }
}

auto Term::variables() const -> std::vector<std::string>
{
    std::vector<std::string> out;
    collect_variables(*this, out);
    return out;
}

auto Term::depth() const -> std::size_t
{
    if (is_variable())
        return 0;
    return 1 + std::max(left().depth(), right().depth());
}

auto Term::to_string() const -> std::string
{
    std::string out;
    print(*this, out);
    return out;
}

auto Term::operator==(const Term & other) const -> bool
{
    if (_node == other._node)
        return true;
    if (is_variable() || other.is_variable())
        return is_variable() && other.is_variable() && name() == other.name();
    return left() == other.left() && right() == other.right();
}

auto substitute(const Term & t, const std::map<std::string, Term> & by) -> Term
{
    if (t.is_variable()) {
        auto it = by.find(t.name());
        return it == by.end() ? t : it->second;
    }
    return Term::product(substitute(t.left(), by), substitute(t.right(), by));
}

auto Identity::variables() const -> std::vector<std::string>
{
    auto out = lhs.variables();
    for (auto & v : rhs.variables())
        if (std::find(out.begin(), out.end(), v) == out.end())
            out.push_back(v);
    return out;
}

auto Identity::is_regular() const -> bool
{
    auto l = lhs.variables(), r = rhs.variables();
    std::sort(l.begin(), l.end());
    std::sort(r.begin(), r.end());
    return l == r;
}

auto Identity::to_string() const -> std::string { return lhs.to_string() + " ≈ " + rhs.to_string(); }

auto eval_term(const Term & t, const Assignment & a, const CayleyTable & g) -> Element
{
    if (t.is_variable()) {
        auto it = a.find(t.name());
        if (it == a.end())
            throw UnboundVariable("variable '" + t.name() + "' has no value");
        if (it->second >= g.size())
            throw InvalidArgument("value of '" + t.name() + "' outside the carrier");
        return it->second;
    }
    return g(eval_term(t.left(), a, g), eval_term(t.right(), a, g));
}

// Compiled terms

namespace {
    auto emit(const Term & t, const std::vector<std::string> & vars, std::vector<int> & code, std::size_t depth,
        std::size_t & max_depth) -> void
    {
        max_depth = std::max(max_depth, depth + 1);
        if (t.is_variable()) {
            auto it = std::find(vars.begin(), vars.end(), t.name());
            if (it == vars.end())
                throw UnboundVariable("variable '" + t.name() + "' is not among the declared arguments");
            code.push_back(static_cast<int>(it - vars.begin()));
            return;
        }
        emit(t.left(), vars, code, depth, max_depth);
        emit(t.right(), vars, code, depth + 1, max_depth);
        code.push_back(CompiledTerm::product_op);
    }
}

CompiledTerm::CompiledTerm(const Term & t, std::vector<std::string> vars)
    : _vars(std::move(vars))
{
    emit(t, _vars, _code, 0, _stack_depth);
}

auto CompiledTerm::operator()(const CayleyTable & g, std::span<const Element> args) const -> Element
{
    Element small[32] = {};
    std::vector<Element> big;
    Element * stack = small;
    if (_stack_depth > 32) {
        big.resize(_stack_depth);
        stack = big.data();
    }
    std::size_t top = 0;
    for (int op : _code) {
        if (op == product_op) {
            --top;
            stack[top - 1] = g(stack[top - 1], stack[top]);
        }
        else
            stack[top++] = args[static_cast<std::size_t>(op)];
    }
    return stack[0];
}

namespace {
    // Odometer over all n^k argument vectors; f returns false to stop.
    template <typename F>
    auto for_each_tuple(std::size_t n, std::size_t k, F && f) -> void
    {
        std::vector<Element> args(k, 0);
        while (true) {
            if (! f(std::span<const Element>{args}))
                return;
            std::size_t pos = k;
            while (pos > 0) {
                --pos;
                if (++args[pos] < n)
                    break;
                args[pos] = 0;
                if (pos == 0)
                    return;
            }
            if (k == 0)
                return;
        }
    }
}

auto find_violation(const CayleyTable & g, const Identity & id) -> std::optional<Violation>
{
    auto vars = id.variables();
    CompiledTerm lhs{id.lhs, vars}, rhs{id.rhs, vars};
    std::optional<Violation> found;
    for_each_tuple(g.size(), vars.size(), [&](std::span<const Element> args) {
        auto l = lhs(g, args), r = rhs(g, args);
        if (l == r)
            return true;
        Assignment a;
        for (std::size_t i = 0; i < vars.size(); ++i)
            a[vars[i]] = args[i];
        found = Violation{std::move(a), l, r};
        return false;
    });
    return found;
}

auto check_identity(const CayleyTable & g, const Identity & id) -> bool { return ! find_violation(g, id); }

auto to_string(const Violation & v) -> std::string
{
    std::ostringstream out;
    bool first = true;
    for (auto & [name, value] : v.assignment) {
        out << (first ? "" : ",") << name << "=" << value;
        first = false;
    }
    out << " (" << v.lhs_value << "≠" << v.rhs_value << ")";
    return out.str();
}

namespace laws {
    namespace {
        auto var(const char * n) { return Term::variable(n); }
    }

    auto commutative() -> Identity { return {var("x") * var("y"), var("y") * var("x")}; }
    auto idempotent() -> Identity { return {var("x") * var("x"), var("x")}; }
    auto associative() -> Identity
    {
        return {var("x") * (var("y") * var("z")), (var("x") * var("y")) * var("z")};
    }
    auto two_semilattice() -> Identity { return {var("x") * (var("x") * var("y")), var("x") * var("y")}; }
    auto squag() -> Identity { return {var("x") * (var("x") * var("y")), var("y")}; }
    auto distributive() -> Identity
    {
        return {var("x") * (var("y") * var("z")), (var("x") * var("y")) * (var("x") * var("z"))};
    }
    auto entropic() -> Identity
    {
        return {(var("x") * var("y")) * (var("z") * var("w")), (var("x") * var("z")) * (var("y") * var("w"))};
    }
}

namespace {
    struct PropertyName
    {
        Property p;
        const char * name;
    };

    constexpr PropertyName property_names[] = {
        {Property::commutative, "commutative"},
        {Property::idempotent, "idempotent"},
        {Property::associative, "associative"},
        {Property::two_semilattice, "two-semilattice"},
        {Property::distributive, "distributive"},
        {Property::entropic, "entropic"},
        {Property::latin_square, "latin-square"},
        {Property::squag, "squag"},
        {Property::semilattice, "semilattice"},
    };

    auto is_latin(const CayleyTable & g) -> bool
    {
        auto n = g.size();
        std::vector<char> seen(n);
        for (Element a = 0; a < n; ++a) {
            std::fill(seen.begin(), seen.end(), 0);
            for (Element b = 0; b < n; ++b)
                if (std::exchange(seen[g(a, b)], 1))
                    return false;
            std::fill(seen.begin(), seen.end(), 0);
            for (Element b = 0; b < n; ++b)
                if (std::exchange(seen[g(b, a)], 1))
                    return false;
        }
        return true;
    }
}

auto property_name(Property p) -> std::string
{
    for (auto & e : property_names)
        if (e.p == p)
            return e.name;
    return "?";
}

auto parse_property(const std::string & name) -> Property
{
    for (auto & e : property_names)
        if (name == e.name)
            return e.p;
    throw InvalidArgument("unknown property '" + name + "'");
}

auto all_properties() -> std::vector<Property>
{
    std::vector<Property> out;
    for (auto & e : property_names)
        out.push_back(e.p);
    return out;
}

auto defining_identities(Property p) -> std::vector<Identity>
{
    switch (p) {
    case Property::commutative: return {laws::commutative()};
    case Property::idempotent: return {laws::idempotent()};
    case Property::associative: return {laws::associative()};
    case Property::two_semilattice: return {laws::commutative(), laws::idempotent(), laws::two_semilattice()};
    case Property::distributive: return {laws::distributive()};
    case Property::entropic: return {laws::entropic()};
    case Property::latin_square: return {};
    case Property::squag: return {laws::commutative(), laws::idempotent(), laws::squag()};
    case Property::semilattice: return {laws::commutative(), laws::idempotent(), laws::associative()};
    }
    return {};
}

auto check_property(const CayleyTable & g, Property p) -> bool
{
    if (p == Property::latin_square)
        return is_latin(g);
    for (auto & id : defining_identities(p))
        if (! check_identity(g, id))
            return false;
    return true;
}

auto power_term(const std::string & x, const std::string & y, int j) -> Term
{
    if (j < 1)
        throw InvalidExponent("power terms need j >= 1, got " + std::to_string(j));
    auto yt = Term::variable(y);
    auto t = Term::variable(x) * yt;
    for (int i = 1; i < j; ++i)
        t = t * yt;
    return t;
}

auto TermCondition::arity() const -> std::size_t
{
    switch (kind) {
    case Kind::wnu:
    case Kind::nu: return k;
    case Kind::maltsev: return 3;
    case Kind::edge: return k + 1;
    }
    return 0;
}

auto TermCondition::to_string() const -> std::string
{
    switch (kind) {
    case Kind::wnu: return "WNU(" + std::to_string(k) + ")";
    case Kind::nu: return "NU(" + std::to_string(k) + ")";
    case Kind::maltsev: return "Maltsev";
    case Kind::edge: return std::to_string(k) + "-edge";
    }
    return "?";
}

auto term_condition(const CayleyTable & g, const Term & t, const std::vector<std::string> & vars,
    TermCondition condition) -> bool
{
    if ((condition.kind == TermCondition::Kind::wnu || condition.kind == TermCondition::Kind::nu ||
            condition.kind == TermCondition::Kind::edge) &&
        condition.k < 2)
        throw InvalidArgument(condition.to_string() + " needs k >= 2");
    auto arity = condition.arity();
    if (vars.size() != arity)
        throw ArityMismatch(condition.to_string() + " needs " + std::to_string(arity) + " arguments, term declares " +
            std::to_string(vars.size()));
    for (auto & v : t.variables())
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
            throw ArityMismatch("term uses undeclared variable '" + v + "'");

    CompiledTerm f{t, vars};
    auto n = g.size();
    std::vector<Element> args(arity);
    // Evaluates f at the all-x vector with y in the given positions.
    auto at = [&](Element x, Element y, std::initializer_list<std::size_t> ys) {
        std::fill(args.begin(), args.end(), x);
        for (auto p : ys)
            args[p] = y;
        return f(g, args);
    };

    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y) {
            switch (condition.kind) {
            case TermCondition::Kind::wnu:
            case TermCondition::Kind::nu: {
                if (at(x, x, {}) != x)
                    return false;
                auto first = at(x, y, {0});
                for (std::size_t p = 1; p < arity; ++p)
                    if (at(x, y, {p}) != first)
                        return false;
                if (condition.kind == TermCondition::Kind::nu && first != x)
                    return false;
                break;
            }
            case TermCondition::Kind::maltsev:
                // q(x,y,y) = x and q(y,y,x) = x
                args = {x, y, y};
                if (f(g, args) != x)
                    return false;
                args = {y, y, x};
                if (f(g, args) != x)
                    return false;
                break;
            case TermCondition::Kind::edge:
                // Background y, x in positions {0,1}, {0,2}, then each of 3..k alone.
                if (at(y, x, {0, 1}) != y || at(y, x, {0, 2}) != y)
                    return false;
                for (std::size_t p = 3; p < arity; ++p)
                    if (at(y, x, {p}) != y)
                        return false;
                break;
            }
        }
    return true;
}

auto latin_expand(const CayleyTable & g) -> Quasigroup
{
    if (! is_latin(g))
        throw NotLatin("some row or column of the table repeats an element");
    auto n = g.size();
    std::vector<Element> left(n * n), right(n * n);
    for (Element a = 0; a < n; ++a)
        for (Element c = 0; c < n; ++c) {
            left[a * n + g(a, c)] = c;  // a \ (a c) = c
            right[g(c, a) * n + a] = c; // (c a) / a = c
        }
    return {g, CayleyTable{n, std::move(left)}, CayleyTable{n, std::move(right)}};
}

auto quasigroup_maltsev(const Quasigroup & q, Element x, Element y, Element z) -> Element
{
    return q.mul(q.right_div(x, q.left_div(y, y)), q.left_div(y, z));
}

} // namespace cig
