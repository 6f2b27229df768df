#include <cig/csp.hpp>

#include <cig/text_format.hpp>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace cig {

namespace {
    constexpr double brute_bound = 1e7;
    constexpr std::size_t polymorphism_cap = 1'000'000;
    constexpr std::size_t product_carrier_bound = 256;
    constexpr std::size_t lifted_relation_bound = 1'000'000;

    auto sort_size(const CSPInstance & inst, std::size_t v) -> std::size_t { return inst.sorts[inst.domain[v]].size(); }

    // Constraints grouped by the largest variable of their scope, so a
    // variable-order search can check each one as soon as it is decided.
    auto constraints_by_last_variable(const CSPInstance & inst) -> std::vector<std::vector<std::size_t>>
    {
        std::vector<std::vector<std::size_t>> out(inst.variable_count());
        for (std::size_t c = 0; c < inst.constraints.size(); ++c) {
            auto & scope = inst.constraints[c].scope;
            if (! scope.empty())
                out[*std::max_element(scope.begin(), scope.end())].push_back(c);
        }
        return out;
    }

    auto holds_on(const Constraint & c, const Solution & f) -> bool
    {
        Tuple t;
        t.reserve(c.scope.size());
        for (auto v : c.scope)
            t.push_back(f[v]);
        return c.relation.contains(t);
    }

    auto nullary_ok(const CSPInstance & inst) -> bool
    {
        for (auto & c : inst.constraints)
            if (c.scope.empty() && c.relation.empty())
                return false;
        return true;
    }

    auto split_words(const std::string & line) -> std::vector<std::string>
    {
        std::istringstream in{line};
        std::vector<std::string> out;
        std::string w;
        while (in >> w)
            out.push_back(w);
        return out;
    }

    auto to_number(const std::string & word, const std::string & line) -> std::size_t
    {
        std::size_t used = 0;
        unsigned long value = 0;
        try {
            value = std::stoul(word, &used);
        }
        catch (const std::exception &) {
            used = 0;
        }
        if (used != word.size() || word.empty())
            throw ParseError("expected a number, got '" + word + "' in '" + line + "'");
        return value;
    }
}

Relation::Relation(std::vector<std::size_t> signature, std::vector<Tuple> tuples)
    : _signature(std::move(signature))
    , _tuples(std::move(tuples))
{
    for (auto & t : _tuples)
        if (t.size() != _signature.size())
            throw InvalidArgument("tuple length differs from the relation's arity");
    std::sort(_tuples.begin(), _tuples.end());
    _tuples.erase(std::unique(_tuples.begin(), _tuples.end()), _tuples.end());
}

auto Relation::single_sorted(std::size_t arity, std::vector<Tuple> tuples) -> Relation
{
    return Relation{std::vector<std::size_t>(arity, 0), std::move(tuples)};
}

auto Relation::contains(const Tuple & t) const -> bool { return std::binary_search(_tuples.begin(), _tuples.end(), t); }

auto CSPInstance::add_variable(std::string name, std::size_t sort) -> std::size_t
{
    names.push_back(std::move(name));
    domain.push_back(sort);
    return names.size() - 1;
}

auto CSPInstance::add_constraint(std::vector<std::size_t> scope, std::vector<Tuple> tuples) -> void
{
    std::vector<std::size_t> signature;
    for (auto v : scope) {
        if (v >= domain.size())
            throw InvalidArgument("constraint names an unknown variable");
        signature.push_back(domain[v]);
    }
    constraints.push_back({std::move(scope), Relation{std::move(signature), std::move(tuples)}});
}

auto CSPInstance::validate() const -> void
{
    if (names.size() != domain.size())
        throw InvalidArgument("names and domain differ in length");
    for (auto s : domain)
        if (s >= sorts.size())
            throw InvalidArgument("variable domain names an unknown sort");
    for (auto & c : constraints) {
        if (c.scope.size() != c.relation.arity())
            throw InvalidArgument("scope length differs from relation arity");
        for (std::size_t i = 0; i < c.scope.size(); ++i) {
            if (c.scope[i] >= names.size())
                throw InvalidArgument("constraint names an unknown variable");
            if (c.relation.signature()[i] != domain[c.scope[i]])
                throw SortMismatch("relation signature disagrees with the domain of " + names[c.scope[i]]);
        }
        for (auto & t : c.relation.tuples())
            for (std::size_t i = 0; i < t.size(); ++i)
                if (t[i] >= sorts[c.relation.signature()[i]].size())
                    throw InvalidArgument("tuple entry outside its sort");
    }
}

auto satisfies(const CSPInstance & inst, const Solution & f) -> bool
{
    if (f.size() != inst.variable_count())
        return false;
    for (std::size_t v = 0; v < f.size(); ++v)
        if (f[v] >= sort_size(inst, v))
            return false;
    for (auto & c : inst.constraints)
        if (! holds_on(c, f))
            return false;
    return true;
}

auto is_invariant(const Relation & r, const std::vector<CayleyTable> & sorts) -> bool
{
    for (auto s : r.signature())
        if (s >= sorts.size())
            throw SortMismatch("relation signature names an unknown sort");
    for (auto & t : r.tuples())
        for (std::size_t i = 0; i < t.size(); ++i)
            if (t[i] >= sorts[r.signature()[i]].size())
                throw SortMismatch("tuple entry outside its sort");
    Tuple product(r.arity());
    for (auto & s : r.tuples())
        for (auto & t : r.tuples()) {
            for (std::size_t i = 0; i < product.size(); ++i)
                product[i] = sorts[r.signature()[i]](s[i], t[i]);
            if (! r.contains(product))
                return false;
        }
    return true;
}

auto is_invariant(const Relation & r, const CayleyTable & g) -> bool
{
    for (auto s : r.signature())
        if (s != r.signature().front())
            throw SortMismatch("relation is not single-sorted");
    std::vector<CayleyTable> sorts(r.arity() ? r.signature().front() + 1 : 1, g);
    return is_invariant(r, sorts);
}

auto polymorphisms(const std::vector<Relation> & rels, std::size_t m, std::size_t n)
    -> std::vector<std::vector<Element>>
{
    if (m < 1 || m > 2 || n < 1 || n > 4)
        throw BoundExceeded("polymorphism search needs arity 1..2 and carrier 1..4");
    std::size_t cells = m == 1 ? n : n * n;

    // Each check is one choice of m tuples from one relation; it can be run
    // once the operation is defined on every argument tuple it touches, i.e.
    // at the largest such cell.
    struct Check
    {
        const Relation * rel;
        std::vector<std::size_t> args; ///< cell index per coordinate
    };
    std::vector<std::vector<Check>> at(cells);
    for (auto & r : rels) {
        for (auto & t : r.tuples())
            for (auto e : t)
                if (e >= n)
                    throw SortMismatch("relation entry outside the carrier");
        auto & ts = r.tuples();
        auto add = [&](const Tuple & s, const Tuple & t) {
            Check c{&r, {}};
            for (std::size_t i = 0; i < r.arity(); ++i)
                c.args.push_back(m == 1 ? s[i] : s[i] * n + t[i]);
            auto last = c.args.empty() ? 0 : *std::max_element(c.args.begin(), c.args.end());
            at[last].push_back(std::move(c));
        };
        for (auto & s : ts) {
            if (m == 1)
                add(s, s);
            else
                for (auto & t : ts)
                    add(s, t);
        }
    }

    std::vector<std::vector<Element>> out;
    std::vector<Element> op(cells, 0);
    Tuple image;
    auto ok_at = [&](std::size_t cell) {
        for (auto & c : at[cell]) {
            image.resize(c.args.size());
            for (std::size_t i = 0; i < c.args.size(); ++i)
                image[i] = op[c.args[i]];
            if (! c.rel->contains(image))
                return false;
        }
        return true;
    };
    auto search = [&](auto & self, std::size_t cell) -> void {
        if (cell == cells) {
            if (out.size() == polymorphism_cap)
                throw BoundExceeded("more than " + std::to_string(polymorphism_cap) + " polymorphisms");
            out.push_back(op);
            return;
        }
        for (Element v = 0; v < n; ++v) {
            op[cell] = v;
            if (ok_at(cell))
                self(self, cell + 1);
        }
    };
    search(search, 0);
    return out;
}

auto solve_brute(const CSPInstance & inst) -> std::optional<Solution>
{
    inst.validate();
    double space = 1;
    for (std::size_t v = 0; v < inst.variable_count(); ++v)
        space *= static_cast<double>(sort_size(inst, v));
    if (space > brute_bound)
        throw BoundExceeded("search space exceeds 1e7 assignments");
    if (! nullary_ok(inst))
        return std::nullopt;
    auto checks = constraints_by_last_variable(inst);
    Solution f(inst.variable_count(), 0);
    auto search = [&](auto & self, std::size_t v) -> bool {
        if (v == f.size())
            return true;
        for (Element a = 0; a < sort_size(inst, v); ++a) {
            f[v] = a;
            bool ok = true;
            for (auto c : checks[v])
                if (! holds_on(inst.constraints[c], f)) {
                    ok = false;
                    break;
                }
            if (ok && self(self, v + 1))
                return true;
        }
        return false;
    };
    if (search(search, 0))
        return f;
    return std::nullopt;
}

auto solve_consistency(const CSPInstance & inst) -> ConsistencyResult
{
    inst.validate();
    ConsistencyResult result;
    if (! nullary_ok(inst)) {
        result.refuted_without_search = true;
        return result;
    }
    auto nv = inst.variable_count();
    std::vector<std::size_t> size(nv);
    for (std::size_t v = 0; v < nv; ++v)
        size[v] = sort_size(inst, v);

    std::vector<std::vector<char>> dom(nv);
    for (std::size_t v = 0; v < nv; ++v)
        dom[v].assign(size[v], 1);
    // pair[u][v][a * size[v] + b]: (a,b) is still allowed for (u,v).
    std::vector<std::vector<std::vector<char>>> pair(nv, std::vector<std::vector<char>>(nv));
    for (std::size_t u = 0; u < nv; ++u)
        for (std::size_t v = 0; v < nv; ++v)
            if (u != v)
                pair[u][v].assign(size[u] * size[v], 1);
    std::vector<std::vector<char>> alive(inst.constraints.size());
    for (std::size_t c = 0; c < alive.size(); ++c)
        alive[c].assign(inst.constraints[c].relation.size(), 1);

    auto set_pair = [&](std::size_t u, std::size_t v, Element a, Element b) -> bool {
        auto & cell = pair[u][v][a * size[v] + b];
        if (! cell)
            return false;
        cell = 0;
        pair[v][u][b * size[u] + a] = 0;
        return true;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        // Generalized arc consistency against domains and pair relations.
        for (std::size_t c = 0; c < inst.constraints.size(); ++c) {
            auto & con = inst.constraints[c];
            auto & ts = con.relation.tuples();
            auto k = con.scope.size();
            for (std::size_t i = 0; i < ts.size(); ++i) {
                if (! alive[c][i])
                    continue;
                auto & t = ts[i];
                bool ok = true;
                for (std::size_t p = 0; p < k && ok; ++p) {
                    if (! dom[con.scope[p]][t[p]])
                        ok = false;
                    for (std::size_t q = p + 1; q < k && ok; ++q) {
                        auto u = con.scope[p], v = con.scope[q];
                        if (u == v ? t[p] != t[q] : ! pair[u][v][t[p] * size[v] + t[q]])
                            ok = false;
                    }
                }
                if (! ok) {
                    alive[c][i] = 0;
                    changed = true;
                }
            }
            for (std::size_t p = 0; p < k; ++p) {
                auto u = con.scope[p];
                std::vector<char> seen(size[u], 0);
                for (std::size_t i = 0; i < ts.size(); ++i)
                    if (alive[c][i])
                        seen[ts[i][p]] = 1;
                for (Element a = 0; a < size[u]; ++a)
                    if (dom[u][a] && ! seen[a]) {
                        dom[u][a] = 0;
                        changed = true;
                    }
                for (std::size_t q = p + 1; q < k; ++q) {
                    auto v = con.scope[q];
                    if (u == v)
                        continue;
                    std::vector<char> both(size[u] * size[v], 0);
                    for (std::size_t i = 0; i < ts.size(); ++i)
                        if (alive[c][i])
                            both[ts[i][p] * size[v] + ts[i][q]] = 1;
                    for (Element a = 0; a < size[u]; ++a)
                        for (Element b = 0; b < size[v]; ++b)
                            if (! both[a * size[v] + b] && set_pair(u, v, a, b))
                                changed = true;
                }
            }
        }
        // Pair relations against domains, and domains against pair supports.
        for (std::size_t u = 0; u < nv; ++u)
            for (std::size_t v = 0; v < nv; ++v) {
                if (u == v)
                    continue;
                for (Element a = 0; a < size[u]; ++a) {
                    bool supported = false;
                    for (Element b = 0; b < size[v]; ++b) {
                        if (pair[u][v][a * size[v] + b] && (! dom[u][a] || ! dom[v][b]) && set_pair(u, v, a, b))
                            changed = true;
                        supported = supported || pair[u][v][a * size[v] + b];
                    }
                    if (dom[u][a] && ! supported) {
                        dom[u][a] = 0;
                        changed = true;
                    }
                }
            }
        // Path consistency over every triple.
        for (std::size_t u = 0; u < nv; ++u)
            for (std::size_t v = u + 1; v < nv; ++v)
                for (std::size_t w = 0; w < nv; ++w) {
                    if (w == u || w == v)
                        continue;
                    for (Element a = 0; a < size[u]; ++a)
                        for (Element b = 0; b < size[v]; ++b) {
                            if (! pair[u][v][a * size[v] + b])
                                continue;
                            bool witness = false;
                            for (Element c = 0; c < size[w] && ! witness; ++c)
                                witness = pair[u][w][a * size[w] + c] && pair[w][v][c * size[v] + b];
                            if (! witness && set_pair(u, v, a, b))
                                changed = true;
                        }
                }
        for (auto & d : dom)
            if (std::find(d.begin(), d.end(), 1) == d.end()) {
                result.refuted_without_search = true;
                return result;
            }
    }

    auto checks = constraints_by_last_variable(inst);
    Solution f(nv, 0);
    auto search = [&](auto & self, std::size_t v, const std::vector<std::vector<char>> & current) -> bool {
        ++result.nodes;
        if (v == nv)
            return true;
        for (Element a = 0; a < size[v]; ++a) {
            if (! current[v][a])
                continue;
            f[v] = a;
            bool ok = true;
            for (auto c : checks[v])
                if (! holds_on(inst.constraints[c], f)) {
                    ok = false;
                    break;
                }
            if (! ok)
                continue;
            auto next = current;
            for (std::size_t u = v + 1; u < nv && ok; ++u) {
                bool any = false;
                for (Element b = 0; b < size[u]; ++b) {
                    next[u][b] = next[u][b] && pair[v][u][a * size[u] + b];
                    any = any || next[u][b];
                }
                ok = any;
            }
            if (ok && self(self, v + 1, next))
                return true;
        }
        return false;
    };
    if (search(search, 0, dom))
        result.solution = f;
    return result;
}

auto fold_join(const CayleyTable & join, const std::vector<Element> & elements) -> Element
{
    if (elements.empty())
        throw InvalidArgument("cannot fold the join over an empty set");
    auto a = elements.front();
    for (std::size_t k = 1; k < elements.size(); ++k)
        a = join(a, elements[k]);
    return a;
}

auto Reduction::transform(const Solution & f) const -> Solution
{
    if (empty_projection)
        throw InvalidArgument("the instance has no solutions to transform");
    Solution h(f.size());
    for (std::size_t v = 0; v < f.size(); ++v) {
        auto image = join(f[v], a[v]);
        auto & members = fibers[reduced.domain[v]];
        auto it = std::find(members.begin(), members.end(), image);
        if (it == members.end())
            throw InvalidArgument("f(v) v a_v leaves the fiber of a_v for " + reduced.names[v]);
        h[v] = static_cast<Element>(it - members.begin());
    }
    return h;
}

auto Reduction::lift(const Solution & h) const -> Solution
{
    if (empty_projection)
        throw InvalidArgument("the reduced instance has no solutions");
    Solution f(h.size());
    for (std::size_t v = 0; v < h.size(); ++v)
        f[v] = fibers[reduced.domain[v]].at(h[v]);
    return f;
}

auto reduce_theorem41(const CSPInstance & inst, const Term & join) -> Reduction
{
    inst.validate();
    if (inst.sorts.size() != 1)
        throw SortMismatch("the reduction expects a single-sorted instance");
    auto & g = inst.sorts[0];
    if (! check_property(g, Property::idempotent))
        throw InvalidArgument("the algebra is not idempotent");
    auto status = check_pseudopartition(g, join);
    if (! status.pseudopartition())
        throw NotPseudopartition(status.to_string());
    for (std::size_t c = 0; c < inst.constraints.size(); ++c)
        if (! is_invariant(inst.constraints[c].relation, g))
            throw NotInvariant("constraint " + std::to_string(c) + " is not invariant under the algebra");

    auto n = g.size();
    auto nv = inst.variable_count();
    Reduction out;
    out.join = join_table(g, join);
    out.sigma = sigma(g, join);
    out.fibers = out.sigma.blocks();

    // B_v and the subdirect restriction, iterated to a fixpoint.
    std::vector<std::vector<char>> b(nv, std::vector<char>(n, 1));
    std::vector<std::vector<Tuple>> rel(inst.constraints.size());
    for (std::size_t c = 0; c < rel.size(); ++c)
        rel[c] = inst.constraints[c].relation.tuples();
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t c = 0; c < rel.size(); ++c) {
            auto & scope = inst.constraints[c].scope;
            std::erase_if(rel[c], [&](const Tuple & t) {
                for (std::size_t p = 0; p < t.size(); ++p) {
                    if (! b[scope[p]][t[p]])
                        return true;
                    for (std::size_t q = p + 1; q < t.size(); ++q)
                        if (scope[p] == scope[q] && t[p] != t[q])
                            return true;
                }
                return false;
            });
            for (std::size_t p = 0; p < scope.size(); ++p) {
                std::vector<char> proj(n, 0);
                for (auto & t : rel[c])
                    proj[t[p]] = 1;
                for (Element e = 0; e < n; ++e)
                    if (b[scope[p]][e] && ! proj[e]) {
                        b[scope[p]][e] = 0;
                        changed = true;
                    }
            }
        }
    }
    out.b.resize(nv);
    for (std::size_t v = 0; v < nv; ++v)
        for (Element e = 0; e < n; ++e)
            if (b[v][e])
                out.b[v].push_back(e);

    out.reduced.names = inst.names;
    for (std::size_t v = 0; v < nv; ++v) {
        if (! out.b[v].empty())
            continue;
        out.empty_projection = true;
        out.reduced.sorts = {CayleyTable{1, {0}}};
        out.reduced.domain.assign(nv, 0);
        out.reduced.add_constraint({v}, {});
        return out;
    }

    for (std::size_t v = 0; v < nv; ++v)
        for (auto x : out.b[v])
            for (auto y : out.b[v])
                if (! b[v][g(x, y)])
                    throw Error("B_" + inst.names[v] + " is not a subuniverse");

    for (auto & block : out.fibers)
        out.reduced.sorts.push_back(restrict_to(g, block));
    std::vector<Element> local(n);
    for (auto & block : out.fibers)
        for (std::size_t k = 0; k < block.size(); ++k)
            local[block[k]] = static_cast<Element>(k);
    for (std::size_t v = 0; v < nv; ++v) {
        out.a.push_back(fold_join(out.join, out.b[v]));
        out.reduced.domain.push_back(out.sigma.block_of(out.a[v]));
    }
    for (std::size_t c = 0; c < rel.size(); ++c) {
        auto & scope = inst.constraints[c].scope;
        std::vector<Tuple> tuples;
        for (auto & t : rel[c]) {
            bool inside = true;
            Tuple mapped;
            for (std::size_t p = 0; p < t.size() && inside; ++p) {
                inside = out.sigma.block_of(t[p]) == out.reduced.domain[scope[p]];
                mapped.push_back(local[t[p]]);
            }
            if (inside)
                tuples.push_back(std::move(mapped));
        }
        out.reduced.add_constraint(scope, std::move(tuples));
    }
    out.reduced.validate();
    return out;
}

auto multisorted_to_product(const CSPInstance & inst) -> CSPInstance
{
    inst.validate();
    if (inst.sorts.size() <= 1)
        return inst;
    auto product = inst.sorts.front();
    for (std::size_t s = 1; s < inst.sorts.size(); ++s) {
        if (product.size() * inst.sorts[s].size() > product_carrier_bound)
            throw BoundExceeded("product carrier exceeds " + std::to_string(product_carrier_bound));
        product = direct_product(product, inst.sorts[s]);
    }
    CSPInstance out;
    out.sorts = {product};
    for (auto & name : inst.names)
        out.add_variable(name, 0);
    auto p = static_cast<Element>(product.size());
    for (auto & c : inst.constraints) {
        double lifted = static_cast<double>(c.relation.size());
        for (auto s : c.relation.signature())
            lifted *= static_cast<double>(p / inst.sorts[s].size());
        if (lifted > static_cast<double>(lifted_relation_bound))
            throw BoundExceeded("lifted relation would exceed " + std::to_string(lifted_relation_bound) + " tuples");
        // Each coordinate may be any product element projecting onto the
        // original value.
        std::vector<Tuple> tuples;
        for (auto & t : c.relation.tuples()) {
            std::vector<std::vector<Element>> choices(t.size());
            for (std::size_t i = 0; i < t.size(); ++i)
                for (Element e = 0; e < p; ++e)
                    if (product_coordinate(inst, e, c.relation.signature()[i]) == t[i])
                        choices[i].push_back(e);
            Tuple current(t.size());
            auto expand = [&](auto & self, std::size_t i) -> void {
                if (i == t.size()) {
                    tuples.push_back(current);
                    return;
                }
                for (auto e : choices[i]) {
                    current[i] = e;
                    self(self, i + 1);
                }
            };
            expand(expand, 0);
        }
        out.add_constraint(c.scope, std::move(tuples));
    }
    return out;
}

auto product_coordinate(const CSPInstance & inst, Element p, std::size_t sort) -> Element
{
    std::size_t stride = 1;
    for (std::size_t s = inst.sorts.size(); s-- > sort + 1;)
        stride *= inst.sorts[s].size();
    return static_cast<Element>(p / stride % inst.sorts[sort].size());
}

auto subpower_closure(const CayleyTable & g, std::vector<Tuple> generators) -> std::vector<Tuple>
{
    std::set<Tuple> closed;
    std::vector<Tuple> members;
    std::vector<Tuple> pending;
    for (auto & t : generators)
        if (closed.insert(t).second)
            pending.push_back(t);
    Tuple product;
    while (! pending.empty()) {
        auto t = pending.back();
        pending.pop_back();
        members.push_back(t);
        for (std::size_t k = 0; k < members.size(); ++k) {
            for (int side = 0; side < 2; ++side) {
                auto & left = side ? members[k] : t;
                auto & right = side ? t : members[k];
                product.resize(t.size());
                for (std::size_t i = 0; i < t.size(); ++i)
                    product[i] = g(left[i], right[i]);
                if (closed.insert(product).second)
                    pending.push_back(product);
            }
        }
    }
    return {closed.begin(), closed.end()};
}

auto gen_instance(std::uint64_t seed, const CayleyTable & tmpl, std::size_t vars, std::size_t constraints,
    std::size_t max_arity) -> CSPInstance
{
    if (vars < 1 || max_arity < 1)
        throw InvalidArgument("need at least one variable and arity at least 1");
    std::mt19937_64 rng{seed};
    auto below = [&](std::size_t bound) { return static_cast<std::size_t>(rng() % bound); };
    CSPInstance inst;
    inst.sorts = {tmpl};
    for (std::size_t v = 0; v < vars; ++v)
        inst.add_variable("v" + std::to_string(v));
    auto n = tmpl.size();
    for (std::size_t c = 0; c < constraints; ++c) {
        auto arity = std::min(vars, 1 + below(max_arity));
        std::vector<std::size_t> pool(vars);
        for (std::size_t v = 0; v < vars; ++v)
            pool[v] = v;
        std::vector<std::size_t> scope;
        for (std::size_t i = 0; i < arity; ++i) {
            auto pick = i + below(vars - i);
            std::swap(pool[i], pool[pick]);
            scope.push_back(pool[i]);
        }
        std::vector<Tuple> seeds(1 + below(3));
        for (auto & t : seeds)
            for (std::size_t i = 0; i < arity; ++i)
                t.push_back(static_cast<Element>(below(n)));
        inst.add_constraint(std::move(scope), subpower_closure(tmpl, std::move(seeds)));
    }
    return inst;
}

auto parse_csp(const std::string & text, const std::filesystem::path & base_dir) -> CSPInstance
{
    std::vector<std::string> lines;
    {
        std::istringstream in{text};
        std::string line;
        while (std::getline(in, line)) {
            auto first = line.find_first_not_of(" \t\r");
            if (first != std::string::npos && line[first] != '#')
                lines.push_back(line);
        }
    }
    CSPInstance inst;
    std::size_t pos = 0;
    if (lines.empty())
        throw ParseError("empty CSP file");
    auto head = split_words(lines[pos++]);
    if (head.size() != 2 || head[0] != "sorts")
        throw ParseError("expected 'sorts <k>', got '" + lines[0] + "'");
    auto k = to_number(head[1], lines[0]);
    for (std::size_t s = 0; s < k; ++s) {
        if (pos >= lines.size())
            throw ParseError("missing sort " + std::to_string(s));
        auto words = split_words(lines[pos]);
        if (words.size() == 2 && words[0] == "@file") {
            auto path = std::filesystem::path{words[1]};
            inst.sorts.push_back(load_alg(path.is_absolute() ? path : base_dir / path));
            ++pos;
            continue;
        }
        auto n = to_number(words.at(0), lines[pos]);
        if (pos + n >= lines.size())
            throw ParseError("sort " + std::to_string(s) + " ends early");
        std::string block;
        for (std::size_t r = 0; r <= n; ++r)
            block += lines[pos++] + "\n";
        inst.sorts.push_back(parse_alg(block));
    }
    while (pos < lines.size()) {
        auto & line = lines[pos++];
        auto words = split_words(line);
        if (words[0] == "var") {
            if (words.size() != 3)
                throw ParseError("expected 'var <name> <sort>', got '" + line + "'");
            inst.add_variable(words[1], to_number(words[2], line));
        }
        else if (words[0] == "con") {
            std::vector<std::size_t> scope;
            for (std::size_t i = 1; i < words.size(); ++i) {
                auto it = std::find(inst.names.begin(), inst.names.end(), words[i]);
                if (it == inst.names.end())
                    throw ParseError("unknown variable '" + words[i] + "'");
                scope.push_back(static_cast<std::size_t>(it - inst.names.begin()));
            }
            std::vector<Tuple> tuples;
            while (true) {
                if (pos >= lines.size())
                    throw ParseError("constraint without 'end'");
                auto row = split_words(lines[pos]);
                auto & raw = lines[pos++];
                if (row.size() == 1 && row[0] == "end")
                    break;
                if (row.empty() || row[0] != "t" || row.size() != scope.size() + 1)
                    throw ParseError("expected a tuple line 't ...' of arity " + std::to_string(scope.size()) +
                        ", got '" + raw + "'");
                Tuple t;
                for (std::size_t i = 1; i < row.size(); ++i)
                    t.push_back(static_cast<Element>(to_number(row[i], raw)));
                tuples.push_back(std::move(t));
            }
            inst.add_constraint(std::move(scope), std::move(tuples));
        }
        else
            throw ParseError("unexpected line '" + line + "'");
    }
    inst.validate();
    return inst;
}

auto load_csp(const std::filesystem::path & path) -> CSPInstance
{
    std::ifstream in{path};
    if (! in)
        throw ParseError("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_csp(buffer.str(), path.parent_path());
}

auto to_text(const CSPInstance & inst) -> std::string
{
    std::string out = "sorts " + std::to_string(inst.sorts.size()) + "\n";
    for (auto & s : inst.sorts)
        out += to_alg(s);
    for (std::size_t v = 0; v < inst.variable_count(); ++v)
        out += "var " + inst.names[v] + " " + std::to_string(inst.domain[v]) + "\n";
    for (auto & c : inst.constraints) {
        out += "con";
        for (auto v : c.scope)
            out += " " + inst.names[v];
        out += "\n";
        for (auto & t : c.relation.tuples()) {
            out += "t";
            for (auto e : t)
                out += " " + std::to_string(e);
            out += "\n";
        }
        out += "end\n";
    }
    return out;
}

} // namespace cig
