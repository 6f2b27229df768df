#pragma once
// Slow reference implementations used as test oracles. Nothing here calls
// the library's evaluators, search or canonical forms.

#include <cig/algebra.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using cig::CayleyTable;
using cig::Element;
using cig::Identity;
using cig::Term;

inline auto eval(const Term & t, const std::map<std::string, Element> & a, const CayleyTable & g) -> Element
{
    if (t.is_variable())
        return a.at(t.name());
    return g(eval(t.left(), a, g), eval(t.right(), a, g));
}

inline auto collect(const Term & t, std::set<std::string> & out) -> void
{
    if (t.is_variable())
        out.insert(t.name());
    else {
        collect(t.left(), out);
        collect(t.right(), out);
    }
}

// Calls f on every assignment of the variables over {0..n-1}; stops when f returns false.
inline auto for_each_assignment(const std::vector<std::string> & vars, std::size_t n,
    const std::function<bool(const std::map<std::string, Element> &)> & f) -> bool
{
    std::vector<Element> v(vars.size(), 0);
    while (true) {
        std::map<std::string, Element> a;
        for (std::size_t k = 0; k < vars.size(); ++k)
            a[vars[k]] = v[k];
        if (! f(a))
            return false;
        std::size_t k = 0;
        while (k < v.size() && ++v[k] == n)
            v[k++] = 0;
        if (k == v.size())
            return true;
    }
}

inline auto holds(const CayleyTable & g, const Identity & id) -> bool
{
    std::set<std::string> vars;
    collect(id.lhs, vars);
    collect(id.rhs, vars);
    return for_each_assignment({vars.begin(), vars.end()}, g.size(),
        [&](auto & a) { return eval(id.lhs, a, g) == eval(id.rhs, a, g); });
}

inline auto table(std::size_t n, const std::function<Element(Element, Element)> & op) -> CayleyTable
{
    std::vector<Element> cells;
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            cells.push_back(op(a, b));
    return CayleyTable{n, cells};
}

// Every commutative idempotent table on n elements.
inline auto all_ci_tables(std::size_t n) -> std::vector<CayleyTable>
{
    std::vector<std::pair<Element, Element>> cells;
    for (Element a = 0; a < n; ++a)
        for (Element b = a + 1; b < n; ++b)
            cells.push_back({a, b});
    std::vector<Element> value(cells.size(), 0);
    std::vector<CayleyTable> out;
    while (true) {
        std::vector<Element> t(n * n);
        for (Element a = 0; a < n; ++a)
            t[a * n + a] = a;
        for (std::size_t k = 0; k < cells.size(); ++k) {
            auto [a, b] = cells[k];
            t[a * n + b] = t[b * n + a] = value[k];
        }
        out.emplace_back(n, t);
        std::size_t k = 0;
        while (k < value.size() && ++value[k] == n)
            value[k++] = 0;
        if (k == value.size())
            break;
    }
    return out;
}

inline auto isomorphic(const CayleyTable & g, const CayleyTable & h) -> bool
{
    if (g.size() != h.size())
        return false;
    auto n = g.size();
    std::vector<Element> p(n);
    std::iota(p.begin(), p.end(), Element{0});
    do {
        bool ok = true;
        for (Element a = 0; a < n && ok; ++a)
            for (Element b = 0; b < n && ok; ++b)
                ok = p[g(a, b)] == h(p[a], p[b]);
        if (ok)
            return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

inline auto iso_classes(const std::vector<CayleyTable> & tables) -> std::vector<CayleyTable>
{
    std::vector<CayleyTable> reps;
    for (auto & t : tables)
        if (std::none_of(reps.begin(), reps.end(), [&](auto & r) { return oracle::isomorphic(r, t); }))
            reps.push_back(t);
    return reps;
}

inline auto random_table(std::mt19937 & rng, std::size_t n, bool ci) -> CayleyTable
{
    std::vector<Element> t(n * n);
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            t[a * n + b] = static_cast<Element>(rng() % n);
    if (ci)
        for (Element a = 0; a < n; ++a) {
            t[a * n + a] = a;
            for (Element b = 0; b < a; ++b)
                t[a * n + b] = t[b * n + a];
        }
    return {n, t};
}

// All set partitions of {0..n-1} as block labels.
inline auto partitions(std::size_t n) -> std::vector<std::vector<std::size_t>>
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> labels(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
        if (i == n) {
            out.push_back(labels);
            return;
        }
        for (std::size_t b = 0; b <= used; ++b) {
            labels[i] = b;
            rec(i + 1, std::max(used, b + 1));
        }
    };
    if (n == 0)
        return {{}};
    labels[0] = 0;
    rec(1, 1);
    return out;
}

inline auto compatible(const CayleyTable & g, const std::vector<std::size_t> & labels) -> bool
{
    auto n = g.size();
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            if (labels[a] == labels[b])
                for (Element c = 0; c < n; ++c)
                    if (labels[g(a, c)] != labels[g(b, c)] || labels[g(c, a)] != labels[g(c, b)])
                        return false;
    return true;
}

} // namespace oracle
