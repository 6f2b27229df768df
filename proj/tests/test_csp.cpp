#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"

#include <cig/csp.hpp>
#include <cig/error.hpp>
#include <cig/plonka.hpp>
#include <cig/text_format.hpp>
#include <cig/verify.hpp>

#include <filesystem>
#include <fstream>

using namespace cig;

namespace {

auto satisfied(const CSPInstance & inst, const std::vector<Element> & f) -> bool
{
    for (auto & c : inst.constraints) {
        Tuple t;
        for (auto v : c.scope)
            t.push_back(f[v]);
        auto & ts = c.relation.tuples();
        if (std::find(ts.begin(), ts.end(), t) == ts.end())
            return false;
    }
    return true;
}

// Lexicographically least solution, variable 0 most significant.
auto naive_solve(const CSPInstance & inst) -> std::optional<std::vector<Element>>
{
    auto k = inst.variable_count();
    std::vector<Element> f(k, 0);
    while (true) {
        if (satisfied(inst, f))
            return f;
        std::size_t v = k;
        while (v > 0) {
            --v;
            if (++f[v] < inst.sorts[inst.domain[v]].size())
                break;
            f[v] = 0;
            if (v == 0)
                return std::nullopt;
        }
        if (k == 0)
            return std::nullopt;
    }
}

auto naive_closure(const CayleyTable & g, std::vector<Tuple> gens) -> std::set<Tuple>
{
    std::set<Tuple> out(gens.begin(), gens.end());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Tuple> now(out.begin(), out.end());
        for (auto & a : now)
            for (auto & b : now) {
                Tuple c(a.size());
                for (std::size_t i = 0; i < a.size(); ++i)
                    c[i] = g(a[i], b[i]);
                grew = out.insert(c).second || grew;
            }
    }
    return out;
}

// Random instance with arbitrary (usually non-invariant) relations.
auto random_instance(std::mt19937 & rng, std::size_t n, std::size_t vars, std::size_t cons) -> CSPInstance
{
    CSPInstance inst;
    inst.sorts = {oracle::random_table(rng, n, true)};
    for (std::size_t v = 0; v < vars; ++v)
        inst.add_variable("v" + std::to_string(v));
    for (std::size_t c = 0; c < cons; ++c) {
        std::size_t a = rng() % vars, b = rng() % vars;
        std::vector<Tuple> ts;
        for (Element x = 0; x < n; ++x)
            for (Element y = 0; y < n; ++y)
                if (rng() % 3)
                    ts.push_back({x, y});
        inst.add_constraint({a, b}, ts);
    }
    return inst;
}

auto templates() -> std::vector<std::pair<CayleyTable, Term>>
{
    auto squag = load_fixture("fig4a");
    return {
        {adjoin_infinity(squag), t2_join()},
        {squag, power_term("x", "y", cid_exponent(squag))},
        {adjoin_infinity(cie_cyclic(5)), power_term("x", "y", cid_exponent(adjoin_infinity(cie_cyclic(5))))},
        {CayleyTable{3, {0, 1, 2, 1, 1, 2, 2, 2, 2}}, parse_term("x*y")},
    };
}

} // namespace

TEST_CASE("brute force and consistency solvers return the least solution")
{
    std::mt19937 rng{21};
    std::size_t sat = 0;
    for (int trial = 0; trial < 150; ++trial) {
        auto inst = random_instance(rng, 2 + trial % 3, 3 + trial % 4, 2 + trial % 5);
        auto expected = naive_solve(inst);
        auto b = solve_brute(inst);
        auto c = solve_consistency(inst);
        CHECK(b == expected);
        CHECK(c.solution == expected);
        if (c.refuted_without_search)
            CHECK_FALSE(expected);
        if (expected) {
            ++sat;
            CHECK(satisfies(inst, *expected));
        }
    }
    CHECK(sat > 0);
    CHECK(sat < 150);
}

TEST_CASE("generated instances are invariant and solved correctly")
{
    for (auto & [t, join] : templates())
        for (std::uint64_t seed = 1; seed <= 30; ++seed) {
            auto inst = gen_instance(seed, t, 5, 4, 3);
            CHECK(to_text(gen_instance(seed, t, 5, 4, 3)) == to_text(inst));
            for (auto & c : inst.constraints) {
                CHECK(is_invariant(c.relation, t));
                std::set<std::size_t> scope(c.scope.begin(), c.scope.end());
                CHECK(scope.size() == c.scope.size());
            }
            CHECK(solve_brute(inst) == naive_solve(inst));
            CHECK(solve_consistency(inst).solution == naive_solve(inst));
        }
}

TEST_CASE("invariance and subpower closure")
{
    auto squag = load_fixture("fig4a");
    std::mt19937 rng{2};
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Tuple> gens;
        for (int k = 0; k < 1 + trial % 3; ++k)
            gens.push_back({static_cast<Element>(rng() % 3), static_cast<Element>(rng() % 3)});
        auto closed = subpower_closure(squag, gens);
        auto expected = naive_closure(squag, gens);
        CHECK(std::set<Tuple>(closed.begin(), closed.end()) == expected);
        CHECK(is_invariant(Relation::single_sorted(2, closed), squag));
    }
    CHECK_FALSE(is_invariant(Relation::single_sorted(2, {{0, 1}, {1, 0}}), squag));
    Relation two_sorted{{0, 1}, {{0, 0}}};
    CHECK_THROWS_AS(is_invariant(two_sorted, squag), SortMismatch);
    CHECK(is_invariant(two_sorted, std::vector<CayleyTable>{squag, CayleyTable{1, {0}}}));
}

TEST_CASE("polymorphisms of small relational structures")
{
    auto unary0 = Relation::single_sorted(1, {{0}});
    auto unary1 = Relation::single_sorted(1, {{1}});
    CHECK(polymorphisms({unary0, unary1}, 2, 2).size() == 4);
    CHECK(polymorphisms({}, 1, 3).size() == 27);
    auto leq = Relation::single_sorted(2, {{0, 0}, {0, 1}, {1, 1}});
    // Monotone binary operations on {0,1}: 6.
    CHECK(polymorphisms({leq}, 2, 2).size() == 6);
    // Compare against brute force over all binary operations on {0,1,2}.
    auto neq = Relation::single_sorted(2, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 2}, {2, 0}});
    auto polys = polymorphisms({neq, unary0}, 2, 3);
    std::size_t expected = 0;
    for (std::size_t code = 0; code < 19683; ++code) {
        std::vector<Element> f(9);
        auto c = code;
        for (auto & e : f) {
            e = static_cast<Element>(c % 3);
            c /= 3;
        }
        bool ok = f[0] == 0;
        auto & ts = neq.tuples();
        for (auto & a : ts)
            for (auto & b : ts) {
                Tuple img{f[a[0] * 3 + b[0]], f[a[1] * 3 + b[1]]};
                ok = ok && neq.contains(img);
            }
        expected += ok;
    }
    CHECK(polys.size() == expected);
    CHECK_THROWS_AS(polymorphisms({}, 3, 2), BoundExceeded);
}

TEST_CASE("product translation preserves solutions")
{
    auto squag = load_fixture("fig4a");
    CSPInstance inst;
    inst.sorts = {squag, CayleyTable{2, {0, 1, 1, 1}}};
    inst.add_variable("a", 0);
    inst.add_variable("b", 1);
    inst.add_variable("c", 0);
    inst.add_constraint({0, 1}, {{0, 1}, {2, 0}});
    inst.add_constraint({2, 0}, {{1, 2}, {2, 0}});
    auto prod = multisorted_to_product(inst);
    REQUIRE(prod.sorts.size() == 1);
    CHECK(prod.sorts[0].size() == 6);
    auto direct = naive_solve(inst);
    auto lifted = naive_solve(prod);
    REQUIRE(direct.has_value() == lifted.has_value());
    REQUIRE(lifted);
    Solution back;
    for (std::size_t v = 0; v < 3; ++v)
        back.push_back(product_coordinate(inst, (*lifted)[v], inst.domain[v]));
    CHECK(satisfies(inst, back));
    inst.add_constraint({0}, {});
    CHECK_FALSE(naive_solve(multisorted_to_product(inst)));
}

TEST_CASE("reduction preserves satisfiability and maps solutions")
{
    std::size_t sat = 0, unsat = 0;
    for (auto & [t, join] : templates())
        for (std::uint64_t seed = 1; seed <= 40; ++seed) {
            auto inst = gen_instance(seed, t, 5, 4, 3);
            auto red = reduce_theorem41(inst, join);
            auto f = naive_solve(inst);
            auto h = naive_solve(red.reduced);
            REQUIRE(f.has_value() == h.has_value());
            if (! f) {
                ++unsat;
                continue;
            }
            ++sat;
            auto g = red.transform(*f);
            CHECK(satisfied(red.reduced, g));
            CHECK(satisfied(inst, red.lift(*h)));
            // a_v is the fold of B_v, and every solution value lies in B_v.
            auto jt = join_table(t, join);
            for (std::size_t v = 0; v < inst.variable_count(); ++v) {
                CHECK(red.a[v] == fold_join(jt, red.b[v]));
                auto & b = red.b[v];
                CHECK(std::find(b.begin(), b.end(), (*f)[v]) != b.end());
            }
        }
    CHECK(sat > 0);
    CHECK(unsat > 0);
}

TEST_CASE("reduction preconditions")
{
    auto squag = load_fixture("fig4a");
    CSPInstance inst;
    inst.sorts = {squag};
    inst.add_variable("a");
    inst.add_variable("b");
    inst.add_constraint({0, 1}, {{0, 1}, {1, 0}});
    CHECK_THROWS_AS(reduce_theorem41(inst, t2_join()), NotInvariant);
    CHECK_THROWS_AS(reduce_theorem41(inst, parse_term("x*y")), NotPseudopartition);
    CSPInstance lz;
    lz.sorts = {CayleyTable{2, {1, 1, 0, 0}}};
    lz.add_variable("a");
    CHECK_THROWS_AS(reduce_theorem41(lz, parse_term("x*y")), InvalidArgument);
    CSPInstance two;
    two.sorts = {squag, squag};
    two.add_variable("a", 1);
    CHECK_THROWS_AS(reduce_theorem41(two, t2_join()), SortMismatch);
    CHECK_THROWS_AS(fold_join(squag, {}), InvalidArgument);
}

TEST_CASE("text format round trip")
{
    auto inst = gen_instance(4, adjoin_infinity(load_fixture("fig4a")), 4, 3, 2);
    auto text = to_text(inst);
    CHECK(to_text(parse_csp(text)) == text);

    auto dir = std::filesystem::temp_directory_path() / "cig_csp_test";
    std::filesystem::create_directories(dir);
    std::ofstream{dir / "t.alg"} << to_alg(load_fixture("fig4a"));
    auto with_ref = parse_csp("sorts 1\n@file t.alg\nvar a 0\nvar b 0\ncon a b\nt 0 1\nend\n", dir);
    CHECK(with_ref.sorts[0] == load_fixture("fig4a"));
    CHECK(solve_brute(with_ref) == Solution{0, 1});

    CHECK_THROWS_AS(parse_csp(""), ParseError);
    CHECK_THROWS_AS(parse_csp("sorts 1\n1\n0\nvar a 0\ncon a\nt 0\n"), ParseError);
    CHECK_THROWS_AS(parse_csp("sorts 1\n1\n0\nvar a 0\ncon b\nt 0\nend\n"), ParseError);
    CHECK_THROWS_AS(parse_csp("sorts 1\n1\n0\nvar a 0\ncon a\nt 5\nend\n"), InvalidArgument);
    CHECK_THROWS_AS(load_csp(dir / "missing.csp"), ParseError);
}
