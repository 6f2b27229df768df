#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"

#include <cig/congruence.hpp>
#include <cig/error.hpp>
#include <cig/verify.hpp>

using namespace cig;

namespace {

auto naive_congruences(const CayleyTable & g) -> std::set<PartitionCongruence>
{
    std::set<PartitionCongruence> out;
    for (auto & labels : oracle::partitions(g.size()))
        if (oracle::compatible(g, labels))
            out.insert(PartitionCongruence{labels});
    return out;
}

auto chain(std::size_t n) { return oracle::table(n, [](Element a, Element b) { return std::max(a, b); }); }

} // namespace

TEST_CASE("partitions normalize, refine, meet and join")
{
    PartitionCongruence p{{5, 5, 2, 2, 7}};
    CHECK(p.block_ids() == std::vector<std::size_t>{0, 0, 1, 1, 2});
    CHECK(p.to_string() == "{0,1}{2,3}{4}");
    CHECK(p.block_count() == 3);
    PartitionCongruence q{{0, 1, 1, 2, 2}};
    CHECK(p.meet(q).to_string() == "{0}{1}{2}{3}{4}");
    CHECK(p.join(q).to_string() == "{0,1,2,3,4}");
    // meet and join against every pair of partitions of a 4-set
    auto all = oracle::partitions(4);
    for (auto & a : all)
        for (auto & b : all) {
            PartitionCongruence x{a}, y{b};
            auto m = x.meet(y), j = x.join(y);
            CHECK(m.refines(x));
            CHECK(m.refines(y));
            CHECK(x.refines(j));
            CHECK(y.refines(j));
            for (auto & c : all) {
                PartitionCongruence z{c};
                if (z.refines(x) && z.refines(y))
                    CHECK(z.refines(m));
                if (x.refines(z) && y.refines(z))
                    CHECK(j.refines(z));
            }
        }
}

TEST_CASE("congruence lattices agree with exhaustive partition search")
{
    std::mt19937 rng{5};
    std::vector<CayleyTable> tables;
    for (int trial = 0; trial < 60; ++trial)
        tables.push_back(oracle::random_table(rng, 2 + trial % 4, trial % 3 != 0));
    for (auto & name : fixture_names())
        tables.push_back(load_fixture(name));
    for (auto & g : tables) {
        auto lattice = all_congruences(g);
        auto expected = naive_congruences(g);
        std::set<PartitionCongruence> got(lattice.elements().begin(), lattice.elements().end());
        CHECK(got == expected);
        CHECK(lattice.element(lattice.bottom()) == PartitionCongruence::identity(g.size()));
        CHECK(lattice.element(lattice.top()) == PartitionCongruence::full(g.size()));
    }
}

TEST_CASE("principal congruences are least")
{
    std::mt19937 rng{9};
    for (int trial = 0; trial < 30; ++trial) {
        auto g = oracle::random_table(rng, 3 + trial % 3, true);
        auto cons = naive_congruences(g);
        for (Element a = 0; a < g.size(); ++a)
            for (Element b = 0; b < g.size(); ++b) {
                auto p = principal_congruence(g, a, b);
                CHECK(p.related(a, b));
                CHECK(cons.contains(p));
                for (auto & c : cons)
                    if (c.related(a, b))
                        CHECK(p.refines(c));
            }
    }
}

TEST_CASE("principal congruences of the squag and its absorbing extension")
{
    auto squag = load_fixture("fig4a");
    CHECK(principal_congruence(squag, 0, 1) == PartitionCongruence::full(3));
    CHECK(all_congruences(squag).size() == 2);
    // Element 3 absorbs: identifying 0 and 1 stays inside the squag.
    auto inf = oracle::table(4, [&](Element a, Element b) { return a == 3 || b == 3 ? Element{3} : squag(a, b); });
    CHECK(principal_congruence(inf, 0, 1) == PartitionCongruence{{0, 0, 0, 1}});
}

TEST_CASE("incompatibility witnesses and quotients")
{
    auto g = chain(3);
    PartitionCongruence bad{{0, 1, 0}};
    auto w = find_incompatibility(g, bad);
    REQUIRE(w);
    CHECK(bad.related(w->a, w->a_prime));
    auto l = w->on_left ? g(w->c, w->a) : g(w->a, w->c);
    auto r = w->on_left ? g(w->c, w->a_prime) : g(w->a_prime, w->c);
    CHECK_FALSE(bad.related(l, r));
    CHECK_THROWS_AS(quotient(g, bad), NotACongruence);
    CHECK_FALSE(is_congruence(g, bad));

    auto q = quotient(g, PartitionCongruence{{0, 0, 1}});
    CHECK(q == chain(2));

    auto squag = load_fixture("fig4a");
    auto sq2 = direct_product(squag, squag);
    // Kernel of the first projection: (a,b) ~ (a',b') iff a = a'.
    PartitionCongruence first{{0, 0, 0, 1, 1, 1, 2, 2, 2}};
    CHECK(is_congruence(sq2, first));
    CHECK(quotient(sq2, first) == squag);
}

TEST_CASE("lattice shape and semidistributivity")
{
    auto c3 = all_congruences(chain(3));
    CHECK(c3.size() == 4);
    CHECK(c3.atoms().size() == 2);
    CHECK(c3.height() == 2);
    CHECK(is_sd_meet(c3));

    // All five partitions of a 3-set form M3, which fails SD(meet).
    std::vector<PartitionCongruence> m3;
    for (auto & labels : oracle::partitions(3))
        m3.emplace_back(labels);
    CongruenceLattice pi3{m3};
    CHECK(pi3.size() == 5);
    CHECK(pi3.atoms().size() == 3);
    CHECK(pi3.height() == 2);
    CHECK_FALSE(is_sd_meet(pi3));
    for (std::size_t i = 0; i < pi3.size(); ++i)
        for (std::size_t j = 0; j < pi3.size(); ++j) {
            CHECK(pi3.element(pi3.meet(i, j)) == pi3.element(i).meet(pi3.element(j)));
            CHECK(pi3.element(pi3.join(i, j)) == pi3.element(i).join(pi3.element(j)));
            CHECK(pi3.leq(i, j) == pi3.element(i).refines(pi3.element(j)));
        }

    auto squag = load_fixture("fig4a");
    auto con = all_congruences(direct_product(squag, squag));
    CHECK(naive_congruences(direct_product(squag, squag)).size() == 6);
    CHECK(con.size() == 6);
    CHECK(con.atoms().size() == 4);
    CHECK(con.height() == 2);
    CHECK_FALSE(is_sd_meet(con));
}
