#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"

#include <cig/bol_moufang.hpp>
#include <cig/error.hpp>
#include <cig/model_search.hpp>
#include <cig/text_format.hpp>
#include <cig/verify.hpp>

using namespace cig;

namespace {

auto naive_models(std::size_t n, const std::vector<Identity> & require) -> std::vector<CayleyTable>
{
    std::vector<CayleyTable> hits;
    for (auto & g : oracle::all_ci_tables(n))
        if (std::all_of(require.begin(), require.end(), [&](auto & id) { return oracle::holds(g, id); }))
            hits.push_back(g);
    return oracle::iso_classes(hits);
}

// Idempotent, not necessarily commutative.
auto naive_idempotent_models(std::size_t n, const std::vector<Identity> & require) -> std::vector<CayleyTable>
{
    std::vector<std::pair<Element, Element>> cells;
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            if (a != b)
                cells.push_back({a, b});
    std::vector<Element> value(cells.size(), 0);
    std::vector<CayleyTable> hits;
    while (true) {
        std::vector<Element> t(n * n);
        for (Element a = 0; a < n; ++a)
            t[a * n + a] = a;
        for (std::size_t k = 0; k < cells.size(); ++k)
            t[cells[k].first * n + cells[k].second] = value[k];
        CayleyTable g{n, t};
        if (std::all_of(require.begin(), require.end(), [&](auto & id) { return oracle::holds(g, id); }))
            hits.push_back(g);
        std::size_t k = 0;
        while (k < value.size() && ++value[k] == n)
            value[k++] = 0;
        if (k == value.size())
            break;
    }
    return oracle::iso_classes(hits);
}

} // namespace

TEST_CASE("model counts agree with brute force up to n=4")
{
    for (auto v : all_varieties())
        for (std::size_t n = 1; n <= 4; ++n) {
            CAPTURE(variety_name(v));
            CAPTURE(n);
            CHECK(count_models(n, v) == naive_models(n, variety_identities(v)).size());
        }
    CHECK(count_models(3, VarietyName::C) == 7);
}

TEST_CASE("enumerated models are canonical, distinct, sorted and valid")
{
    SearchSpec spec{5, variety_identities(VarietyName::S2), {}};
    auto models = enumerate_models(spec);
    REQUIRE(models.size() == 52);
    CHECK(std::is_sorted(models.begin(), models.end()));
    for (std::size_t i = 0; i < models.size(); ++i) {
        CHECK(is_canonical(models[i]));
        CHECK(oracle::holds(models[i], laws::commutative()));
        CHECK(oracle::holds(models[i], BMIdentity::parse("B12").identity()));
        for (std::size_t j = i + 1; j < models.size(); ++j)
            CHECK_FALSE(oracle::isomorphic(models[i], models[j]));
    }
}

TEST_CASE("semilattice and squag counts")
{
    std::size_t semilattices[] = {1, 1, 2, 5, 15, 53};
    std::size_t squags[] = {1, 0, 1, 0, 0, 0};
    for (std::size_t n = 1; n <= 6; ++n) {
        CHECK(count_models(n, VarietyName::SL) == semilattices[n - 1]);
        CHECK(enumerate_models(SearchSpec{n, {laws::squag()}, {}}).size() == squags[n - 1]);
    }
}

TEST_CASE("non-commutative search agrees with brute force")
{
    auto d23 = BMIdentity::parse("D23").identity();
    for (std::size_t n = 1; n <= 3; ++n) {
        SearchSpec spec{n, {d23}, {}, false, true};
        CHECK(enumerate_models(spec).size() == naive_idempotent_models(n, {d23}).size());
    }
    SearchSpec left_zero{2, {laws::associative()}, {laws::commutative()}, false, true};
    auto lz = enumerate_models(left_zero);
    CHECK(lz.size() == 2); // left-zero and right-zero bands
}

TEST_CASE("canonical form is a complete isomorphism invariant")
{
    std::mt19937 rng{3};
    for (int trial = 0; trial < 200; ++trial) {
        auto n = 2 + rng() % 4;
        auto g = oracle::random_table(rng, n, true);
        std::vector<Element> perm(n);
        std::iota(perm.begin(), perm.end(), Element{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        auto h = relabel(g, perm);
        CHECK(canonical_form(g) == canonical_form(h));
        CHECK(isomorphic(g, h));
        CHECK(oracle::isomorphic(canonical_form(g), g));
        auto k = oracle::random_table(rng, n, true);
        CHECK(isomorphic(g, k) == oracle::isomorphic(g, k));
    }
    CHECK_THROWS_AS(canonical_form(oracle::table(11, [](Element a, Element b) { return std::max(a, b); })),
        BoundExceeded);
}

TEST_CASE("parallel and serial enumeration emit identical streams")
{
    SearchSpec spec{6, variety_identities(VarietyName::S1), {}};
    CHECK(enumerate_models(spec, 1) == enumerate_models(spec, 3));
    std::vector<CayleyTable> streamed;
    for_each_model(spec, [&](const CayleyTable & g) {
        streamed.push_back(g);
        return true;
    });
    CHECK(streamed == enumerate_models(spec));
    std::size_t seen = 0;
    for_each_model(spec, [&](const CayleyTable &) { return ++seen < 5; });
    CHECK(seen == 5);
}

TEST_CASE("separating models are minimal and least")
{
    auto c15 = BMIdentity::parse("C15").identity();
    auto sep = find_separating_model({}, {laws::associative()}, 4);
    REQUIRE(sep);
    CHECK(sep->table.size() == 3);
    CHECK(naive_models(2, {}).size() == 1); // the 2-element semilattice
    CHECK(is_canonical(sep->table));
    for (auto & g : naive_models(3, {}))
        if (! oracle::holds(g, laws::associative()))
            CHECK(sep->table <= canonical_form(g));

    auto t2_not_t1 = find_separating_model({c15}, {BMIdentity::parse("A14").identity()}, 6);
    REQUIRE(t2_not_t1);
    CHECK(t2_not_t1->table.size() == 6);
    for (std::size_t n = 1; n <= 4; ++n)
        for (auto & g : naive_models(n, {c15}))
            CHECK(oracle::holds(g, BMIdentity::parse("A14").identity()));
    auto & w = t2_not_t1->witnesses.at(0);
    auto a14 = BMIdentity::parse("A14").identity();
    CHECK(oracle::eval(a14.lhs, w.assignment, t2_not_t1->table) == w.lhs_value);
    CHECK(oracle::eval(a14.rhs, w.assignment, t2_not_t1->table) == w.rhs_value);
    CHECK(w.lhs_value != w.rhs_value);

    CHECK_THROWS_AS(find_separating_model({c15}, {c15}, 4), InvalidArgument);
}

TEST_CASE("search bounds and argument errors")
{
    CHECK(search_bound(SearchSpec{1, {}, {}}) == 5);
    CHECK(search_bound(SearchSpec{1, {laws::squag()}, {}}) == 6);
    CHECK_THROWS_AS(enumerate_models(SearchSpec{0, {}, {}}), InvalidArgument);
    CHECK_THROWS_AS(enumerate_models(SearchSpec{6, {}, {}}), BoundExceeded);
    CHECK_THROWS_AS(enumerate_models(SearchSpec{7, {laws::squag()}, {}}), BoundExceeded);
    CHECK_THROWS_AS(enumerate_models(SearchSpec{3, {laws::squag()}, {laws::squag()}}), InvalidArgument);
    CHECK_THROWS_AS(find_separating_model({}, {laws::associative()}, 7), BoundExceeded);
}
