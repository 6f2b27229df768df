#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"

#include <cig/bol_moufang.hpp>
#include <cig/error.hpp>
#include <cig/text_format.hpp>
#include <cig/verify.hpp>

using namespace cig;

namespace {

// Builds Xij by filling the letters of the ordering word into a bracketing
// template written with 'o' placeholders, then parsing.
auto built_from_strings(char ordering, int i, int j) -> Identity
{
    const char * words[] = {"xxyz", "xyxz", "xyyz", "xyzx", "xyzy", "xyzz"};
    const char * shapes[] = {"o*(o*(o*o))", "o*((o*o)*o)", "(o*o)*(o*o)", "(o*(o*o))*o", "((o*o)*o)*o"};
    auto fill = [&](int shape) {
        std::string s = shapes[shape - 1];
        const char * w = words[ordering - 'A'];
        for (auto & c : s)
            if (c == 'o')
                c = *w++;
        return s;
    };
    return parse_identity(fill(i) + " = " + fill(j));
}

auto mirror(const Term & t) -> Term { return t.is_variable() ? t : mirror(t.right()) * mirror(t.left()); }

auto leaves(const Term & t, std::vector<std::string> & out) -> void
{
    if (t.is_variable())
        out.push_back(t.name());
    else {
        leaves(t.left(), out);
        leaves(t.right(), out);
    }
}

// Dual q' = p' renamed so variables appear alphabetically by first occurrence.
auto dual_by_definition(const Identity & id) -> Identity
{
    Identity d{mirror(id.rhs), mirror(id.lhs)};
    std::vector<std::string> order;
    leaves(d.lhs, order);
    std::map<std::string, Term> rename;
    std::string next = "x";
    for (auto & v : order)
        if (! rename.contains(v)) {
            rename.emplace(v, Term::variable(next));
            next = next == "x" ? "y" : "z";
        }
    return {substitute(d.lhs, rename), substitute(d.rhs, rename)};
}

} // namespace

TEST_CASE("the 60 identities match the ordering and bracketing tables")
{
    auto all = enumerate_bm();
    REQUIRE(all.size() == 60);
    std::size_t k = 0;
    for (char x : std::string{"ABCDEF"})
        for (int i = 1; i <= 5; ++i)
            for (int j = i + 1; j <= 5; ++j) {
                auto & b = all[k];
                CHECK(b.index() == k);
                CHECK(BMIdentity::from_index(k) == b);
                CHECK(b.ordering() == x);
                CHECK(b.left_bracketing() == i);
                CHECK(b.right_bracketing() == j);
                CHECK(b.identity() == built_from_strings(x, i, j));
                CHECK(BMIdentity::parse(b.name()) == b);
                ++k;
            }
}

TEST_CASE("named identities")
{
    CHECK(BMIdentity::parse("E15").identity() == parse_identity("x*(y*(z*y)) = ((x*y)*z)*y"));
    CHECK(BMIdentity::parse("B45").identity() == parse_identity("(x*(y*x))*z = ((x*y)*x)*z"));
    CHECK(BMIdentity::parse("A14").identity() == parse_identity("x*(x*(y*z)) = (x*(x*y))*z"));
    CHECK(BMIdentity::parse("C15").identity() == parse_identity("x*(y*(y*z)) = ((x*y)*y)*z"));
    CHECK(BMIdentity::parse("D23").identity() == parse_identity("x*((y*z)*x) = (x*y)*(z*x)"));
    CHECK(BMIdentity::parse("B13").identity() == parse_identity("x*(y*(x*z)) = (x*y)*(x*z)"));
}

TEST_CASE("dual agrees with mirroring and renaming")
{
    for (auto & b : enumerate_bm()) {
        CHECK(dual(b).identity() == dual_by_definition(b.identity()));
        CHECK(dual(dual(b)) == b);
    }
    CHECK(dual(BMIdentity::parse("E15")).name() == "B15");
    CHECK(dual(BMIdentity::parse("A14")).name() == "F25");
    CHECK(dual(BMIdentity::parse("C15")).name() == "C15");
    CHECK(dual(BMIdentity::parse("D24")).name() == "D24");
}

TEST_CASE("classification table rows")
{
    using enum VarietyName;
    std::map<VarietyName, std::string> rows = {
        {C, "B45 D24 E12"},
        {TwoSL, "A13 A45 C12 C45 F12 F35"},
        {X, "A24 A25 B24 B25 E14 E24 F14 F24"},
        {SL, "A12 A15 A23 A34 A35 B14 B15 B34 B35 C13 C14 C23 C24 C25 C34 C35 D12 D14 D23 D25 D34 D45 E13 E15 E23 "
             "E25 F13 F15 F23 F34 F45"},
        {T2, "C15"},
        {T1, "A14 F25"},
        {S2, "B12 D15 E45"},
        {S1, "B13 B23 D13 D35 E34 E35"},
    };
    std::size_t total = 0;
    for (auto v : all_varieties()) {
        std::string names;
        for (auto & b : table1_members(v)) {
            names += (names.empty() ? "" : " ") + b.name();
            CHECK(table1_class(b) == v);
        }
        CHECK(names == rows.at(v));
        total += table1_members(v).size();
        CHECK(parse_variety(variety_name(v)) == v);
    }
    CHECK(total == 60);
    // Each class is closed under duality.
    for (auto & b : enumerate_bm())
        CHECK(table1_class(dual(b)) == table1_class(b));
    CHECK_FALSE(defining_identity(C).has_value());
    CHECK(*defining_identity(T2) == BMIdentity::parse("C15").identity());
    CHECK(*defining_identity(S1) == BMIdentity::parse("B13").identity());
}

TEST_CASE("inclusion order")
{
    using enum VarietyName;
    for (auto v : all_varieties()) {
        CHECK(included_in(v, v));
        CHECK(included_in(SL, v));
        CHECK(included_in(v, C));
    }
    CHECK(included_in(X, TwoSL));
    CHECK(included_in(T1, T2));
    CHECK(included_in(S1, S2));
    CHECK_FALSE(included_in(TwoSL, X));
    CHECK_FALSE(included_in(T2, T1));
    CHECK_FALSE(included_in(T1, S2));
    CHECK_FALSE(included_in(C, SL));
}

TEST_CASE("profiles agree with a naive checker")
{
    std::mt19937 rng{11};
    for (int trial = 0; trial < 40; ++trial) {
        auto g = oracle::random_table(rng, 2 + trial % 3, true);
        auto p = classify_bm(g);
        std::size_t held = 0;
        for (auto & b : enumerate_bm()) {
            auto h = oracle::holds(g, b.identity());
            CHECK(p[b] == h);
            held += h;
        }
        CHECK(p.count() == held);
        CHECK(p.to_string().size() == 60);
    }
    auto squag = load_fixture("fig4a");
    auto p = classify_bm(squag);
    for (auto & b : table1_members(VarietyName::T1))
        CHECK(p[b]);
    CHECK_FALSE(p[BMIdentity::parse("A12")]);
}

TEST_CASE("malformed names")
{
    CHECK_THROWS_AS(BMIdentity::parse("G12"), ParseError);
    CHECK_THROWS_AS(BMIdentity::parse("A21"), ParseError);
    CHECK_THROWS_AS(BMIdentity::parse("A1"), ParseError);
    CHECK_THROWS_AS(BMIdentity::parse("A16"), ParseError);
    CHECK_THROWS_AS(BMIdentity::from_index(60), InvalidArgument);
    CHECK_THROWS(parse_variety("T3"));
}
