// Acceptance run: one PASS/FAIL line per criterion, each with a pinned
// wall-clock limit. Exit status is nonzero if any criterion fails.
#include <cig/bol_moufang.hpp>
#include <cig/congruence.hpp>
#include <cig/model_search.hpp>
#include <cig/text_format.hpp>
#include <cig/verify.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace cig;

namespace {

struct Outcome
{
    bool pass;
    std::string detail;
};

struct Criterion
{
    int number;
    const char * title;
    double limit_seconds;
    std::function<Outcome()> run;
};

auto contains(const std::string & s, const char * part) { return s.find(part) != std::string::npos; }

// Runs a suite and keeps the checks accepted by the filter.
auto suite_outcome(const std::string & name, const std::function<bool(const std::string &)> & keep = {}) -> Outcome
{
    auto report = run_suite(name);
    std::size_t used = 0, passed = 0;
    std::string first_failure;
    for (auto & c : report.checks) {
        if (keep && ! keep(c.id))
            continue;
        ++used;
        passed += c.pass;
        if (! c.pass && first_failure.empty())
            first_failure = c.id + " [" + c.witness + "]";
    }
    auto detail = std::to_string(passed) + "/" + std::to_string(used) + " checks";
    if (! first_failure.empty())
        detail += "; first failure: " + first_failure;
    return {used > 0 && passed == used, detail};
}

auto bol_moufang_system() -> Outcome
{
    auto all = enumerate_bm();
    bool ok = all.size() == 60;
    for (auto & b : all)
        ok = ok && dual(dual(b)) == b;
    std::vector<std::size_t> sizes, expected{3, 6, 8, 31, 1, 2, 3, 6};
    std::size_t total = 0;
    for (auto v : all_varieties()) {
        sizes.push_back(table1_members(v).size());
        total += sizes.back();
    }
    ok = ok && sizes == expected && total == 60;
    auto e15 = BMIdentity::parse("E15");
    ok = ok && e15.identity() == parse_identity("x*(y*(z*y)) = ((x*y)*z)*y") && dual(e15).name() == "B15";
    return {ok, std::to_string(all.size()) + " identities, E15 = " + e15.identity().to_string()};
}

auto uniqueness() -> Outcome
{
    auto squags = enumerate_models(SearchSpec{3, {laws::squag()}, {}});
    auto s1 = enumerate_models(SearchSpec{3, {BMIdentity::parse("B13").identity()}, {laws::associative()}});
    bool ok = squags.size() == 1 && s1.size() == 1 && isomorphic(squags[0], load_fixture("fig4a")) &&
        isomorphic(s1[0], load_fixture("fig4c"));
    return {ok, std::to_string(squags.size()) + " squag(s), " + std::to_string(s1.size()) + " nonassociative S1 model(s)"};
}

auto squag_square() -> Outcome
{
    auto a = load_fixture("fig4a");
    auto lattice = all_congruences(direct_product(a, a));
    bool ok = lattice.size() == 6 && lattice.atoms().size() == 4 && lattice.height() == 2 && ! is_sd_meet(lattice);
    return {ok, std::to_string(lattice.size()) + " congruences, " + std::to_string(lattice.atoms().size()) +
                    " atoms, height " + std::to_string(lattice.height()) +
                    (is_sd_meet(lattice) ? ", SD(meet)" : ", not SD(meet)")};
}

} // namespace

int main()
{
    std::vector<Criterion> criteria = {
        {1, "Bol-Moufang system", 1, bol_moufang_system},
        {2, "example tables reproduce their witnesses", 1,
            [] { return suite_outcome("figures", [](auto & id) { return ! contains(id, "unique"); }); }},
        {3, "bounded soundness of the classification", 600,
            [] {
                return suite_outcome("table1", [](auto & id) {
                    return contains(id, "no separation inside") || contains(id, "not within") ||
                        contains(id, "separates");
                });
            }},
        {4, "uniqueness counts", 1, uniqueness},
        {5, "Con(A^2) of the 3-element squag", 60, squag_square},
        {6, "S2 terms", 60, [] { return suite_outcome("s2-terms"); }},
        {7, "T2 structure", 600, [] { return suite_outcome("t2-structure", [](auto & id) { return ! contains(id, "Con"); }); }},
        {8, "appendix identities", 600, [] { return suite_outcome("appendix"); }},
        {9, "reduction equivalence", 600, [] { return suite_outcome("reduction"); }},
        {10, "CID/CIE", 300, [] { return suite_outcome("cid"); }},
        {11, "bounded intersections", 600, [] { return suite_outcome("intersections"); }},
    };
    int failures = 0;
    for (auto & c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        }
        catch (const std::exception & e) {
            out = {false, std::string{"exception: "} + e.what()};
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = seconds <= c.limit_seconds;
        bool pass = out.pass && in_time;
        failures += ! pass;
        std::printf("%s criterion %d: %s (%s; %.3f s, limit %.0f s%s)\n", pass ? "PASS" : "FAIL", c.number, c.title,
            out.detail.c_str(), seconds, c.limit_seconds, in_time ? "" : ", over limit");
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures ? 1 : 0;
}
