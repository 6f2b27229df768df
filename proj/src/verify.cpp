#include <cig/verify.hpp>

#include <cig/bol_moufang.hpp>
#include <cig/congruence.hpp>
#include <cig/csp.hpp>
#include <cig/model_search.hpp>
#include <cig/plonka.hpp>
#include <cig/text_format.hpp>

#include <algorithm>
#include <cstdlib>
#include <random>

#ifndef CIG_DEFAULT_DATA_DIR
#define CIG_DEFAULT_DATA_DIR "data"
#endif

namespace cig {

namespace {
    // Size bounds for the bounded evidence behind each suite.
    constexpr std::size_t within_class_bound = 4;
    constexpr std::size_t separation_bound = 6;
    constexpr std::size_t inclusion_bound = 5;
    constexpr std::size_t intersection_bound = 5;
    constexpr std::size_t s2_bound = 4;
    constexpr std::size_t t2_bound = 6;
    constexpr std::size_t d23_bound = 5;
    constexpr std::size_t idempotent_lemma_bound = 4;
    constexpr std::size_t cid_bound = 5;
    constexpr std::size_t reduction_seeds = 100;
    constexpr std::size_t fold_permutations = 100;

    auto var(const char * name) -> Term { return Term::variable(name); }

    auto bm(const char * name) -> Identity { return BMIdentity::parse(name).identity(); }

    auto cells_text(const CayleyTable & g) -> std::string
    {
        std::string out;
        for (Element a = 0; a < g.size(); ++a) {
            if (a)
                out += '/';
            for (Element b = 0; b < g.size(); ++b)
                out += std::to_string(g(a, b));
        }
        return out;
    }

    auto models_up_to(std::vector<Identity> require, std::size_t max_n, bool commutative = true)
        -> std::vector<CayleyTable>
    {
        std::vector<CayleyTable> out;
        SearchSpec spec;
        spec.require = std::move(require);
        spec.commutative = commutative;
        for (std::size_t n = 1; n <= max_n; ++n) {
            spec.n = n;
            for (auto & g : enumerate_models(spec))
                out.push_back(g);
        }
        return out;
    }

    // Runs pred over every table and records a single check: the first
    // failure becomes the witness.
    template <typename Pred>
    auto check_all(SuiteReport & r, const std::string & id, const std::vector<CayleyTable> & tables, Pred pred)
        -> void
    {
        for (auto & g : tables) {
            std::string why;
            if (! pred(g, why)) {
                r.add(id, false, "table " + cells_text(g) + (why.empty() ? "" : ": " + why));
                return;
            }
        }
        r.add(id, true, std::to_string(tables.size()) + " tables");
    }

    auto holds_all(const CayleyTable & g, const std::vector<Identity> & ids, std::string & why) -> bool
    {
        for (auto & id : ids)
            if (auto v = find_violation(g, id)) {
                why = id.to_string() + " fails at " + to_string(*v);
                return false;
            }
        return true;
    }

    auto in_class(const CayleyTable & g, VarietyName v) -> bool
    {
        for (auto & b : table1_members(v))
            if (! check_identity(g, b.identity()))
                return false;
        return true;
    }

    auto outside_class(const CayleyTable & g, VarietyName v) -> bool
    {
        for (auto & b : table1_members(v))
            if (check_identity(g, b.identity()))
                return false;
        return true;
    }

    auto is_ci(const CayleyTable & g) -> bool
    {
        return check_property(g, Property::commutative) && check_property(g, Property::idempotent);
    }

    // ---------------------------------------------------------------- figures

    struct WitnessClaim
    {
        const char * fixture;
        const char * label;
        Identity identity;
        Assignment at;
        const char * lhs;
        const char * rhs;
    };

    auto figures() -> SuiteReport
    {
        SuiteReport r{"figures", {}};
        auto two_sl = laws::two_semilattice();
        auto assoc = laws::associative();
        std::vector<WitnessClaim> claims = {
            {"fig1", "2SL law", two_sl, {{"x", 0}, {"y", 1}}, "0(0·1)", "0·1"},
            {"fig2a", "2SL law", two_sl, {{"x", 0}, {"y", 1}}, "0(0·1)", "0·1"},
            {"fig2a", "C15", bm("C15"), {{"x", 0}, {"y", 1}, {"z", 1}}, "0(1(1·1))", "((0·1)1)1"},
            {"fig2a", "B12", bm("B12"), {{"x", 0}, {"y", 0}, {"z", 1}}, "0(0(0·1))", "0((0·0)1)"},
            {"fig2b", "A24", bm("A24"), {{"x", 0}, {"y", 1}, {"z", 2}}, "0((0·1)2)", "(0(0·1))2"},
            {"fig3a", "C15", bm("C15"), {{"x", 0}, {"y", 1}, {"z", 2}}, "0(1(1·2))", "((0·1)1)2"},
            {"fig3a", "B12", bm("B12"), {{"x", 0}, {"y", 1}, {"z", 2}}, "0(1(0·2))", "0((1·0)2)"},
            {"fig3a", "associativity", assoc, {{"x", 0}, {"y", 1}, {"z", 2}}, "(0·1)2", "0(1·2)"},
            {"fig3b", "A14", bm("A14"), {{"x", 0}, {"y", 1}, {"z", 2}}, "0(0(1·2))", "(0(0·1))2"},
            {"fig4a", "2SL law", two_sl, {{"x", 0}, {"y", 1}}, "0(0·1)", "(0·0)1"},
            {"fig4a", "B12", bm("B12"), {{"x", 0}, {"y", 0}, {"z", 1}}, "0(0(0·1))", "0((0·0)1)"},
            {"fig4b", "B13", bm("B13"), {{"x", 0}, {"y", 1}, {"z", 1}}, "0(1(0·1))", "(0·1)(0·1)"},
            {"fig4c", "2SL law", two_sl, {{"x", 0}, {"y", 1}}, "0(0·1)", "0·1"},
            {"fig4c", "C15", bm("C15"), {{"x", 0}, {"y", 0}, {"z", 1}}, "0(0(0·1))", "((0·0)0)1"},
        };
        for (auto & c : claims) {
            auto g = load_fixture(c.fixture);
            auto l = eval_ground(c.lhs, g), rr = eval_ground(c.rhs, g);
            auto il = eval_term(c.identity.lhs, c.at, g), ir = eval_term(c.identity.rhs, c.at, g);
            bool same_instance = std::minmax(l, rr) == std::minmax(il, ir);
            auto id = std::string{c.fixture} + "/" + c.label + " fails: " + c.lhs + "≠" + c.rhs;
            r.add(id, l != rr && same_instance,
                std::string{c.lhs} + "=" + std::to_string(l) + ", " + c.rhs + "=" + std::to_string(rr));
        }

        struct Membership
        {
            const char * fixture;
            VarietyName variety;
            bool member;
        };
        using enum VarietyName;
        std::vector<Membership> memberships = {
            {"fig2a", TwoSL, false}, {"fig2a", T2, false}, {"fig2a", S2, false},
            {"fig2b", TwoSL, true}, {"fig2b", X, false},
            {"fig3a", X, true}, {"fig3a", T2, false}, {"fig3a", S2, false}, {"fig3a", SL, false},
            {"fig3b", T2, true}, {"fig3b", T1, false},
            {"fig4a", T1, true}, {"fig4a", TwoSL, false}, {"fig4a", S2, false}, {"fig4a", SL, false},
            {"fig4b", S2, true}, {"fig4b", S1, false},
            {"fig4c", S1, true}, {"fig4c", TwoSL, false}, {"fig4c", T2, false}, {"fig4c", SL, false},
        };
        for (auto & m : memberships) {
            auto g = load_fixture(m.fixture);
            auto ok = m.member ? in_class(g, m.variety) : outside_class(g, m.variety);
            r.add(std::string{m.fixture} + (m.member ? " in " : " not in ") + variety_name(m.variety), ok);
        }
        for (auto & name : fixture_names()) {
            if (name == "fig1")
                continue;
            r.add(name + " is a CI-groupoid", is_ci(load_fixture(name)));
        }
        auto fig1 = load_fixture("fig1");
        r.add("fig1 idempotent and not commutative",
            check_property(fig1, Property::idempotent) && ! check_property(fig1, Property::commutative));
        r.add("fig1 satisfies A15 and A23", check_identity(fig1, bm("A15")) && check_identity(fig1, bm("A23")));
        r.add("fig4a latin-square and squag",
            check_property(load_fixture("fig4a"), Property::latin_square) &&
                check_property(load_fixture("fig4a"), Property::squag));

        SearchSpec squags{3, {laws::squag()}, {}};
        auto sq = enumerate_models(squags);
        r.add("unique 3-element squag", sq.size() == 1 && isomorphic(sq[0], load_fixture("fig4a")),
            std::to_string(sq.size()) + " model(s)");
        SearchSpec s1{3, {bm("B13")}, {laws::associative()}};
        auto s1_models = enumerate_models(s1);
        r.add("unique 3-element nonassociative S1 model",
            s1_models.size() == 1 && isomorphic(s1_models[0], load_fixture("fig4c")),
            std::to_string(s1_models.size()) + " model(s)");
        return r;
    }

    // ----------------------------------------------------------------- table1

    auto table1() -> SuiteReport
    {
        SuiteReport r{"table1", {}};
        auto all = enumerate_bm();
        bool distinct = all.size() == bm_count;
        for (std::size_t i = 0; i < all.size() && distinct; ++i)
            for (std::size_t j = i + 1; j < all.size() && distinct; ++j)
                distinct = ! (all[i].identity() == all[j].identity());
        r.add("60 distinct identities", distinct, std::to_string(all.size()) + " generated");

        bool canonical = all.front().name() == "A12" && all.back().name() == "F45";
        for (std::size_t k = 0; k < all.size(); ++k)
            canonical = canonical && all[k].index() == k;
        r.add("canonical (letter, i, j) order", canonical);

        bool involution = true;
        for (auto & b : all)
            involution = involution && dual(dual(b)) == b;
        r.add("dual is an involution", involution);

        std::vector<std::size_t> sizes;
        std::vector<bool> covered(bm_count, false);
        bool disjoint = true;
        for (auto v : all_varieties()) {
            auto members = table1_members(v);
            sizes.push_back(members.size());
            for (auto & b : members) {
                disjoint = disjoint && ! covered[b.index()];
                covered[b.index()] = true;
            }
        }
        auto size_text = std::string{};
        for (auto s : sizes)
            size_text += (size_text.empty() ? "" : "/") + std::to_string(s);
        r.add("classes partition the 60 with sizes 3/6/8/31/1/2/3/6",
            disjoint && std::all_of(covered.begin(), covered.end(), [](bool c) { return c; }) &&
                sizes == std::vector<std::size_t>{3, 6, 8, 31, 1, 2, 3, 6},
            size_text);

        auto e15 = BMIdentity::parse("E15");
        r.add("E15 decodes to x(y(zy)) ≈ ((xy)z)y", e15.identity() == parse_identity("x*(y*(z*y)) = ((x*y)*z)*y"),
            e15.identity().to_string());
        r.add("dual(E15) = B15", dual(e15).name() == "B15", dual(e15).name());
        r.add("dual(C15) = C15", dual(BMIdentity::parse("C15")).name() == "C15");
        r.add("dual(A14) = F25", dual(BMIdentity::parse("A14")).name() == "F25");
        r.add("B45 in C, C15 in T2, D35 in S1",
            table1_class(BMIdentity::parse("B45")) == VarietyName::C &&
                table1_class(BMIdentity::parse("C15")) == VarietyName::T2 &&
                table1_class(BMIdentity::parse("D35")) == VarietyName::S1);

        // Bounded evidence on every CI table up to the within-class bound.
        auto ci = models_up_to({}, within_class_bound);
        check_all(r, "dual identities agree on CI tables", ci, [&](const CayleyTable & g, std::string & why) {
            auto p = classify_bm(g);
            for (auto & b : all)
                if (p[b] != p[dual(b)]) {
                    why = b.name() + " vs " + dual(b).name();
                    return false;
                }
            return true;
        });
        check_all(r, "class members agree on CI tables", ci, [&](const CayleyTable & g, std::string & why) {
            auto p = classify_bm(g);
            for (auto v : all_varieties()) {
                auto members = table1_members(v);
                for (auto & b : members)
                    if (p[b] != p[members.front()]) {
                        why = b.name() + " vs " + members.front().name();
                        return false;
                    }
            }
            return true;
        });

        for (auto v : all_varieties()) {
            auto members = table1_members(v);
            std::size_t pairs = 0;
            std::string bad;
            for (auto & b : members)
                for (auto & c : members) {
                    if (b == c)
                        continue;
                    ++pairs;
                    if (bad.empty())
                        if (auto m = find_separating_model({b.identity()}, {c.identity()}, within_class_bound))
                            bad = b.name() + " without " + c.name() + ": " + cells_text(m->table);
                }
            r.add("no separation inside " + variety_name(v) + " up to n=4", bad.empty(),
                bad.empty() ? std::to_string(pairs) + " ordered pairs" : bad);
        }

        for (auto lower : all_varieties())
            for (auto upper : all_varieties()) {
                if (lower == upper || included_in(upper, lower))
                    continue;
                // A model of upper outside lower.
                auto sat = variety_identities(upper);
                auto unsat = variety_identities(lower);
                auto id = variety_name(upper) + " not within " + variety_name(lower);
                auto m = find_separating_model(sat, unsat, separation_bound);
                if (! m) {
                    r.add(id, false, "no model up to n=6");
                    continue;
                }
                std::string why;
                bool ok = holds_all(m->table, sat, why) && is_ci(m->table);
                for (std::size_t k = 0; k < unsat.size(); ++k) {
                    auto & w = m->witnesses[k];
                    ok = ok && eval_term(unsat[k].lhs, w.assignment, m->table) == w.lhs_value &&
                        eval_term(unsat[k].rhs, w.assignment, m->table) == w.rhs_value && w.lhs_value != w.rhs_value;
                    why += (why.empty() ? "" : " ") + std::string{"violation at "} + to_string(w);
                }
                r.add(id, ok, "n=" + std::to_string(m->table.size()) + " " + cells_text(m->table) + " " + why);
            }
        auto fig3b = load_fixture("fig3b");
        r.add("fig3b separates T2 from T1 at n=6", check_identity(fig3b, bm("C15")) && ! check_identity(fig3b, bm("A14")));

        for (auto lower : all_varieties())
            for (auto upper : all_varieties()) {
                if (lower == upper || ! included_in(lower, upper) || upper == VarietyName::C)
                    continue;
                auto models = models_up_to(variety_identities(lower), inclusion_bound);
                auto target = variety_identities(upper);
                check_all(r, variety_name(lower) + " within " + variety_name(upper) + " up to n=5", models,
                    [&](const CayleyTable & g, std::string & why) { return holds_all(g, target, why); });
            }
        return r;
    }

    // ---------------------------------------------------------- intersections

    auto intersections() -> SuiteReport
    {
        SuiteReport r{"intersections", {}};
        using enum VarietyName;
        std::pair<VarietyName, VarietyName> pairs[] = {{TwoSL, T2}, {TwoSL, S2}, {T2, S2}};
        for (auto [a, b] : pairs) {
            auto require = variety_identities(a);
            for (auto & id : variety_identities(b))
                require.push_back(id);
            auto models = models_up_to(require, intersection_bound);
            check_all(r, variety_name(a) + " ∩ " + variety_name(b) + " is SL up to n=5", models,
                [](const CayleyTable & g, std::string & why) {
                    why = "not associative";
                    return check_property(g, Property::semilattice);
                });
        }
        return r;
    }

    // --------------------------------------------------------------- s2-terms

    auto s2_terms() -> SuiteReport
    {
        SuiteReport r{"s2-terms", {}};
        auto x = var("x"), y = var("y"), z = var("z"), u = var("u");
        auto v = (x * y) * (z * (x * y));
        auto w = (x * y) * (z * u);
        Identity eq3{x * (x * y), (x * y) * (x * (x * y))};
        // v(y,x,x) = w(y,x,x,x)
        Identity link{substitute(v, {{"x", y}, {"y", x}, {"z", x}}), substitute(w, {{"x", y}, {"y", x}, {"z", x}, {"u", x}})};

        auto models = models_up_to(variety_identities(VarietyName::S2), s2_bound);
        models.push_back(load_fixture("fig4b"));
        check_all(r, "v is a WNU(3) term on S2 models up to n=4", models, [&](const CayleyTable & g, std::string &) {
            return term_condition(g, v, {"x", "y", "z"}, TermCondition::wnu(3));
        });
        check_all(r, "w is a WNU(4) term on S2 models up to n=4", models, [&](const CayleyTable & g, std::string &) {
            return term_condition(g, w, {"x", "y", "z", "u"}, TermCondition::wnu(4));
        });
        check_all(r, "v(y,x,x) = w(y,x,x,x) on S2 models up to n=4", models,
            [&](const CayleyTable & g, std::string & why) { return holds_all(g, {link}, why); });
        check_all(r, "x(xy) ≈ (xy)(x(xy)) on S2 models up to n=4", models,
            [&](const CayleyTable & g, std::string & why) { return holds_all(g, {eq3}, why); });

        auto squag = load_fixture("fig4a");
        Assignment at{{"x", 0}, {"y", 1}};
        auto l = eval_term(eq3.lhs, at, squag), rr = eval_term(eq3.rhs, at, squag);
        r.add("squag: 0(0·1)≠(0·1)(0(0·1))", l == 1 && rr == 0 && eval_ground("(0·1)(0(0·1))", squag) == 0,
            "0(0·1)=" + std::to_string(l) + ", (0·1)(0(0·1))=" + std::to_string(rr));
        return r;
    }

    // ----------------------------------------------------------- t2-structure

    auto fibers_are_squags(const PlonkaSystem & sys, std::string & why) -> bool
    {
        for (std::size_t s = 0; s < sys.fibers.size(); ++s) {
            auto & t = sys.fibers[s].table;
            if (! is_ci(t) || ! check_identity(t, laws::squag())) {
                why = "fiber " + std::to_string(s) + " is not a squag";
                return false;
            }
        }
        return true;
    }

    auto t2_structure() -> SuiteReport
    {
        SuiteReport r{"t2-structure", {}};
        auto join = t2_join();
        auto t2 = models_up_to(variety_identities(VarietyName::T2), t2_bound);
        for (auto & name : fixture_names()) {
            auto g = load_fixture(name);
            if (is_ci(g) && check_identity(g, bm("C15")))
                t2.push_back(g);
        }
        check_all(r, "y(xy) satisfies P1-P4 on T2 models up to n=6 and fixtures", t2,
            [&](const CayleyTable & g, std::string & why) {
                auto st = check_pseudopartition(g, join);
                why = st.to_string();
                return st.pseudopartition();
            });
        check_all(r, "sigma fibers of T2 models are squags", t2, [&](const CayleyTable & g, std::string & why) {
            return fibers_are_squags(decompose(g, join), why);
        });
        check_all(r, "T2 models: P5 holds exactly on T1 members", t2, [&](const CayleyTable & g, std::string & why) {
            auto p5 = check_pseudopartition(g, join).holds[4];
            auto t1 = check_identity(g, bm("A14"));
            why = std::string{"P5 "} + (p5 ? "holds" : "fails") + ", A14 " + (t1 ? "holds" : "fails");
            return p5 == t1;
        });

        auto fig3b = load_fixture("fig3b");
        auto st = check_pseudopartition(fig3b, join);
        r.add("fig3b: P1-P4 hold and P5 fails", st.pseudopartition() && ! st.holds[4], st.to_string());
        auto sys = decompose(fig3b, join);
        std::string why;
        r.add("fig3b: fibers are squags and carry no maps", fibers_are_squags(sys, why) && ! sys.maps, why);
        bool missing = false;
        try {
            plonka_sum(sys);
        }
        catch (const MissingFiberMaps &) {
            missing = true;
        }
        r.add("fig3b: plonka_sum reports missing fiber maps", missing);

        auto t1 = models_up_to(variety_identities(VarietyName::T1), t2_bound);
        t1.push_back(adjoin_infinity(load_fixture("fig4a")));
        check_all(r, "T1 models: P5 holds and the Płonka sum rebuilds the table", t1,
            [&](const CayleyTable & g, std::string & why) {
                auto st = check_pseudopartition(g, join);
                if (! st.partition()) {
                    why = st.to_string();
                    return false;
                }
                auto rebuilt = plonka_sum(decompose(g, join));
                why = "rebuilt " + cells_text(rebuilt);
                return rebuilt == g && isomorphic(rebuilt, g);
            });

        auto squag = load_fixture("fig4a");
        auto lattice = all_congruences(direct_product(squag, squag));
        r.add("Con(A²) has 6 elements, 4 atoms, height 2",
            lattice.size() == 6 && lattice.atoms().size() == 4 && lattice.height() == 2,
            std::to_string(lattice.size()) + " elements, " + std::to_string(lattice.atoms().size()) + " atoms, height " +
                std::to_string(lattice.height()));
        r.add("Con(A²) is not SD(∧)", ! is_sd_meet(lattice));
        r.add("the 3-element squag is simple", all_congruences(squag).size() == 2);
        r.add("Con of fig4c is SD(∧)", is_sd_meet(all_congruences(load_fixture("fig4c"))));
        return r;
    }

    // --------------------------------------------------------------- appendix

    auto lemma61() -> std::vector<Identity>
    {
        const char * text[] = {
            "x*(y*(y*x)) = y*(y*x)",
            "x*(y*(x*(x*(y*(x*(x*z)))))) = x*(y*(y*z))",
            "x*(y*(y*z)) = x*(y*(y*(x*(x*z))))",
            "(x*y)*(x*(x*z)) = (x*y)*z",
            "x*(y*(y*(z*(z*u)))) = x*((y*z)*(u*(y*z)))",
            "x*(y*(z*(z*(y*(z*(z*u)))))) = x*(y*(y*(z*(z*u))))",
            "x*(y*(x*(z*(z*y)))) = z*(z*(y*(y*x)))",
            "x*(y*(y*(z*(y*(y*x))))) = x*(z*(y*(y*x)))",
            "(x*(y*(y*z)))*(y*(y*u)) = (x*(y*(y*z)))*u",
            "x*(y*(y*(z*(z*x)))) = y*(y*(z*(z*x)))",
            "(x*y)*(z*(x*y)) = y*(y*(x*(x*z)))",
            "x*(x*(y*(y*z))) = y*(y*(x*(x*z)))",
        };
        std::vector<Identity> out;
        for (auto t : text)
            out.push_back(parse_identity(t));
        return out;
    }

    auto appendix() -> SuiteReport
    {
        SuiteReport r{"appendix", {}};
        auto t2 = models_up_to(variety_identities(VarietyName::T2), t2_bound);
        auto l61 = lemma61();
        for (std::size_t k = 0; k < l61.size(); ++k)
            check_all(r, "T2 models up to n=6: " + l61[k].to_string(), t2,
                [&](const CayleyTable & g, std::string & why) { return holds_all(g, {l61[k]}, why); });
        auto l62 = parse_identity("x*(x*(y*(y*z))) = (y*(x*y))*(z*(y*(x*y)))");
        check_all(r, "T2 models up to n=6: " + l62.to_string(), t2,
            [&](const CayleyTable & g, std::string & why) { return holds_all(g, {l62}, why); });
        auto p = plonka_identities(t2_join());
        for (std::size_t k = 0; k < 4; ++k)
            check_all(r, "T2 models up to n=6: P" + std::to_string(k + 1) + " " + p[k].to_string(), t2,
                [&](const CayleyTable & g, std::string & why) { return holds_all(g, {p[k]}, why); });

        auto d23 = models_up_to({bm("D23")}, d23_bound, false);
        std::vector<std::pair<std::string, Identity>> lemmas = {
            {"L1", parse_identity("((x*y)*x)*x = x*((y*x)*x)")},
            {"L2", parse_identity("x*((y*x)*x) = x*(y*x)")},
            {"2SL law", laws::two_semilattice()},
        };
        for (auto & [name, id] : lemmas)
            check_all(r, "idempotent D23 models up to n=5: " + name + " " + id.to_string(), d23,
                [&](const CayleyTable & g, std::string & why) { return holds_all(g, {id}, why); });
        for (auto name : {"A24", "A25", "A34", "B35", "C35"}) {
            auto models = models_up_to({bm(name)}, idempotent_lemma_bound, false);
            check_all(r, std::string{"idempotent "} + name + " models up to n=4: 2SL law", models,
                [&](const CayleyTable & g, std::string & why) { return holds_all(g, {laws::two_semilattice()}, why); });
        }
        return r;
    }

    // -------------------------------------------------------------- reduction

    struct Template
    {
        std::string name;
        CayleyTable table;
        Term join;
    };

    auto power_join(const CayleyTable & g) -> Term { return power_term("x", "y", cid_exponent(g)); }

    auto reduction_templates() -> std::vector<Template>
    {
        auto squag = load_fixture("fig4a");
        auto a3 = cie_cyclic(3);
        auto chain = CayleyTable{2, {0, 1, 1, 1}};
        auto sum = plonka_sum(make_system(chain, {squag, squag}, {{{0, 0}, {0, 1, 2}}, {{0, 1}, {0, 1, 2}}, {{1, 1}, {0, 1, 2}}}));
        return {
            {"A^inf(squag)", adjoin_infinity(squag), t2_join()},
            {"A_3", a3, power_join(a3)},
            {"A_3^inf", adjoin_infinity(a3), power_join(adjoin_infinity(a3))},
            {"T1 sum of two squags", sum, t2_join()},
        };
    }

    auto reduction() -> SuiteReport
    {
        SuiteReport r{"reduction", {}};
        for (auto & t : reduction_templates()) {
            r.add(t.name + ": join is a pseudopartition operation", check_pseudopartition(t.table, t.join).pseudopartition(),
                "join " + t.join.to_string());
            std::size_t agree = 0, sat = 0, transformed = 0;
            std::string bad;
            std::mt19937_64 rng{0x5eed};
            std::size_t fold_ok = 0, folds = 0;
            for (std::uint64_t seed = 1; seed <= reduction_seeds; ++seed) {
                auto inst = gen_instance(seed, t.table, 6, 5, 3);
                auto red = reduce_theorem41(inst, t.join);
                auto f = solve_brute(inst);
                auto h = solve_brute(red.reduced);
                if (f.has_value() == h.has_value())
                    ++agree;
                else if (bad.empty())
                    bad = "seed " + std::to_string(seed) + " verdicts differ";
                if (f) {
                    ++sat;
                    auto g = red.transform(*f);
                    if (satisfies(red.reduced, g) && satisfies(inst, red.lift(g)))
                        ++transformed;
                    else if (bad.empty())
                        bad = "seed " + std::to_string(seed) + " transform is not a solution";
                }
                // Fold-order invariance on the B_v of this instance.
                for (std::size_t v = 0; v < red.b.size() && ! red.empty_projection && folds < fold_permutations; ++v) {
                    auto order = red.b[v];
                    std::shuffle(order.begin(), order.end(), rng);
                    ++folds;
                    if (red.sigma.related(fold_join(red.join, order), red.a[v]))
                        ++fold_ok;
                }
            }
            r.add(t.name + ": reduction preserves satisfiability",
                agree == reduction_seeds && bad.empty(),
                std::to_string(agree) + "/" + std::to_string(reduction_seeds) + " agree, " + std::to_string(sat) +
                    " satisfiable" + (bad.empty() ? "" : "; " + bad));
            r.add(t.name + ": f(v) v a_v solves the reduced instance", transformed == sat,
                std::to_string(transformed) + "/" + std::to_string(sat));

            // Permutations of the whole carrier as well.
            auto sig = sigma(t.table, t.join);
            auto j = join_table(t.table, t.join);
            std::vector<Element> carrier(t.table.size());
            for (std::size_t e = 0; e < carrier.size(); ++e)
                carrier[e] = static_cast<Element>(e);
            auto base = fold_join(j, carrier);
            for (std::size_t k = 0; k < fold_permutations; ++k) {
                std::shuffle(carrier.begin(), carrier.end(), rng);
                ++folds;
                if (sig.related(fold_join(j, carrier), base))
                    ++fold_ok;
            }
            r.add(t.name + ": fold order keeps the sigma class", fold_ok == folds,
                std::to_string(fold_ok) + "/" + std::to_string(folds) + " permutations");
        }
        return r;
    }

    // -------------------------------------------------------------------- cid

    auto cid() -> SuiteReport
    {
        SuiteReport r{"cid", {}};
        r.add("cie_cyclic(3) equals the fig4a squag", cie_cyclic(3) == load_fixture("fig4a"));
        auto models = models_up_to({laws::distributive()}, cid_bound);
        check_all(r, "CID models up to n=5 decompose into Latin squares", models,
            [&](const CayleyTable & g, std::string & why) {
                auto e = cid_exponent(g);
                auto sys = decompose(g, power_term("x", "y", e));
                for (auto & f : sys.fibers)
                    if (! check_property(f.table, Property::latin_square)) {
                        why = "exponent " + std::to_string(e) + " gives a non-Latin fiber";
                        return false;
                    }
                return true;
            });
        for (std::size_t n : {1, 3, 5, 7}) {
            auto g = cie_cyclic(n);
            r.add("cie_cyclic(" + std::to_string(n) + ") is entropic and distributive",
                check_property(g, Property::entropic) && check_property(g, Property::distributive) && is_ci(g));
        }
        r.add("cid_exponent(squag) = 2", cid_exponent(load_fixture("fig4a")) == 2);
        r.add("cid_exponent(2-element semilattice) = 1", cid_exponent(CayleyTable{2, {0, 0, 0, 1}}) == 1);
        return r;
    }
}

auto SuiteReport::passed() const -> bool
{
    return std::all_of(checks.begin(), checks.end(), [](auto & c) { return c.pass; });
}

auto SuiteReport::add(std::string id, bool pass, std::string witness) -> void
{
    checks.push_back({std::move(id), pass, std::move(witness)});
}

auto suite_names() -> std::vector<std::string>
{
    return {"figures", "table1", "intersections", "s2-terms", "t2-structure", "appendix", "reduction", "cid"};
}

auto run_suite(const std::string & name) -> SuiteReport
{
    if (name == "figures")
        return figures();
    if (name == "table1")
        return table1();
    if (name == "intersections")
        return intersections();
    if (name == "s2-terms")
        return s2_terms();
    if (name == "t2-structure")
        return t2_structure();
    if (name == "appendix")
        return appendix();
    if (name == "reduction")
        return reduction();
    if (name == "cid")
        return cid();
    throw UnknownSuite("no suite named '" + name + "'");
}

auto data_dir() -> std::filesystem::path
{
    if (auto env = std::getenv("CIG_DATA_DIR"); env && *env)
        return env;
    return CIG_DEFAULT_DATA_DIR;
}

auto fixture_names() -> std::vector<std::string>
{
    return {"fig1", "fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b", "fig4c"};
}

auto load_fixture(const std::string & name) -> CayleyTable { return load_alg(data_dir() / (name + ".alg")); }

auto format_text(const SuiteReport & report) -> std::string
{
    std::string out;
    std::size_t passed = 0;
    for (auto & c : report.checks) {
        out += (c.pass ? "PASS " : "FAIL ") + c.id;
        if (! c.witness.empty())
            out += "  [" + c.witness + "]";
        out += "\n";
        passed += c.pass;
    }
    out += "suite " + report.name + ": " + std::to_string(passed) + "/" + std::to_string(report.checks.size()) +
        " checks passed\n";
    return out;
}

auto format_tsv(const SuiteReport & report) -> std::string
{
    std::string out;
    for (auto & c : report.checks)
        out += report.name + "\t" + c.id + "\t" + (c.pass ? "PASS" : "FAIL") + "\t" + c.witness + "\n";
    return out;
}

} // namespace cig
