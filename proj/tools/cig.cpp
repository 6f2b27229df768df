// Command-line front end for the cig library.
#include <cig/bol_moufang.hpp>
#include <cig/congruence.hpp>
#include <cig/csp.hpp>
#include <cig/error.hpp>
#include <cig/model_search.hpp>
#include <cig/plonka.hpp>
#include <cig/text_format.hpp>
#include <cig/verify.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace cig;

namespace {

constexpr int exit_unsat = 10;
constexpr int exit_error = 2;

enum class Format
{
    text,
    tsv
};

// Accepts a Bol-Moufang name ("C15"), a variety ("T2"), a property name
// ("squag") or a written identity ("x*(x*y) = x*y").
auto parse_identity_arg(const std::string & arg) -> std::vector<Identity>
{
    try {
        return {BMIdentity::parse(arg).identity()};
    }
    catch (const ParseError &) {
    }
    try {
        return variety_identities(parse_variety(arg));
    }
    catch (const Error &) {
    }
    try {
        return defining_identities(parse_property(arg));
    }
    catch (const Error &) {
    }
    return {parse_identity(arg)};
}

auto identity_args(const std::vector<std::string> & args) -> std::vector<Identity>
{
    std::vector<Identity> out;
    for (auto & a : args)
        for (auto & id : parse_identity_arg(a))
            out.push_back(id);
    return out;
}

auto read_file(const std::string & path) -> std::string
{
    std::ifstream in{path};
    if (! in)
        throw InvalidArgument("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

auto row(Format f, const std::vector<std::string> & fields) -> std::string
{
    std::string out;
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (k)
            out += f == Format::tsv ? "\t" : "  ";
        out += fields[k];
    }
    return out + "\n";
}

auto print_solution(const CSPInstance & inst, const Solution & s) -> void
{
    for (std::size_t v = 0; v < s.size(); ++v)
        std::cout << inst.names[v] << " = " << s[v] << "\n";
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Commutative idempotent groupoids: model search, Płonka sums and CSP reductions"};
    app.require_subcommand(1);
    std::string format_name = "text";
    app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"text", "tsv"}));

    int status = 0;

    // alg
    auto alg = app.add_subcommand("alg", "Work with Cayley tables");
    alg->require_subcommand(1);

    std::string check_file;
    std::vector<std::string> check_ids;
    auto alg_check = alg->add_subcommand("check", "Check identities or named properties on a table");
    alg_check->add_option("file", check_file, ".alg file")->required();
    alg_check->add_option("-i,--identity", check_ids, "Identity, Bol-Moufang name or property")->required();

    std::string classify_file;
    auto alg_classify = alg->add_subcommand("classify", "Bol-Moufang profile and class membership");
    alg_classify->add_option("file", classify_file, ".alg file")->required();

    std::size_t enum_n = 0;
    unsigned enum_workers = 1;
    bool enum_noncomm = false;
    std::vector<std::string> enum_require, enum_forbid;
    auto alg_enumerate = alg->add_subcommand("enumerate", "Enumerate CI models up to isomorphism");
    alg_enumerate->add_option("-n", enum_n, "Carrier size")->required();
    alg_enumerate->add_option("--require", enum_require, "Required identity");
    alg_enumerate->add_option("--forbid", enum_forbid, "Identity that must fail");
    alg_enumerate->add_flag("--non-commutative", enum_noncomm, "Drop the commutative law");
    alg_enumerate->add_option("--workers", enum_workers, "Worker threads")->check(CLI::Range(1u, 64u));

    std::vector<std::string> sep_sat, sep_unsat;
    std::size_t sep_max = 6;
    auto alg_separate = alg->add_subcommand("separate", "Smallest CI model satisfying --sat and violating --unsat");
    alg_separate->add_option("--sat", sep_sat, "Identity to satisfy");
    alg_separate->add_option("--unsat", sep_unsat, "Identity to violate")->required();
    alg_separate->add_option("--max-n", sep_max, "Largest carrier size");

    std::string con_file;
    auto alg_congruences = alg->add_subcommand("congruences", "Congruence lattice of a table");
    alg_congruences->add_option("file", con_file, ".alg file")->required();

    // plonka
    auto plonka = app.add_subcommand("plonka", "Pseudopartition operations and Płonka sums");
    plonka->require_subcommand(1);
    std::string join_text = "(y (x y))";
    std::string plonka_file;
    auto plonka_check = plonka->add_subcommand("check", "Check P1-P5 for a join term");
    plonka_check->add_option("--join", join_text, "Join term in x and y");
    plonka_check->add_option("file", plonka_file, ".alg file")->required();
    auto plonka_decompose = plonka->add_subcommand("decompose", "Replica, fibers and fiber maps");
    plonka_decompose->add_option("--join", join_text, "Join term in x and y");
    plonka_decompose->add_option("file", plonka_file, ".alg file")->required();
    auto plonka_sum_cmd = plonka->add_subcommand("sum", "Płonka sum of a system file");
    plonka_sum_cmd->add_option("file", plonka_file, "system file")->required();
    auto plonka_adjoin = plonka->add_subcommand("adjoin-infinity", "Adjoin an absorbing element");
    plonka_adjoin->add_option("file", plonka_file, ".alg file")->required();

    // cie
    std::size_t cie_n = 3;
    auto cie = app.add_subcommand("cie", "Affine CIE groupoid x*y = (x + y)/2 mod n");
    cie->add_option("n", cie_n, "Odd modulus")->required();

    // csp
    auto csp = app.add_subcommand("csp", "Constraint satisfaction instances");
    csp->require_subcommand(1);
    std::uint64_t gen_seed = 1;
    std::string gen_template;
    std::size_t gen_vars = 6, gen_constraints = 5, gen_arity = 3;
    auto csp_gen = csp->add_subcommand("gen", "Random instance over a template");
    csp_gen->add_option("--seed", gen_seed, "RNG seed");
    csp_gen->add_option("--template", gen_template, "Template .alg file")->required();
    csp_gen->add_option("--vars", gen_vars, "Variables");
    csp_gen->add_option("--constraints", gen_constraints, "Constraints");
    csp_gen->add_option("--max-arity", gen_arity, "Largest constraint arity")->check(CLI::Range(1, 6));

    std::string csp_file, method = "brute";
    auto csp_solve = csp->add_subcommand("solve", "Solve an instance");
    csp_solve->add_option("--method", method, "Solver")->check(CLI::IsMember({"brute", "consistency"}));
    csp_solve->add_option("file", csp_file, "instance file")->required();

    bool reduce_product = false, reduce_solve = false;
    auto csp_reduce = csp->add_subcommand("reduce", "Many-sorted reduction through a pseudopartition join");
    csp_reduce->add_option("--join", join_text, "Join term in x and y");
    csp_reduce->add_flag("--product", reduce_product, "Re-domain the result over the product of its sorts");
    csp_reduce->add_flag("--solve", reduce_solve, "Solve the reduced instance and report its verdict");
    csp_reduce->add_option("file", csp_file, "instance file")->required();

    // verify
    std::string suite;
    auto verify = app.add_subcommand("verify", "Run a named verification suite, or all");
    auto suites = suite_names();
    suites.push_back("all");
    verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(suites));

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        auto code = app.exit(e);
        return code == 0 ? 0 : exit_error;
    }
    auto fmt = format_name == "tsv" ? Format::tsv : Format::text;

    try {
        if (*alg_check) {
            auto g = load_alg(check_file);
            for (auto & id : identity_args(check_ids)) {
                auto v = find_violation(g, id);
                status = v ? 1 : status;
                std::cout << row(fmt, {id.to_string(), v ? "FAIL" : "holds", v ? to_string(*v) : ""});
            }
        }
        else if (*alg_classify) {
            auto g = load_alg(classify_file);
            auto p = classify_bm(g);
            std::cout << row(fmt, {"profile", p.to_string()});
            for (auto v : all_varieties()) {
                auto members = table1_members(v);
                std::size_t held = 0;
                for (auto & b : members)
                    held += p[b];
                std::cout << row(fmt, {variety_name(v), std::to_string(held) + "/" + std::to_string(members.size()),
                                          held == members.size() ? "member" : "not a member"});
            }
        }
        else if (*alg_enumerate) {
            SearchSpec spec{enum_n, identity_args(enum_require), identity_args(enum_forbid), ! enum_noncomm, true};
            auto models = enumerate_models(spec, enum_workers);
            for (std::size_t k = 0; k < models.size(); ++k)
                std::cout << (k ? "\n" : "") << to_alg(models[k]);
            std::cout << (models.empty() ? "" : "\n") << "# count=" << models.size() << "\n";
        }
        else if (*alg_separate) {
            auto unsat = identity_args(sep_unsat);
            auto m = find_separating_model(identity_args(sep_sat), unsat, sep_max);
            if (! m) {
                std::cout << "# none up to n=" << sep_max << "\n";
                status = 1;
            }
            else {
                std::cout << to_alg(m->table);
                for (std::size_t k = 0; k < unsat.size(); ++k)
                    std::cout << "# " << unsat[k].to_string() << " fails at " << to_string(m->witnesses[k]) << "\n";
            }
        }
        else if (*alg_congruences) {
            auto lattice = all_congruences(load_alg(con_file));
            for (auto & c : lattice.elements())
                std::cout << row(fmt, {"congruence", c.to_string()});
            std::cout << row(fmt, {"size", std::to_string(lattice.size())});
            std::cout << row(fmt, {"atoms", std::to_string(lattice.atoms().size())});
            std::cout << row(fmt, {"height", std::to_string(lattice.height())});
            std::cout << row(fmt, {"SD(meet)", is_sd_meet(lattice) ? "yes" : "no"});
        }
        else if (*plonka_check) {
            auto st = check_pseudopartition(load_alg(plonka_file), parse_term(join_text));
            std::cout << st.to_string() << "\n";
            status = st.pseudopartition() ? 0 : 1;
        }
        else if (*plonka_decompose) {
            std::cout << to_text(decompose(load_alg(plonka_file), parse_term(join_text)));
        }
        else if (*plonka_sum_cmd) {
            std::cout << to_alg(plonka_sum(parse_system(read_file(plonka_file))));
        }
        else if (*plonka_adjoin) {
            std::cout << to_alg(adjoin_infinity(load_alg(plonka_file)));
        }
        else if (*cie) {
            std::cout << to_alg(cie_cyclic(cie_n));
        }
        else if (*csp_gen) {
            std::cout << to_text(gen_instance(gen_seed, load_alg(gen_template), gen_vars, gen_constraints, gen_arity));
        }
        else if (*csp_solve) {
            auto inst = load_csp(csp_file);
            std::optional<Solution> s;
            if (method == "brute")
                s = solve_brute(inst);
            else {
                auto r = solve_consistency(inst);
                s = r.solution;
                if (r.refuted_without_search)
                    std::cout << "# refuted by consistency\n";
            }
            if (s) {
                std::cout << "sat\n";
                print_solution(inst, *s);
            }
            else {
                std::cout << "unsat\n";
                status = exit_unsat;
            }
        }
        else if (*csp_reduce) {
            auto inst = load_csp(csp_file);
            auto red = reduce_theorem41(inst, parse_term(join_text));
            auto out = reduce_product ? multisorted_to_product(red.reduced) : red.reduced;
            if (reduce_solve) {
                auto s = solve_brute(out);
                std::cout << (s ? "sat\n" : "unsat\n");
                if (s)
                    print_solution(out, *s);
                else
                    status = exit_unsat;
            }
            else
                std::cout << to_text(out);
        }
        else if (*verify) {
            auto names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
            for (auto & name : names) {
                auto report = run_suite(name);
                std::cout << (fmt == Format::tsv ? format_tsv(report) : format_text(report));
                status = report.passed() ? status : 1;
            }
        }
    }
    catch (const Error & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
    return status;
}
