// Command-line driver: builds modular data for a minimal model or loads it
// from a JSON file, then reports conductors, the Galois action, fractional
// identities, and the congruence kernel as deterministic text or JSON.
// All structured output is exact: integers as decimal strings, rationals as
// [numerator, denominator] string pairs.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "modrep/kernel.hpp"
#include "modrep/minimal_models.hpp"
#include "modrep/verify.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace modrep;

constexpr const char* kSchemaVersion = "1";

std::string rat_str(const Rational& r) { return rational_str(r); }

Json rat_json(const Rational& r) {
    return Json::array({num(r).str(), den(r).str()});
}

Json matrix_json(const SL2NMatrix& m) {
    return Json{{"a", std::to_string(m.a)},
                {"b", std::to_string(m.b)},
                {"c", std::to_string(m.c)},
                {"d", std::to_string(m.d)}};
}

void write_json(const std::string& path, const Json& j) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << j.dump(2) << "\n";
}

// Disjoint-cycle notation with fixed points omitted; "()" for the identity.
std::string cycle_str(const MonomialMatrix& g) {
    std::string out;
    std::vector<bool> seen(static_cast<std::size_t>(g.size()), false);
    for (long i = 0; i < g.size(); ++i) {
        if (seen[static_cast<std::size_t>(i)] || g.perm_of(i) == i) {
            seen[static_cast<std::size_t>(i)] = true;
            continue;
        }
        out += "(";
        long j = i;
        bool first = true;
        while (!seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = true;
            if (!first) out += " ";
            out += std::to_string(j);
            first = false;
            j = g.perm_of(j);
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

std::string signs_str(const MonomialMatrix& g) {
    std::string out;
    for (long q = 0; q < g.size(); ++q) out += g.sign_of(q) > 0 ? '+' : '-';
    return out;
}

struct Source {
    std::vector<long> model;
    std::string input;
    bool validate = true;  // only files can carry inconsistent data

    bool is_model() const { return !model.empty(); }

    std::string describe() const {
        if (is_model())
            return "M(" + std::to_string(model[0]) + "," +
                   std::to_string(model[1]) + ")";
        return input;
    }

    ModularData load() const {
        if (is_model()) return minimal_model(model[0], model[1]);
        return ModularData::load(input, validate);
    }
};

void add_source(CLI::App* cmd, Source& src) {
    auto* grp = cmd->add_option_group("source", "exactly one data source");
    grp->add_option("--model", src.model,
                    "minimal model p,q with gcd(p,q)=1 and 2 <= p < q")
        ->delimiter(',')
        ->expected(2);
    grp->add_option("--input", src.input, "modular-data JSON file");
    grp->require_option(1);
}

Integer parse_budget(const std::string& text) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw CLI::ValidationError("--budget must be a nonnegative integer");
    return Integer(text);
}

int run_analyze(const Source& src, const std::string& json_path,
                const std::string& save_path) {
    ModularData md = src.load();
    if (!save_path.empty()) md.save(save_path);
    auto checks = md.check_axioms();
    bool all_ok = true;
    for (const auto& c : checks) all_ok = all_ok && c.passed;

    std::cout << "source: " << src.describe() << "\n"
              << "rank: " << md.rank() << "\n"
              << "central charge: " << rat_str(md.central_charge()) << "\n"
              << "conductor N: " << md.conductor() << "\n"
              << "N0: " << md.n_zero() << "\n"
              << "e = N/N0: " << md.ratio_e() << "\n"
              << "primaries:\n";
    for (long i = 0; i < md.rank(); ++i)
        std::cout << "  " << i << ": " << md.labels()[i].name
                  << "  t = " << rat_str(md.t_exponent(i)) << "\n";
    std::cout << "axioms:\n";
    for (const auto& c : checks)
        std::cout << "  [" << (c.passed ? " OK " : "FAIL") << "] " << c.name
                  << (c.passed ? "" : "  -- " + c.witness) << "\n";
    std::cout << "fusion (nonzero coefficients):\n";
    const FusionTable& f = md.fusion();
    for (long p = 0; p < md.rank(); ++p)
        for (long q = p; q < md.rank(); ++q)
            for (long s = 0; s < md.rank(); ++s)
                if (f.at(p, q, s) != 0)
                    std::cout << "  N[" << p << "][" << q << "][" << s
                              << "] = " << f.at(p, q, s).str() << "\n";

    if (!json_path.empty()) {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "analyze";
        j["source"] = src.describe();
        j["rank"] = std::to_string(md.rank());
        j["central_charge"] = rat_json(md.central_charge());
        j["conductor"] = std::to_string(md.conductor());
        j["n_zero"] = std::to_string(md.n_zero());
        j["ratio"] = std::to_string(md.ratio_e());
        Json prim = Json::array();
        for (long i = 0; i < md.rank(); ++i)
            prim.push_back(Json{{"name", md.labels()[i].name},
                                {"t", rat_json(md.t_exponent(i))}});
        j["primaries"] = prim;
        Json ax = Json::array();
        for (const auto& c : checks)
            ax.push_back(Json{{"name", c.name},
                              {"passed", c.passed},
                              {"witness", c.witness}});
        j["axioms"] = ax;
        Json fus = Json::array();
        for (long p = 0; p < md.rank(); ++p)
            for (long q = p; q < md.rank(); ++q)
                for (long s = 0; s < md.rank(); ++s)
                    if (f.at(p, q, s) != 0)
                        fus.push_back(Json::array(
                            {std::to_string(p), std::to_string(q),
                             std::to_string(s), f.at(p, q, s).str()}));
        j["fusion"] = fus;
        write_json(json_path, j);
    }
    return all_ok ? 0 : 1;
}

int run_galois(const Source& src, const std::string& json_path) {
    ModularData md = src.load();
    long n = md.conductor();
    bool all_ok = true;
    Json rows = Json::array();
    long sw = std::max<long>(md.rank(), 5) + 2;
    std::cout << "source: " << src.describe() << "\n"
              << "conductor N: " << n << "\n"
              << std::setw(6) << "l" << "  " << std::left << std::setw(24)
              << "permutation" << std::setw(sw) << "signs"
              << "t-check" << std::right << "\n";
    for (long l : units_mod(n)) {
        MonomialMatrix g = extract_g(md, Integer(l));
        std::string wit;
        bool ok = check_gtcom(md, Integer(l), &wit);
        all_ok = all_ok && ok;
        std::cout << std::setw(6) << l << "  " << std::left << std::setw(24)
                  << cycle_str(g) << std::setw(sw) << signs_str(g)
                  << (ok ? "ok" : "FAIL " + wit) << std::right << "\n";
        Json perm = Json::array();
        for (long q = 0; q < g.size(); ++q)
            perm.push_back(std::to_string(g.perm_of(q)));
        rows.push_back(Json{{"l", std::to_string(l)},
                            {"permutation", perm},
                            {"cycles", cycle_str(g)},
                            {"signs", signs_str(g)},
                            {"t_check", ok}});
    }
    if (!json_path.empty()) {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "galois";
        j["source"] = src.describe();
        j["conductor"] = std::to_string(n);
        j["rows"] = rows;
        write_json(json_path, j);
    }
    return all_ok ? 0 : 1;
}

int run_lambda_check(const Source& src, const std::string& json_path) {
    ModularData md = src.load();
    long n = md.conductor();

    struct Counter {
        std::string name;
        long pass = 0;
        long fail = 0;
        std::vector<std::string> witnesses;
        void tally(bool ok, const std::string& wit) {
            if (ok) {
                ++pass;
            } else {
                ++fail;
                if (witnesses.size() < 4) witnesses.push_back(wit);
            }
        }
    };
    std::vector<Counter> counters{{"interpolation"}, {"addition law"},
                                  {"power law"},     {"cocycle law"},
                                  {"phase commutation"}};
    Counter& interp = counters[0];
    Counter& add = counters[1];
    Counter& pow = counters[2];
    Counter& coc = counters[3];
    Counter& gt = counters[4];

    interp.tally(lambda(md, Rational(0)) == md.s_matrix(), "Lambda(0) != S");
    interp.tally(lambda(md, Rational(1, n)) ==
                     md.t_power(Rational(-2, n)).to_matrix(),
                 "Lambda(1/N) is not the expected phase");
    std::vector<Rational> rs = detail::fraction_samples(n, 4);
    std::vector<long> ls;
    for (long l : units_mod(n)) {
        if (l == 1) continue;
        ls.push_back(l);
        if (ls.size() == 3) break;
    }
    if (ls.empty()) ls.push_back(1);
    for (const Rational& r : rs) {
        std::string at_r = " at r=" + rat_str(r);
        interp.tally(lambda(md, r + 1) == lambda(md, r),
                     "Lambda not periodic" + at_r);
        interp.tally(lambda(md, r).transpose() == lambda(md, r_star(r)),
                     "transpose/star mismatch" + at_r);
        for (long l : ls) {
            std::string at = " at l=" + std::to_string(l) + ", r=" + rat_str(r);
            add.tally(check_zadd(md, Integer(l), r, r), "same-argument" + at);
            if (rs.size() > 1)
                add.tally(check_zadd(md, Integer(l), r, rs[0]), "mixed" + at);
            long k = 2;
            while (std::gcd(k, to_long(den(r))) != 1) ++k;
            pow.tally(check_zmult(md, Integer(l), Integer(k), r),
                      "k=" + std::to_string(k) + at);
            gt.tally(check_gtcom1(md, Integer(l), r), at);
            for (long m : ls)
                coc.tally(check_zcoc(md, Integer(l), Integer(m), r),
                          "m=" + std::to_string(m) + at);
        }
    }

    bool all_ok = true;
    std::cout << "source: " << src.describe() << "\n"
              << std::left << std::setw(20) << "identity" << std::right
              << std::setw(6) << "pass" << std::setw(6) << "fail" << "\n";
    for (const auto& c : counters) {
        all_ok = all_ok && c.fail == 0;
        std::cout << std::left << std::setw(20) << c.name << std::right
                  << std::setw(6) << c.pass << std::setw(6) << c.fail << "\n";
        for (const auto& w : c.witnesses) std::cout << "    " << w << "\n";
    }
    std::cout << (all_ok ? "all identities hold" : "identity failures found")
              << "\n";

    if (!json_path.empty()) {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "lambda-check";
        j["source"] = src.describe();
        Json rows = Json::array();
        for (const auto& c : counters)
            rows.push_back(Json{{"identity", c.name},
                                {"pass", std::to_string(c.pass)},
                                {"fail", std::to_string(c.fail)},
                                {"witnesses", c.witnesses}});
        j["identities"] = rows;
        write_json(json_path, j);
    }
    return all_ok ? 0 : 1;
}

int run_kernel(const Source& src, const Integer& budget, bool emit_generators,
               bool emit_timing, const std::string& json_path) {
    ModularData md = src.load();
    KernelAnalyzer ka(md);
    KernelReport r = ka.analyze(budget);

    std::cout << "source: " << src.describe() << "\n"
              << "conductor N: " << r.conductor << "\n"
              << "N0: " << r.n_zero << "\n"
              << "e = N/N0: " << r.ratio << "\n"
              << "|SL2(Z/N)|: " << r.group_order.str() << "\n";
    if (!r.enumerated) {
        std::cout << "status: skipped-budget (group order exceeds "
                  << r.budget.str() << ")\n";
    } else {
        std::cout << "kernel order: " << r.kernel_order.str() << "\n"
                  << "closure verified: " << (r.closure_verified ? "yes" : "NO")
                  << "\n"
                  << "upper-triangular members are trivial: "
                  << (r.gamma1_matches_gamma ? "yes" : "NO") << "\n"
                  << "structural consequences hold: "
                  << (r.consequences_hold ? "yes" : "NO") << "\n"
                  << "center: order " << r.center_order.str() << ", invariants";
        for (long inv : r.center_invariants) std::cout << " " << inv;
        std::cout << "\nderived subgroup: order " << r.derived_order.str()
                  << (r.derived_abelian ? ", abelian, invariants" : ", non-abelian");
        if (r.derived_abelian)
            for (long inv : r.derived_invariants) std::cout << " " << inv;
        std::cout << "\n";
        if (emit_generators) {
            std::cout << "generators (" << r.generators.size() << "):\n";
            for (const auto& g : r.generators)
                std::cout << "  " << g.str() << "\n";
        }
    }
    if (emit_timing)
        std::cout << "milliseconds: "
                  << static_cast<long long>(r.seconds * 1000.0) << "\n";

    if (!json_path.empty()) {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "kernel";
        j["source"] = src.describe();
        j["conductor"] = std::to_string(r.conductor);
        j["n_zero"] = std::to_string(r.n_zero);
        j["ratio"] = std::to_string(r.ratio);
        j["group_order"] = r.group_order.str();
        j["budget"] = r.budget.str();
        j["enumerated"] = r.enumerated;
        j["kernel_order"] = r.kernel_order.str();
        j["closure_verified"] = r.closure_verified;
        j["gamma1_matches_gamma"] = r.gamma1_matches_gamma;
        j["consequences_hold"] = r.consequences_hold;
        j["center_order"] = r.center_order.str();
        Json ci = Json::array();
        for (long inv : r.center_invariants) ci.push_back(std::to_string(inv));
        j["center_invariants"] = ci;
        j["derived_order"] = r.derived_order.str();
        j["derived_abelian"] = r.derived_abelian;
        Json di = Json::array();
        for (long inv : r.derived_invariants) di.push_back(std::to_string(inv));
        j["derived_invariants"] = di;
        if (emit_generators) {
            Json gens = Json::array();
            for (const auto& g : r.generators) gens.push_back(matrix_json(g));
            j["generators"] = gens;
        }
        if (emit_timing)
            j["milliseconds"] =
                std::to_string(static_cast<long long>(r.seconds * 1000.0));
        write_json(json_path, j);
    }
    bool consistent = !r.enumerated ||
                      (r.closure_verified && r.gamma1_matches_gamma &&
                       r.consequences_hold);
    return consistent ? 0 : 1;
}

std::pair<long, long> parse_model_arg(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("models", "expected p,q but got " + text);
    try {
        long p = std::stol(text.substr(0, comma));
        long q = std::stol(text.substr(comma + 1));
        return {p, q};
    } catch (const std::exception&) {
        throw CLI::ValidationError("models", "expected p,q but got " + text);
    }
}

int run_table(const std::vector<std::string>& model_args, const Integer& budget,
              const std::string& json_path) {
    bool all_ok = true;
    Json rows = Json::array();
    std::cout << std::setw(4) << "p" << std::setw(5) << "q" << std::setw(7)
              << "N" << std::setw(7) << "N/N0" << std::setw(8) << "index"
              << "  status\n";
    for (const auto& arg : model_args) {
        auto [p, q] = parse_model_arg(arg);
        MinimalModelSpectrum spec = minimal_model_spectrum(p, q);
        long n = spec.conductor();
        Integer group = sl2n_group_order(n);
        std::string index = "-";
        std::string status = "skipped-budget";
        if (group <= budget) {
            ModularData md = minimal_model(p, q);
            KernelReport r = KernelAnalyzer(md).analyze(budget);
            index = r.kernel_order.str();
            bool consistent = r.enumerated && r.closure_verified &&
                              r.gamma1_matches_gamma && r.consequences_hold;
            all_ok = all_ok && consistent;
            status = consistent ? "computed" : "inconsistent";
        }
        std::cout << std::setw(4) << p << std::setw(5) << q << std::setw(7)
                  << n << std::setw(7) << spec.ratio_e() << std::setw(8)
                  << index << "  " << status << "\n";
        rows.push_back(Json{{"p", std::to_string(p)},
                            {"q", std::to_string(q)},
                            {"conductor", std::to_string(n)},
                            {"ratio", std::to_string(spec.ratio_e())},
                            {"index", index},
                            {"status", status}});
    }
    if (!json_path.empty()) {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "table";
        j["budget"] = budget.str();
        j["rows"] = rows;
        write_json(json_path, j);
    }
    return all_ok ? 0 : 1;
}

int run_bound(const std::vector<long>& ranks, const std::string& json_path) {
    Json rows = Json::array();
    std::cout << std::setw(5) << "rank" << "  bound\n";
    for (long r : ranks) {
        Integer b = conductor_bound_naive(r);
        std::cout << std::setw(5) << r << "  " << b.str() << "\n";
        rows.push_back(
            Json{{"rank", std::to_string(r)}, {"bound", b.str()}});
    }
    if (!json_path.empty()) {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "bound";
        j["rows"] = rows;
        write_json(json_path, j);
    }
    return 0;
}

int run_verify(const Source& src, const Integer& budget,
               const std::string& json_path) {
    ModularData md = src.load();
    VerifyOptions opt;
    opt.kernel_budget = budget;
    std::vector<SuiteResult> suites = verify_all(md, opt);

    std::cout << "source: " << src.describe() << "\n";
    long total_failures = 0;
    for (const auto& s : suites) {
        const char* tag = s.skipped ? "SKIP" : (s.ok() ? " OK " : "FAIL");
        std::cout << "[" << tag << "] " << std::left << std::setw(22) << s.name
                  << std::right << s.checks << " checks";
        if (s.failures > 0) std::cout << ", " << s.failures << " failures";
        std::cout << "\n";
        for (const auto& w : s.witnesses) std::cout << "       - " << w << "\n";
        total_failures += s.failures;
    }
    std::cout << (total_failures == 0 ? "all suites passed"
                                      : "suite failures found")
              << "\n";

    if (!json_path.empty()) {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["command"] = "verify";
        j["source"] = src.describe();
        Json rows = Json::array();
        for (const auto& s : suites)
            rows.push_back(Json{{"suite", s.name},
                                {"checks", std::to_string(s.checks)},
                                {"failures", std::to_string(s.failures)},
                                {"skipped", s.skipped},
                                {"witnesses", s.witnesses}});
        j["suites"] = rows;
        write_json(json_path, j);
    }
    return total_failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact modular-representation toolkit"};
    app.require_subcommand(1);

    // Worker-pool cap; all computations are deterministic regardless.
    if (const char* env = std::getenv("MODREP_THREADS")) {
        std::string v(env);
        if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos ||
            v == "0") {
            std::cerr << "error: MODREP_THREADS must be a positive integer\n";
            return 2;
        }
    }

    Source src_analyze, src_galois, src_lambda, src_kernel, src_verify;
    std::string json_analyze, json_galois, json_lambda, json_kernel,
        json_table, json_bound, json_verify, save_analyze;
    std::string budget_kernel = "10000000", budget_table = "10000000",
                budget_verify = "10000000";
    bool emit_generators = false, emit_timing = false;
    std::vector<std::string> table_models;
    std::vector<long> bound_ranks;

    CLI::App* analyze =
        app.add_subcommand("analyze", "conductors, axioms, and fusion");
    add_source(analyze, src_analyze);
    analyze->add_option("--json", json_analyze, "write a JSON report here");
    analyze->add_option("--save", save_analyze,
                        "write the modular data itself as a reloadable file");

    CLI::App* galois = app.add_subcommand(
        "galois", "signed permutation table of the Frobenius action");
    add_source(galois, src_galois);
    galois->add_option("--json", json_galois, "write a JSON report here");

    CLI::App* lambda_cmd = app.add_subcommand(
        "lambda-check", "fractional-argument identity counts");
    add_source(lambda_cmd, src_lambda);
    lambda_cmd->add_option("--json", json_lambda, "write a JSON report here");

    CLI::App* kernel =
        app.add_subcommand("kernel", "congruence kernel of the representation");
    add_source(kernel, src_kernel);
    kernel->add_option("--budget", budget_kernel,
                       "skip enumeration when |SL2(Z/N)| exceeds this");
    kernel->add_flag("--emit-generators", emit_generators,
                     "include the generating set in reports");
    kernel->add_flag("--emit-timing", emit_timing,
                     "include wall-clock milliseconds (non-reproducible)");
    kernel->add_option("--json", json_kernel, "write a JSON report here");

    CLI::App* table =
        app.add_subcommand("table", "kernel survey over minimal models");
    table->add_option("models", table_models, "models as p,q entries")
        ->required()
        ->expected(-1);
    table->add_option("--budget", budget_table,
                      "skip rows whose group order exceeds this");
    table->add_option("--json", json_table, "write a JSON report here");

    CLI::App* bound =
        app.add_subcommand("bound", "level bound by number of primaries");
    bound->add_option("ranks", bound_ranks, "primary counts (default 1..5)");
    bound->add_option("--json", json_bound, "write a JSON report here");

    CLI::App* verify =
        app.add_subcommand("verify", "run every identity suite");
    add_source(verify, src_verify);
    verify->add_option("--budget", budget_verify,
                       "kernel-suite enumeration budget");
    bool verify_no_validate = false;
    verify->add_flag("--no-validate", verify_no_validate,
                     "skip axiom validation on load so the suites can "
                     "report violations");
    verify->add_option("--json", json_verify, "write a JSON report here");

    try {
        app.parse(argc, argv);
        if (*analyze)
            return run_analyze(src_analyze, json_analyze, save_analyze);
        if (*galois) return run_galois(src_galois, json_galois);
        if (*lambda_cmd) return run_lambda_check(src_lambda, json_lambda);
        if (*kernel)
            return run_kernel(src_kernel, parse_budget(budget_kernel),
                              emit_generators, emit_timing, json_kernel);
        if (*table)
            return run_table(table_models, parse_budget(budget_table),
                             json_table);
        if (*bound) {
            if (bound_ranks.empty()) bound_ranks = {1, 2, 3, 4, 5};
            return run_bound(bound_ranks, json_bound);
        }
        if (*verify) {
            src_verify.validate = !verify_no_validate;
            return run_verify(src_verify, parse_budget(budget_verify),
                              json_verify);
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";  // what() carries the tag
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
