#pragma once

// Self-check suites over a modular datum.  Each suite replays one family of
// structural identities and reports how many individual checks ran and which
// failed, so callers can print a scoreboard instead of stopping at the first
// violation.  Suites never throw: an exception is converted into a failed
// record with the message as witness.

#include <random>
#include <string>
#include <vector>

#include "modrep/galois.hpp"
#include "modrep/kernel.hpp"
#include "modrep/lambda.hpp"
#include "modrep/modular_data.hpp"
#include "modrep/sl2.hpp"

namespace modrep {

struct SuiteResult {
    std::string name;
    long checks = 0;
    long failures = 0;
    bool skipped = false;   // suite could not run (e.g. budget); not a failure
    std::vector<std::string> witnesses;

    bool ok() const { return failures == 0; }
    void check(bool cond, const std::string& witness) {
        ++checks;
        if (!cond) {
            ++failures;
            if (witnesses.size() < 8) witnesses.push_back(witness);
        }
    }
};

struct VerifyOptions {
    std::uint64_t seed = 7;
    int random_words = 60;     // random group elements for word-level suites
    int oracle_samples = 120;  // membership cross-checks against the rep
    Integer kernel_budget = Integer(10000000);
    bool include_kernel = true;
};

namespace detail {

inline SL2NMatrix random_sl2n_word(std::mt19937_64& rng, long n) {
    SL2ZMatrix m;
    for (int i = 0; i < 14; ++i) {
        if (rng() & 1) {
            m = m * SL2ZMatrix::s_gen();
        } else {
            m = m * SL2ZMatrix::t_gen(static_cast<long>(rng() % (2 * n + 1)) - n);
        }
    }
    return mu_mod(m, n);
}

// Small sample of fractional arguments with denominators dividing n.
inline std::vector<Rational> fraction_samples(long n, std::size_t max_dens) {
    std::vector<Rational> out;
    std::size_t dens = 0;
    for (long d : divisors(n)) {
        if (d < 2) continue;
        if (d > 16) break;
        if (++dens > max_dens) break;
        long added = 0;
        for (long a = 1; a < d && added < 2; ++a) {
            if (std::gcd(a, d) != 1) continue;
            out.emplace_back(a, d);
            ++added;
        }
    }
    return out;
}

template <typename Fn>
SuiteResult run_suite(const std::string& name, Fn&& body) {
    SuiteResult res;
    res.name = name;
    try {
        body(res);
    } catch (const std::exception& e) {
        res.check(false, std::string("aborted: ") + e.what());
    }
    return res;
}

}  // namespace detail

// Defining axioms plus structural properties of the fusion coefficients.
inline SuiteResult verify_axioms(const ModularData& md) {
    return detail::run_suite("axioms", [&](SuiteResult& res) {
        for (const auto& chk : md.check_axioms())
            res.check(chk.passed, chk.name + ": " + chk.witness);
        const FusionTable& f = md.fusion();
        long r = md.rank();
        bool vacuum_ok = true, sym_ok = true, nonneg_ok = true;
        for (long p = 0; p < r; ++p)
            for (long q = 0; q < r; ++q) {
                if (f.at(0, p, q) != (md.charge_conjugation()[p] == q ? 1 : 0))
                    vacuum_ok = false;
                for (long s = 0; s < r; ++s) {
                    if (f.at(p, q, s) < 0) nonneg_ok = false;
                    if (f.at(p, q, s) != f.at(q, p, s) ||
                        f.at(p, q, s) != f.at(q, s, p))
                        sym_ok = false;
                }
            }
        res.check(vacuum_ok, "vacuum fusion is not charge conjugation");
        res.check(sym_ok, "fusion coefficients are not totally symmetric");
        res.check(nonneg_ok, "negative fusion coefficient");
    });
}

// Frobenius twists act on S by signed permutations with the expected
// compatibilities: two-sided monomial action, closed-form word, rigid
// permutation of T-exponents, multiplicativity, and exact field level.
inline SuiteResult verify_galois(const ModularData& md,
                                 const VerifyOptions& opt) {
    return detail::run_suite("galois-action", [&](SuiteResult& res) {
        long n = md.conductor();
        const CycMatrix& s = md.s_matrix();
        std::vector<long> units = units_mod(n);
        for (long l : units) {
            MonomialMatrix g = extract_g(md, Integer(l));
            CycMatrix gm = g.to_matrix();
            CycMatrix twisted = sigma_on_matrix(s, Integer(l));
            res.check(twisted == s * gm,
                      "sigma_" + std::to_string(l) + "(S) != S G");
            res.check(g.inverse().to_matrix() * s == twisted,
                      "G^-1 S != sigma_" + std::to_string(l) + "(S)");
            res.check(g_closed_form(md, Integer(l)) == gm,
                      "closed-form word disagrees at l=" + std::to_string(l));
            std::string wit;
            res.check(check_gtcom(md, Integer(l), &wit),
                      "l=" + std::to_string(l) + ": " + wit);
        }
        std::mt19937_64 rng(opt.seed);
        std::size_t pairs = units.size() <= 20 ? units.size() * units.size()
                                               : 100;
        for (std::size_t i = 0; i < pairs; ++i) {
            long a = units.size() <= 20 ? units[i / units.size()]
                                        : units[rng() % units.size()];
            long b = units.size() <= 20 ? units[i % units.size()]
                                        : units[rng() % units.size()];
            MonomialMatrix prod = extract_g(md, Integer(a)) *
                                  extract_g(md, Integer(b));
            res.check(prod == extract_g(md, Integer(a) * Integer(b)),
                      "G_" + std::to_string(a) + " G_" + std::to_string(b) +
                          " != G_" + std::to_string(a * b));
        }
        std::string wit;
        res.check(conductor_fixed_field_check(md, &wit), wit);
    });
}

// The representation factors through the residue group at the conductor and
// intertwines Frobenius with the twist of residue matrices.
inline SuiteResult verify_words(const ModularData& md,
                                const VerifyOptions& opt) {
    return detail::run_suite("word-representation", [&](SuiteResult& res) {
        long n = md.conductor();
        std::vector<long> units = units_mod(n);
        std::mt19937_64 rng(opt.seed + 1);
        for (int i = 0; i < opt.random_words; ++i) {
            SL2NMatrix m = detail::random_sl2n_word(rng, n);
            Integer l(units[rng() % units.size()]);
            res.check(check_gal2(md, m, l),
                      "twist mismatch at " + m.str() + ", l=" + l.str());
        }
        // conjugating the represented matrix by the Galois one squares the
        // residue twist
        RepEvaluator ev(md);
        for (int i = 0; i < 8; ++i) {
            SL2NMatrix m = detail::random_sl2n_word(rng, n);
            Integer l(units[rng() % units.size()]);
            CycMatrix gm = extract_g(md, l).to_matrix();
            CycMatrix x = ev.evaluate(lift_to_sl2z(m));
            res.check(extract_g(md, l).inverse().to_matrix() * x * gm ==
                          x.frobenius(mod_floor(l * l, n)),
                      "conjugation does not square the twist at " + m.str());
        }
        // products of conjugated T^{+-n} powers represent the identity
        for (int i = 0; i < 8; ++i) {
            SL2ZMatrix word;
            for (int j = 0; j < 3; ++j) {
                SL2ZMatrix g = lift_to_sl2z(detail::random_sl2n_word(rng, n));
                long sign = (rng() & 1) ? 1 : -1;
                word = word * g * SL2ZMatrix::t_gen(sign * n) * g.inverse();
            }
            res.check(ev.evaluate(word).is_identity(),
                      "level-" + std::to_string(n) +
                          " congruence word acts nontrivially");
        }
    });
}

// Fractional-argument identities: the Lambda family interpolates S and pure
// phases, and the diagonal cocycle obeys its addition, power, twist, and
// commutation laws.
inline SuiteResult verify_lambda(const ModularData& md,
                                 const VerifyOptions& opt) {
    return detail::run_suite("lambda-matrices", [&](SuiteResult& res) {
        long n = md.conductor();
        res.check(lambda(md, Rational(0)) == md.s_matrix(),
                  "Lambda(0) != S");
        res.check(lambda(md, Rational(1, n)) ==
                      md.t_power(Rational(-2, n)).to_matrix(),
                  "Lambda(1/N) is not the expected phase");
        std::vector<Rational> rs = detail::fraction_samples(n, 4);
        std::vector<long> units = units_mod(n);
        std::vector<long> ls;
        for (long l : units) {
            if (l == 1) continue;
            ls.push_back(l);
            if (ls.size() == 3) break;
        }
        if (ls.empty()) ls.push_back(1);
        for (const Rational& r : rs) {
            res.check(lambda(md, r + 1) == lambda(md, r),
                      "Lambda not periodic at r=" + rational_str(r));
            res.check(lambda(md, r).transpose() == lambda(md, r_star(r)),
                      "transpose/star mismatch at r=" + rational_str(r));
            for (long l : ls) {
                std::string at = " at l=" + std::to_string(l) +
                                 ", r=" + rational_str(r);
                res.check(check_zadd(md, Integer(l), r, r), "addition law" + at);
                if (rs.size() > 1)
                    res.check(check_zadd(md, Integer(l), r, rs[0]),
                              "addition law (mixed)" + at);
                long k = 2;
                while (std::gcd(k, to_long(den(r))) != 1) ++k;
                res.check(check_zmult(md, Integer(l), Integer(k), r),
                          "power law" + at);
                res.check(check_gtcom1(md, Integer(l), r),
                          "phase commutation" + at);
                for (long m : ls)
                    res.check(check_zcoc(md, Integer(l), Integer(m), r),
                              "cocycle law" + at + ", m=" + std::to_string(m));
            }
        }
    });
}

// Kernel membership: the table-driven criterion must agree with evaluating
// the representation, and the enumerated subgroup must satisfy its
// structural consequences.
inline SuiteResult verify_kernel(const ModularData& md,
                                 const VerifyOptions& opt) {
    return detail::run_suite("kernel", [&](SuiteResult& res) {
        KernelAnalyzer ka(md);
        long n = md.conductor();
        std::mt19937_64 rng(opt.seed + 2);
        for (int i = 0; i < opt.oracle_samples; ++i) {
            SL2NMatrix m = detail::random_sl2n_word(rng, n);
            res.check(ka.is_in_kernel(m) == ka.is_in_kernel_via_rep(m),
                      "criterion disagrees with the representation at " +
                          m.str());
        }
        KernelReport rep = ka.analyze(opt.kernel_budget);
        if (!rep.enumerated) {
            res.skipped = true;
            res.witnesses.push_back("group order " + rep.group_order.str() +
                                    " exceeds budget " +
                                    opt.kernel_budget.str());
            return;
        }
        res.check(rep.closure_verified, "kernel is not closed as enumerated");
        res.check(rep.gamma1_matches_gamma,
                  "upper-triangular members have nonzero shift");
        res.check(rep.consequences_hold,
                  "a kernel element violates a structural consequence");
        std::size_t stride = rep.elements.size() <= 64
                                 ? 1
                                 : rep.elements.size() / 64;
        for (std::size_t i = 0; i < rep.elements.size(); i += stride)
            res.check(ka.is_in_kernel_via_rep(rep.elements[i]),
                      "enumerated element fails the representation oracle: " +
                          rep.elements[i].str());
    });
}

inline std::vector<SuiteResult> verify_all(const ModularData& md,
                                           const VerifyOptions& opt = {}) {
    std::vector<SuiteResult> out;
    out.push_back(verify_axioms(md));
    out.push_back(verify_galois(md, opt));
    out.push_back(verify_words(md, opt));
    out.push_back(verify_lambda(md, opt));
    if (opt.include_kernel) out.push_back(verify_kernel(md, opt));
    return out;
}

}  // namespace modrep
