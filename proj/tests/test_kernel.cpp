#include "modrep/kernel.hpp"

#include <gtest/gtest.h>

#include <random>
#include <unordered_set>

#include "modrep/minimal_models.hpp"

namespace modrep {
namespace {

SL2NMatrix random_sl2n(std::mt19937_64& rng, long n) {
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

std::vector<SL2NMatrix> closure(long n, const std::vector<SL2NMatrix>& gens) {
    std::vector<SL2NMatrix> out{SL2NMatrix::identity(n)};
    std::unordered_set<std::uint64_t> seen{out[0].key()};
    for (std::size_t i = 0; i < out.size(); ++i)
        for (const auto& g : gens) {
            SL2NMatrix z = out[i] * g;
            if (seen.insert(z.key()).second) out.push_back(z);
        }
    return out;
}

TEST(Kernel, LeeYangMatchesPublishedData) {
    ModularData md = minimal_model(2, 5);
    KernelAnalyzer ka(md);
    KernelReport r = ka.analyze();
    EXPECT_TRUE(r.enumerated);
    EXPECT_EQ(r.conductor, 60);
    EXPECT_EQ(r.n_zero, 5);
    EXPECT_EQ(r.ratio, 12);
    EXPECT_EQ(r.group_order, 138240);
    EXPECT_EQ(r.kernel_order, 192);
    EXPECT_EQ(r.center_order, 4);
    EXPECT_EQ(r.center_invariants, (std::vector<long>{2, 2}));
    EXPECT_EQ(r.derived_order, 8);
    EXPECT_TRUE(r.derived_abelian);
    EXPECT_EQ(r.derived_invariants, (std::vector<long>{2, 2, 2}));
    EXPECT_TRUE(r.closure_verified);
    EXPECT_TRUE(r.gamma1_matches_gamma);
    EXPECT_TRUE(r.consequences_hold);
    // the greedy generating set must itself reproduce the kernel
    std::vector<SL2NMatrix> cl = closure(60, r.generators);
    EXPECT_EQ(cl.size(), 192u);
}

TEST(Kernel, IsingMatchesPublishedData) {
    ModularData md = minimal_model(3, 4);
    KernelAnalyzer ka(md);
    KernelReport r = ka.analyze();
    EXPECT_EQ(r.conductor, 48);
    EXPECT_EQ(r.n_zero, 16);
    EXPECT_EQ(r.ratio, 3);
    EXPECT_EQ(r.group_order, 73728);
    EXPECT_EQ(r.kernel_order, 64);
    EXPECT_EQ(r.center_order, 16);
    EXPECT_EQ(r.center_invariants, (std::vector<long>{2, 2, 4}));
    EXPECT_EQ(r.derived_order, 2);
    EXPECT_TRUE(r.derived_abelian);
    EXPECT_EQ(r.derived_invariants, (std::vector<long>{2}));
    EXPECT_TRUE(r.closure_verified);
    EXPECT_TRUE(r.gamma1_matches_gamma);
    EXPECT_TRUE(r.consequences_hold);
}

TEST(Kernel, SmallestSweepEntry) {
    ModularData md = minimal_model(3, 8);
    KernelReport r = KernelAnalyzer(md).analyze();
    EXPECT_EQ(r.conductor, 32);
    EXPECT_EQ(r.ratio, 1);
    EXPECT_EQ(r.kernel_order, 4);
}

TEST(Kernel, PublishedGeneratorsGenerateTheKernel) {
    ModularData ly = minimal_model(2, 5);
    KernelAnalyzer ka(ly);
    std::vector<SL2NMatrix> gens{
        {60, 19, 5, 5, 14}, {60, 31, 35, 5, 56}, {60, 56, 5, 35, 31}};
    for (const auto& g : gens) {
        EXPECT_TRUE(ka.is_in_kernel(g)) << g.str();
        EXPECT_TRUE(ka.kernel_consequences(g).all()) << g.str();
    }
    KernelReport r = ka.analyze();
    std::vector<SL2NMatrix> cl = closure(60, gens);
    std::sort(cl.begin(), cl.end());
    EXPECT_TRUE(cl == r.elements);

    ModularData ising = minimal_model(3, 4);
    KernelAnalyzer kb(ising);
    std::vector<SL2NMatrix> gens2{{48, 43, 40, 40, 35},
                                  {48, 29, 40, 40, 37},
                                  {48, 21, 8, 40, 45},
                                  {48, 35, 40, 40, 43}};
    for (const auto& g : gens2) {
        EXPECT_TRUE(kb.is_in_kernel(g)) << g.str();
        EXPECT_TRUE(kb.kernel_consequences(g).all()) << g.str();
    }
    KernelReport r2 = kb.analyze();
    std::vector<SL2NMatrix> cl2 = closure(48, gens2);
    std::sort(cl2.begin(), cl2.end());
    EXPECT_TRUE(cl2 == r2.elements);
}

// The table-driven criterion and the exact representation must agree, both
// on kernel members and on random group elements.
TEST(Kernel, CriterionAgreesWithTheRepresentation) {
    std::mt19937_64 rng(59);
    for (auto [p, q] : {std::pair<long, long>{2, 5}, {3, 4}}) {
        ModularData md = minimal_model(p, q);
        KernelAnalyzer ka(md);
        long n = md.conductor();
        EXPECT_FALSE(ka.is_in_kernel(mu_mod(SL2ZMatrix::s_gen(), n)));
        EXPECT_FALSE(ka.is_in_kernel_via_rep(mu_mod(SL2ZMatrix::s_gen(), n)));
        int agree = 0;
        for (int it = 0; it < 40; ++it) {
            SL2NMatrix m = random_sl2n(rng, n);
            bool fast = ka.is_in_kernel(m);
            EXPECT_EQ(fast, ka.is_in_kernel_via_rep(m)) << m.str();
            if (fast) ++agree;
        }
        (void)agree;
        KernelReport r = ka.analyze();
        for (std::size_t i = 0; i < r.elements.size(); i += 7)
            EXPECT_TRUE(ka.is_in_kernel_via_rep(r.elements[i]));
    }
}

TEST(Kernel, MembershipIsConjugationInvariant) {
    std::mt19937_64 rng(61);
    ModularData md = minimal_model(2, 5);
    KernelAnalyzer ka(md);
    long n = md.conductor();
    KernelReport r = ka.analyze();
    for (int it = 0; it < 25; ++it) {
        SL2NMatrix g = random_sl2n(rng, n);
        SL2NMatrix inside = r.elements[rng() % r.elements.size()];
        EXPECT_TRUE(ka.is_in_kernel(g * inside * g.inverse()));
        SL2NMatrix any = random_sl2n(rng, n);
        EXPECT_EQ(ka.is_in_kernel(any),
                  ka.is_in_kernel(g * any * g.inverse()));
    }
}

TEST(Kernel, TrivialModelHasTrivialGroup) {
    std::vector<PrimaryLabel> labels{{0, "1"}};
    CycMatrix s(1, 1);
    s.at(0, 0) = CycNumber(1L);
    ModularData md =
        ModularData::create(labels, s, {Rational(0)}, Rational(0), 1);
    KernelReport r = KernelAnalyzer(md).analyze();
    EXPECT_TRUE(r.enumerated);
    EXPECT_EQ(r.conductor, 1);
    EXPECT_EQ(r.kernel_order, 1);
    EXPECT_TRUE(r.generators.empty());
    EXPECT_TRUE(r.center_invariants.empty());
    EXPECT_TRUE(r.closure_verified);
    EXPECT_TRUE(r.consequences_hold);
}

TEST(Kernel, BudgetStopsEnumerationButKeepsArithmetic) {
    ModularData md = minimal_model(2, 5);
    KernelReport r = KernelAnalyzer(md).analyze(Integer(1000));
    EXPECT_FALSE(r.enumerated);
    EXPECT_EQ(r.group_order, 138240);
    EXPECT_EQ(r.conductor, 60);
    EXPECT_EQ(r.n_zero, 5);
    EXPECT_EQ(r.kernel_order, 0);
    EXPECT_TRUE(r.elements.empty());
}

TEST(ConductorBound, FrozenValuesAndPublishedDivisors) {
    EXPECT_EQ(conductor_bound_naive(1), 24);
    EXPECT_EQ(conductor_bound_naive(2), 240);
    EXPECT_EQ(conductor_bound_naive(3), 65520);
    EXPECT_EQ(conductor_bound_naive(4), 131040);
    EXPECT_EQ(conductor_bound_naive(5), Integer("558781423200"));
    // the published sharper bounds divide the naive ones
    EXPECT_EQ(conductor_bound_naive(2) % 240, 0);
    EXPECT_EQ(conductor_bound_naive(3) % 5040, 0);
    EXPECT_EQ(conductor_bound_naive(4) % 10080, 0);
    EXPECT_EQ(conductor_bound_naive(5) % 1441440, 0);
}

TEST(ConductorBound, BruteForceMaximumAgrees) {
    // independent route: scan all levels and keep the largest whose unit
    // group exponent divides the target
    auto brute = [](long target, long window) {
        long best = 1;
        for (long m = 1; m <= window; ++m) {
            if (to_long(carmichael_lambda(Integer(m))) <= 0) continue;
            if (target % to_long(carmichael_lambda(Integer(m))) == 0) best = m;
        }
        return best;
    };
    EXPECT_EQ(brute(4, 1000), 240);
    EXPECT_EQ(brute(12, 70000), 65520);
}

TEST(ConductorBound, ModelConductorsDivideTheBound) {
    for (auto [p, q] :
         {std::pair<long, long>{2, 5}, {3, 4}, {2, 7}, {3, 5}, {4, 5}}) {
        ModularData md = minimal_model(p, q);
        EXPECT_EQ(conductor_bound_naive(md.rank()) % md.conductor(), 0)
            << "model (" << p << "," << q << ")";
    }
}

}  // namespace
}  // namespace modrep
