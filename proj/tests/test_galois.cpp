#include "modrep/galois.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "modrep/minimal_models.hpp"
#include "modrep/modular_data.hpp"

namespace modrep {
namespace {

MonomialMatrix random_monomial(std::mt19937_64& rng, long n) {
    std::vector<long> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0L);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> sign(static_cast<std::size_t>(n));
    for (auto& s : sign) s = (rng() & 1) ? 1 : -1;
    return MonomialMatrix(std::move(perm), std::move(sign));
}

TEST(MonomialMatrix, ComposeAndInverseMatchMatrixAlgebra) {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 20; ++it) {
        MonomialMatrix g = random_monomial(rng, 6);
        MonomialMatrix h = random_monomial(rng, 6);
        EXPECT_TRUE((g * h).to_matrix() == g.to_matrix() * h.to_matrix());
        EXPECT_TRUE((g.inverse().to_matrix() * g.to_matrix()).is_identity());
        EXPECT_TRUE((g * g.inverse()).is_identity());
    }
}

TEST(MonomialMatrix, ConjugateDiagonalMatchesMatrixConjugation) {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 10; ++it) {
        MonomialMatrix g = random_monomial(rng, 5);
        std::vector<Rational> e;
        for (int i = 0; i < 5; ++i)
            e.emplace_back(static_cast<long>(rng() % 12), 12L);
        PhaseDiagonal d(e);
        CycMatrix lhs = g.inverse().to_matrix() * d.to_matrix() * g.to_matrix();
        EXPECT_TRUE(lhs == g.conjugate_diagonal(d).to_matrix());
    }
}

TEST(MonomialMatrix, RejectsMalformedData) {
    EXPECT_THROW(MonomialMatrix({0, 0}, {1, 1}), NotMonomial);
    EXPECT_THROW(MonomialMatrix({0, 2}, {1, 1}), NotMonomial);
    EXPECT_THROW(MonomialMatrix({1, 0}, {1, 2}), NotMonomial);
    EXPECT_THROW(MonomialMatrix({1, 0}, {1}), NotMonomial);
}

// In the Ising model the twist zeta -> zeta^5 negates sqrt(2), so it swaps
// the vacuum and energy columns and flips the sign on the spin column.
TEST(GaloisAction, IsingFrobeniusFiveIsKnownSignedPermutation) {
    ModularData md = minimal_model(3, 4);
    MonomialMatrix g = extract_g(md, 5);
    EXPECT_EQ(g.perm(), (std::vector<long>{2, 1, 0}));
    EXPECT_EQ(g.signs(), (std::vector<int>{1, -1, 1}));
}

TEST(GaloisAction, TrivialResiduesGiveIdentity) {
    for (auto [p, q] : {std::pair<long, long>{2, 5}, {3, 4}}) {
        ModularData md = minimal_model(p, q);
        long n = md.conductor();
        EXPECT_TRUE(extract_g(md, 1).is_identity());
        EXPECT_TRUE(extract_g(md, n + 1).is_identity());
        // S is real for these models, so complex conjugation fixes it.
        EXPECT_TRUE(extract_g(md, n - 1).is_identity());
    }
}

TEST(GaloisAction, TwistEqualsRightAndLeftMonomialAction) {
    for (auto [p, q] : {std::pair<long, long>{2, 5}, {3, 4}}) {
        ModularData md = minimal_model(p, q);
        const CycMatrix& s = md.s_matrix();
        for (long l : units_mod(md.conductor())) {
            MonomialMatrix g = extract_g(md, l);
            CycMatrix sl = sigma_on_matrix(s, l);
            EXPECT_TRUE(sl == s * g.to_matrix());
            EXPECT_TRUE(sl == g.inverse().to_matrix() * s);
        }
    }
}

TEST(GaloisAction, ClosedFormMatchesColumnExtraction) {
    for (auto [p, q] : {std::pair<long, long>{2, 5}, {3, 4}}) {
        ModularData md = minimal_model(p, q);
        for (long l : units_mod(md.conductor())) {
            EXPECT_TRUE(g_closed_form(md, l) == extract_g(md, l).to_matrix())
                << "model (" << p << "," << q << "), l = " << l;
        }
    }
}

TEST(GaloisAction, ExtractionIsMultiplicative) {
    for (auto [p, q] : {std::pair<long, long>{2, 5}, {3, 4}}) {
        ModularData md = minimal_model(p, q);
        long n = md.conductor();
        std::map<long, MonomialMatrix> gs;
        for (long l : units_mod(n)) gs.emplace(l, extract_g(md, l));
        for (const auto& [l, gl] : gs)
            for (const auto& [m, gm] : gs) {
                long lm = to_long(mod_floor(Integer(l) * m, n));
                EXPECT_TRUE(gl * gm == gs.at(lm));
            }
    }
}

TEST(GaloisAction, TExponentsFollowSquaredResidue) {
    for (auto [p, q] : {std::pair<long, long>{2, 5}, {3, 4}, {2, 7}}) {
        ModularData md = minimal_model(p, q);
        for (long l : units_mod(md.conductor())) {
            std::string w;
            EXPECT_TRUE(check_gtcom(md, l, &w)) << w;
        }
    }
}

TEST(GaloisAction, ConjugatingTDiagonalSquaresResidue) {
    ModularData md = minimal_model(2, 5);
    long n = md.conductor();
    for (long l : units_mod(n)) {
        MonomialMatrix g = extract_g(md, l);
        long l2 = to_long(mod_floor(Integer(l) * l, n));
        EXPECT_TRUE(g.conjugate_diagonal(md.t_diagonal()) ==
                    md.t_power(Rational(l2)));
    }
}

TEST(GaloisAction, VacuumRowCarriesTheSigns) {
    for (auto [p, q] : {std::pair<long, long>{2, 5}, {3, 4}}) {
        ModularData md = minimal_model(p, q);
        const CycMatrix& s = md.s_matrix();
        for (long l : units_mod(md.conductor())) {
            MonomialMatrix g = extract_g(md, l);
            for (long col = 0; col < md.rank(); ++col) {
                CycNumber expect =
                    s.at(0, g.perm_of(col)).scaled(Rational(g.sign_of(col)));
                EXPECT_TRUE(s.at(0, col).frobenius(l) == expect);
            }
        }
    }
}

TEST(GaloisAction, ConductorIsExactCyclotomicLevel) {
    for (auto [p, q] :
         {std::pair<long, long>{2, 5}, {3, 4}, {2, 7}, {4, 5}}) {
        ModularData md = minimal_model(p, q);
        std::string w;
        EXPECT_TRUE(conductor_fixed_field_check(md, &w)) << w;
    }
}

TEST(GaloisAction, ConductorCheckIsVacuousForRationalData) {
    std::vector<PrimaryLabel> labels{{0, "1"}};
    CycMatrix s(1, 1);
    s.at(0, 0) = CycNumber(1L);
    ModularData md = ModularData::create(labels, s, {Rational(0)}, Rational(0), 1);
    EXPECT_TRUE(conductor_fixed_field_check(md));
}

TEST(GaloisAction, NonGaloisStableMatrixIsRejected) {
    // (1/2) [[1, sqrt2], [sqrt2, 1]] is symmetric but its Frobenius twist is
    // not a signed column permutation of it.
    CycNumber half(Rational(1, 2));
    CycNumber r2 = sqrt_integer(2);
    CycMatrix s(2, 2);
    s.at(0, 0) = half;
    s.at(0, 1) = r2 * half;
    s.at(1, 0) = r2 * half;
    s.at(1, 1) = half;
    ModularData md = ModularData::create_unchecked(
        {{0, "a"}, {1, "b"}}, s, {Rational(0), Rational(0)}, Rational(0), 8);
    EXPECT_THROW(extract_g(md, 5), NotMonomial);
}

}  // namespace
}  // namespace modrep
