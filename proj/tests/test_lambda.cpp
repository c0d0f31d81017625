#include "modrep/lambda.hpp"

#include <gtest/gtest.h>

#include "modrep/minimal_models.hpp"

namespace modrep {
namespace {

TEST(Lambda, IntegerArgumentsGiveS) {
    ModularData md = minimal_model(2, 5);
    for (long k : {0L, 1L, -1L, 5L}) {
        EXPECT_TRUE(lambda(md, Rational(k)) == md.s_matrix()) << "k = " << k;
    }
}

TEST(Lambda, PeriodicWithPeriodOne) {
    ModularData md = minimal_model(2, 5);
    for (Rational r : {Rational(1, 2), Rational(2, 5), Rational(-3, 7)}) {
        EXPECT_TRUE(lambda(md, r + 1) == lambda(md, r));
    }
}

TEST(Lambda, ReciprocalConductorIsAPhase) {
    for (auto [p, q] : {std::pair<long, long>{2, 5}, {3, 4}}) {
        ModularData md = minimal_model(p, q);
        long n = md.conductor();
        EXPECT_TRUE(lambda(md, Rational(1, n)) ==
                    md.t_power(Rational(-2, n)).to_matrix());
    }
}

TEST(Lambda, UnitNumeratorClosedFormAgrees) {
    for (auto [p, q] : {std::pair<long, long>{2, 5}, {3, 4}}) {
        ModularData md = minimal_model(p, q);
        for (long n = 1; n <= 8; ++n) {
            EXPECT_TRUE(lambda(md, Rational(1, n)) == lambda_one_over_n(md, n))
                << "model (" << p << "," << q << "), n = " << n;
        }
    }
}

TEST(Lambda, TransposeSwapsToStarArgument) {
    ModularData md = minimal_model(3, 4);
    for (Rational r : {Rational(2, 5), Rational(3, 7), Rational(1, 4)}) {
        EXPECT_TRUE(lambda(md, r).transpose() == lambda(md, r_star(r)));
    }
}

TEST(Lambda, BezoutChoiceDoesNotMatter) {
    ModularData md = minimal_model(2, 5);
    // r = 2/5: the canonical section uses x = 3, y = 1; shift to x = 8, y = 3.
    SL2ZMatrix alt(2, 3, 5, 8);
    CycMatrix manual = md.t_power(Rational(-2, 5))
                           .left_apply(md.t_power(Rational(-8, 5))
                                           .right_apply(rep(md, alt)));
    EXPECT_TRUE(manual == lambda(md, Rational(2, 5)));
}

TEST(Lambda, StarIsAnInvolutionModOne) {
    EXPECT_EQ(r_star(Rational(0)), Rational(0));
    EXPECT_EQ(r_star(Rational(7)), Rational(0));
    EXPECT_EQ(r_star(Rational(2, 5)), Rational(3, 5));
    EXPECT_EQ(r_star(Rational(3, 5)), Rational(2, 5));
    for (Rational r : {Rational(1, 2), Rational(5, 12), Rational(-3, 7)}) {
        EXPECT_EQ(r_star(r_star(r)), mod1(r));
    }
}

TEST(ZMatrix, TrivialAtIntegerArguments) {
    ModularData md = minimal_model(2, 5);
    EXPECT_TRUE(extract_z(md, 7, Rational(0)).is_identity());
    EXPECT_TRUE(extract_z(md, 11, Rational(3)).is_identity());
}

TEST(ZMatrix, RejectsResidueSharingAFactor) {
    ModularData md = minimal_model(2, 5);
    EXPECT_THROW(extract_z(md, 3, Rational(1, 2)), NotCoprime);
    EXPECT_THROW(extract_z(md, 7, Rational(1, 7)), NotCoprime);
}

TEST(ZMatrix, AdditiveInTheArgument) {
    for (auto [p, q] : {std::pair<long, long>{2, 5}, {3, 4}}) {
        ModularData md = minimal_model(p, q);
        for (long l : {7L, 11L, 13L}) {
            EXPECT_TRUE(check_zadd(md, l, Rational(1, 2), Rational(1, 3)));
            EXPECT_TRUE(check_zadd(md, l, Rational(1, 4), Rational(1, 4)));
            EXPECT_TRUE(check_zadd(md, l, Rational(1, 3), Rational(2, 3)));
        }
    }
}

TEST(ZMatrix, PowerLawInTheArgument) {
    for (auto [p, q] : {std::pair<long, long>{2, 5}, {3, 4}}) {
        ModularData md = minimal_model(p, q);
        for (long l : {7L, 11L}) {
            EXPECT_TRUE(check_zmult(md, l, 2, Rational(1, 5)));
            EXPECT_TRUE(check_zmult(md, l, 5, Rational(1, 12)));
            EXPECT_TRUE(check_zmult(md, l, 3, Rational(1, 4)));
        }
    }
}

TEST(ZMatrix, GaloisCocycleRelation) {
    for (auto [p, q] : {std::pair<long, long>{2, 5}, {3, 4}}) {
        ModularData md = minimal_model(p, q);
        EXPECT_TRUE(check_zcoc(md, 7, 11, Rational(1, 2)));
        EXPECT_TRUE(check_zcoc(md, 11, 13, Rational(1, 4)));
        EXPECT_TRUE(check_zcoc(md, 7, 7, Rational(2, 5)));
    }
}

TEST(ZMatrix, ConjugatedPhaseRelation) {
    for (auto [p, q] : {std::pair<long, long>{2, 5}, {3, 4}}) {
        ModularData md = minimal_model(p, q);
        for (long l : {7L, 11L}) {
            for (Rational r : {Rational(1, 2), Rational(1, 5), Rational(1, 12)}) {
                EXPECT_TRUE(check_gtcom1(md, l, r))
                    << "model (" << p << "," << q << "), l = " << l;
            }
        }
    }
}

// Independent route to Z: the integers k_q = l^2 t_q - t_{perm(q)} give
// Z_l(r)^l = diag(exp(-2 pi i r k_q)), and raising to the inverse of l
// modulo den(r) recovers Z_l(r) itself.
TEST(ZMatrix, ClosedFormFromTExponents) {
    for (auto [p, q] : {std::pair<long, long>{2, 5}, {3, 4}}) {
        ModularData md = minimal_model(p, q);
        for (long l : {7L, 11L, 13L}) {
            MonomialMatrix g = extract_g(md, l);
            for (Rational r : {Rational(1, 2), Rational(1, 4), Rational(2, 5),
                               Rational(1, 12)}) {
                std::vector<Rational> e;
                for (long idx = 0; idx < md.rank(); ++idx) {
                    Rational k = Rational(l * l) * md.t_exponent(idx) -
                                 md.t_exponent(g.perm_of(idx));
                    ASSERT_EQ(den(k), 1);
                    e.push_back(mod1(-r * k));
                }
                Integer lhat = inv_mod(l, den(r));
                EXPECT_TRUE(PhaseDiagonal(e).pow(lhat) == extract_z(md, l, r))
                    << "model (" << p << "," << q << "), l = " << l;
            }
        }
    }
}

TEST(ZMatrix, InconsistentDataIsRejected) {
    ModularData genuine = minimal_model(2, 5);
    ModularData fake = ModularData::create_unchecked(
        genuine.labels(), genuine.s_matrix(),
        {Rational(0), Rational(1, 7)}, genuine.central_charge(), 420);
    EXPECT_THROW(extract_z(fake, 11, Rational(1, 2)), NotDiagonal);
}

}  // namespace
}  // namespace modrep
