#pragma once

#include <string>

#include "modrep/errors.hpp"
#include "modrep/galois.hpp"
#include "modrep/matrix.hpp"
#include "modrep/modular_data.hpp"
#include "modrep/numbers.hpp"
#include "modrep/phase.hpp"
#include "modrep/sl2.hpp"

namespace modrep {

// For r = k/n in lowest terms, r* = x/n with k x = 1 (mod n) and 0 <= x < n.
inline Rational r_star(const Rational& r) {
    Integer n = den(r);
    if (n == 1) return Rational(0);
    return Rational(inv_mod(num(r), n), n);
}

// Lambda(r) = T^{-r} D(m) T^{-r*} where m = (k, y; n, x) with k x - n y = 1.
// The matrix does not depend on the Bezout choice, and Lambda(r+1) equals
// Lambda(r); the canonical x in [0, n) makes the computation deterministic.
inline CycMatrix lambda(const ModularData& md, const Rational& r) {
    Integer k = num(r), n = den(r);
    Integer x = (n == 1) ? Integer(0) : inv_mod(k, n);
    Integer y = (k * x - 1) / n;  // exact: n divides k x - 1
    SL2ZMatrix m(k, y, n, x);
    CycMatrix mid = rep(md, m);
    PhaseDiagonal tl = md.t_power(-r);
    PhaseDiagonal tr = md.t_power(-r_star(r));
    return tl.left_apply(tr.right_apply(mid));
}

// Independent route for unit numerators:
// Lambda(1/n) = T^{-1/n} S^-1 T^{-n} S T^{-1/n}.
inline CycMatrix lambda_one_over_n(const ModularData& md, long n) {
    if (n < 1) throw DivisionByZero("denominator must be positive");
    PhaseDiagonal edge = md.t_power(Rational(-1, n));
    PhaseDiagonal mid = md.t_power(Rational(-n));
    const CycMatrix& s = md.s_matrix();
    CycMatrix x = mid.right_apply(s.conj_transpose());  // S^-1 T^-n
    x = x * s;                                          // S^-1 T^-n S
    return edge.left_apply(edge.right_apply(x));
}

// Solves sigma_l(Lambda(r*)) = Lambda(l r*) G_l Z for a diagonal Z whose
// entries are roots of unity of order dividing den(r).  Matching at the
// argument r* makes the solution Z_l(r), since r** = r (mod 1).
inline PhaseDiagonal extract_z(const ModularData& md, const Integer& l,
                               const Rational& r) {
    long n = to_long(den(r));
    Integer scope = lcm(Integer(n), Integer(md.conductor()));
    if (!coprime(mod_floor(l, scope), scope))
        throw NotCoprime("twist residue shares a factor with the working level");
    Rational rs = r_star(r);
    CycMatrix lhs = lambda(md, rs).frobenius(l);
    CycMatrix base = lambda(md, mod1(Rational(l) * rs)) *
                     extract_g(md, l).to_matrix();
    long rank = md.rank();
    std::vector<Rational> expo(static_cast<std::size_t>(rank));
    for (long q = 0; q < rank; ++q) {
        bool found = false;
        for (long j = 0; j < n && !found; ++j) {
            CycNumber z = CycNumber::root_of_unity(n, j);
            bool ok = true;
            for (long i = 0; i < rank && ok; ++i)
                ok = lhs.at(i, q) == base.at(i, q) * z;
            if (ok) {
                expo[static_cast<std::size_t>(q)] = Rational(j, n);
                found = true;
            }
        }
        if (!found)
            throw NotDiagonal("column " + std::to_string(q) +
                              " is not scaled by a root of order dividing " +
                              std::to_string(n));
    }
    return PhaseDiagonal(std::move(expo));
}

// Z_l(r1) Z_l(r2) = Z_l(r1 + r2) for l coprime to both denominators.
inline bool check_zadd(const ModularData& md, const Integer& l,
                       const Rational& r1, const Rational& r2) {
    return extract_z(md, l, r1) * extract_z(md, l, r2) ==
           extract_z(md, l, mod1(r1 + r2));
}

// Z_l(r)^k = Z_l(k r) for k coprime to the denominator of r.
inline bool check_zmult(const ModularData& md, const Integer& l,
                        const Integer& k, const Rational& r) {
    return extract_z(md, l, r).pow(k) ==
           extract_z(md, l, mod1(Rational(k) * r));
}

// G_l^-1 Z_m(lhat r) G_l = Z_{lm}(r) Z_l(r)^{-m} with lhat inverse to l
// modulo the denominator of r.
inline bool check_zcoc(const ModularData& md, const Integer& l,
                       const Integer& m, const Rational& r) {
    Integer lhat = den(r) == 1 ? Integer(0) : inv_mod(l, den(r));
    PhaseDiagonal lhs = extract_g(md, l).conjugate_diagonal(
        extract_z(md, m, mod1(Rational(lhat) * r)));
    PhaseDiagonal rhs =
        extract_z(md, Integer(l * m), r) * extract_z(md, l, r).pow(Integer(-m));
    return lhs == rhs;
}

// G_l^-1 T^r G_l = T^{l^2 r} Z_l(r)^l.  The exponent l^2 r must not be
// reduced mod 1: fractional T powers follow the pinned branch, which is
// periodic in the exponent only modulo the conductor.
inline bool check_gtcom1(const ModularData& md, const Integer& l,
                         const Rational& r) {
    PhaseDiagonal lhs = extract_g(md, l).conjugate_diagonal(md.t_power(r));
    PhaseDiagonal rhs =
        md.t_power(Rational(l * l) * r) * extract_z(md, l, r).pow(l);
    return lhs == rhs;
}

}  // namespace modrep
