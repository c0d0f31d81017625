#pragma once

// Virasoro minimal models M(p,q), gcd(p,q) = 1, 2 <= p < q.
//
// Primaries are Kac labels (r,s), 1 <= r < p, 1 <= s < q, modulo the
// identification (r,s) ~ (p-r, q-s); the canonical representative is the
// lexicographically smaller one. The deterministic ordering puts the vacuum
// (1,1) first, then the remaining labels lexicographically.
//
//   c            = 1 - 6 (q-p)^2 / (pq)
//   Delta_{r,s}  = ((qr - ps)^2 - (q-p)^2) / (4pq)
//   t_{(r,s)}    = Delta_{r,s} - c/24  (mod 1)
//   S entry      = 2 sqrt(2/(pq)) (-1)^(1 + s r' + r s')
//                    sin(pi q r r' / p) sin(pi p s s' / q)
//
// built exactly in Q[zeta_8pq] via sin(pi k/m) = (zeta_2m^k - zeta_2m^-k)/(2i)
// and a Gauss-sum square root; the validating constructor then rewrites the
// entries over Q[zeta_N].

#include <algorithm>
#include <string>
#include <vector>

#include "modrep/errors.hpp"
#include "modrep/modular_data.hpp"

namespace modrep {

struct KacLabel {
    long r = 0, s = 0;
    friend bool operator<(const KacLabel& a, const KacLabel& b) {
        return a.r != b.r ? a.r < b.r : a.s < b.s;
    }
    friend bool operator==(const KacLabel& a, const KacLabel& b) { return a.r == b.r && a.s == b.s; }
};

// Weights and T data alone; enough for all conductor arithmetic and cheap to
// build for large pq (no S matrix, no cyclotomic work).
struct MinimalModelSpectrum {
    long p = 0, q = 0;
    std::vector<KacLabel> kac;
    Rational c;
    std::vector<Rational> weights;
    std::vector<Rational> t_exponents;

    long rank() const { return static_cast<long>(kac.size()); }

    long conductor() const {
        Integer l = 1;
        for (const auto& t : t_exponents) l = lcm(l, den(t));
        return to_long(l);
    }

    long n_zero() const {
        Integer l = 1;
        for (const auto& t : t_exponents) l = lcm(l, den(mod1(t - t_exponents[0])));
        return to_long(l);
    }

    long ratio_e() const { return conductor() / n_zero(); }
};

namespace detail {

inline void validate_kac_pair(long& p, long& q) {
    if (p > q) std::swap(p, q);
    if (p < 2 || std::gcd(p, q) != 1)
        throw InvalidKacData("need coprime 2 <= p < q, got (" + std::to_string(p) + "," +
                             std::to_string(q) + ")");
}

// sin(pi a / b) = (zeta_2b^a - zeta_2b^-a) / (2i), exact.
inline CycNumber sin_pi(long a, long b) {
    CycNumber diff = CycNumber::root_of_unity(2 * b, a) - CycNumber::root_of_unity(2 * b, -a);
    return diff * (-CycNumber::root_of_unity(4, 1)) * Rational(1, 2);
}

}  // namespace detail

inline MinimalModelSpectrum minimal_model_spectrum(long p, long q) {
    detail::validate_kac_pair(p, q);
    MinimalModelSpectrum spec;
    spec.p = p;
    spec.q = q;
    for (long r = 1; r < p; ++r)
        for (long s = 1; s < q; ++s) {
            KacLabel lab{r, s}, mirror{p - r, q - s};
            if (mirror < lab) continue;
            spec.kac.push_back(lab);
        }
    std::sort(spec.kac.begin(), spec.kac.end());
    // Vacuum (1,1) is already lexicographically first among representatives.
    spec.c = Rational(1) - Rational(6 * (q - p) * (q - p), p * q);
    for (const auto& lab : spec.kac) {
        long d = q * lab.r - p * lab.s;
        Rational delta(d * d - (q - p) * (q - p), 4 * p * q);
        spec.weights.push_back(delta);
        spec.t_exponents.push_back(mod1(delta - spec.c / 24));
    }
    return spec;
}

inline ModularData minimal_model(long p, long q) {
    MinimalModelSpectrum spec = minimal_model_spectrum(p, q);
    p = spec.p;
    q = spec.q;
    const long r = spec.rank();

    std::vector<PrimaryLabel> labels;
    labels.reserve(static_cast<std::size_t>(r));
    for (long i = 0; i < r; ++i)
        labels.push_back({i, "(" + std::to_string(spec.kac[i].r) + "," + std::to_string(spec.kac[i].s) + ")"});

    // 2*sqrt(2pq)/(pq) = 2*sqrt(2/(pq)), rationalized.
    CycNumber norm = sqrt_integer(2 * p * q).scaled(Rational(2, p * q));

    CycMatrix s(r, r);
    for (long i = 0; i < r; ++i)
        for (long j = i; j < r; ++j) {
            const KacLabel &a = spec.kac[i], &b = spec.kac[j];
            long sign_exp = 1 + a.s * b.r + a.r * b.s;
            CycNumber v = norm * detail::sin_pi(q * a.r * b.r, p) * detail::sin_pi(p * a.s * b.s, q);
            if (sign_exp % 2 != 0) v = -v;
            s.at(i, j) = v;
            s.at(j, i) = v;
        }

    return ModularData::create(std::move(labels), std::move(s), spec.t_exponents, spec.c, 8 * p * q);
}

}  // namespace modrep
