#pragma once

// Exact integer and rational scalars plus the small number-theory kit used
// throughout: gcd/lcm, extended gcd, modular inverses, Euler phi, divisor
// and prime-power enumeration, Carmichael lambda.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "modrep/errors.hpp"

namespace modrep {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }
inline Integer lcm(const Integer& a, const Integer& b) { return boost::multiprecision::lcm(a, b); }

inline long to_long(const Integer& a) { return static_cast<long>(a); }

// Least non-negative residue.
inline Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

inline long mod_floor(long a, long m) {
    long r = a % m;
    if (r < 0) r += m;
    return r;
}

// Fractional part in [0, 1).
inline Rational mod1(const Rational& r) {
    Integer n = num(r), d = den(r);
    return Rational(mod_floor(n, d), d);
}

// g = ax + by with g = gcd(a, b) >= 0.
inline Integer xgcd(const Integer& a, const Integer& b, Integer& x, Integer& y) {
    Integer old_r = a, r = b;
    Integer old_x = 1, xx = 0;
    Integer old_y = 0, yy = 1;
    while (r != 0) {
        Integer q = old_r / r;  // truncated division is fine: invariants hold over Z
        Integer t = old_r - q * r; old_r = r; r = t;
        t = old_x - q * xx; old_x = xx; xx = t;
        t = old_y - q * yy; old_y = yy; yy = t;
    }
    if (old_r < 0) { old_r = -old_r; old_x = -old_x; old_y = -old_y; }
    x = old_x; y = old_y;
    return old_r;
}

// Inverse of a mod m, in [0, m). Throws NotCoprime when gcd(a, m) != 1.
inline Integer inv_mod(const Integer& a, const Integer& m) {
    Integer x, y;
    Integer g = xgcd(mod_floor(a, m), m, x, y);
    if (g != 1) throw NotCoprime("inverse of " + a.str() + " mod " + m.str());
    return mod_floor(x, m);
}

inline long inv_mod(long a, long m) { return to_long(inv_mod(Integer(a), Integer(m))); }

inline bool coprime(const Integer& a, const Integer& b) { return gcd(a, b) == 1; }
inline bool coprime(long a, long b) { return std::gcd(a, b) == 1; }

// Prime factorization by trial division; n up to ~1e12 is comfortable.
inline std::map<Integer, int> factorize(Integer n) {
    std::map<Integer, int> f;
    if (n < 0) n = -n;
    for (Integer p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) { ++f[p]; n /= p; }
    }
    if (n > 1) ++f[n];
    return f;
}

inline long euler_phi(long n) {
    long result = n;
    for (auto& [p, e] : factorize(Integer(n))) {
        long pl = to_long(p);
        result -= result / pl;
    }
    return result;
}

inline std::vector<long> divisors(long n) {
    std::vector<long> small, large;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
    return small;
}

// Units of Z/n in increasing order.
inline std::vector<long> units_mod(long n) {
    std::vector<long> u;
    for (long l = 1; l <= n; ++l)
        if (std::gcd(l, n) == 1) u.push_back(l % n == 0 ? 0 : l % n);
    if (n == 1) return {0};
    return u;
}

// Carmichael lambda (exponent of (Z/n)^*).
inline Integer carmichael_lambda(const Integer& n) {
    Integer result = 1;
    for (auto& [p, e] : factorize(n)) {
        Integer comp;
        if (p == 2) {
            if (e == 1) comp = 1;
            else if (e == 2) comp = 2;
            else comp = Integer(1) << (e - 2);
        } else {
            comp = (p - 1);
            for (int i = 1; i < e; ++i) comp *= p;
        }
        result = lcm(result, comp);
    }
    return result;
}

// lcm(1..r): the exponent of the symmetric group S_r.
inline Integer lcm_up_to(long r) {
    Integer v = 1;
    for (long i = 2; i <= r; ++i) v = lcm(v, Integer(i));
    return v;
}

inline std::string rational_str(const Rational& r) {
    return num(r).str() + "/" + den(r).str();
}

}  // namespace modrep
