#pragma once

// Exact arithmetic in cyclotomic fields Q[zeta_n], zeta_n = exp(2*pi*i/n).
//
// Conventions:
//   * Elements are stored over the power basis 1, zeta, ..., zeta^(phi(n)-1),
//     i.e. polynomials in zeta reduced modulo the n-th cyclotomic polynomial
//     Phi_n. The reduced vector is the canonical form: two elements of the
//     same order are equal iff their coefficient vectors are equal.
//   * Operands of different order are first embedded into Q[zeta_lcm].
//   * frobenius(l) is the automorphism zeta_n -> zeta_n^l, gcd(l, n) = 1.
//   * Values are immutable in spirit: every operation returns a fresh value,
//     so sharing CycNumbers across threads is safe.

#include <complex>
#include <map>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "modrep/errors.hpp"
#include "modrep/numbers.hpp"

namespace modrep {

namespace detail {

// Exact quotient of integer polynomials, divisor monic, zero remainder.
inline std::vector<Integer> poly_div_exact(std::vector<Integer> a,
                                           const std::vector<Integer>& b) {
    const long db = static_cast<long>(b.size()) - 1;
    const long da = static_cast<long>(a.size()) - 1;
    std::vector<Integer> q(da - db + 1, Integer(0));
    for (long i = da; i >= db; --i) {
        if (a[i] == 0) continue;
        Integer c = a[i];
        q[i - db] = c;
        for (long j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

}  // namespace detail

// Phi_n, monic, ascending coefficients. Computed by dividing x^n - 1 by the
// cyclotomic polynomials of the proper divisors of n; results are cached.
inline const std::vector<Integer>& cyclotomic_polynomial(long n) {
    static std::map<long, std::vector<Integer>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    for (long d : divisors(n)) {
        if (cache.count(d)) continue;
        std::vector<Integer> p(d + 1, Integer(0));
        p[0] = -1;
        p[d] = 1;
        for (long e : divisors(d))
            if (e < d) p = detail::poly_div_exact(std::move(p), cache.at(e));
        cache.emplace(d, std::move(p));
    }
    return cache.at(n);
}

class CycNumber {
public:
    CycNumber() : order_(1), c_(1, Rational(0)) {}
    explicit CycNumber(const Rational& x) : order_(1), c_(1, x) {}
    explicit CycNumber(long x) : order_(1), c_(1, Rational(x)) {}

    static CycNumber zero(long n) { return CycNumber(n, std::vector<Rational>(degree_of(n), Rational(0))); }

    static CycNumber one(long n) {
        auto v = std::vector<Rational>(degree_of(n), Rational(0));
        v[0] = 1;
        return CycNumber(n, std::move(v));
    }

    // zeta_n^k
    static CycNumber root_of_unity(long n, long k) {
        if (n < 1) throw OrderMismatch("root order must be positive");
        std::vector<Rational> raw(n, Rational(0));
        raw[mod_floor(k, n)] = 1;
        return from_power_basis(n, std::move(raw));
    }

    // Arbitrary polynomial in zeta_n, reduced mod Phi_n.
    static CycNumber from_power_basis(long n, std::vector<Rational> raw) {
        return CycNumber(n, reduce_mod_phi(n, std::move(raw)));
    }

    long order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    Rational as_rational() const {
        if (!is_rational()) throw OrderMismatch("value is not rational");
        return c_[0];
    }

    bool is_one() const { return is_rational() && c_[0] == 1; }

    friend CycNumber operator+(const CycNumber& a, const CycNumber& b) {
        auto [x, y] = aligned(a, b);
        for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }

    friend CycNumber operator-(const CycNumber& a, const CycNumber& b) {
        auto [x, y] = aligned(a, b);
        for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
        return x;
    }

    CycNumber operator-() const {
        CycNumber r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend CycNumber operator*(const CycNumber& a, const CycNumber& b) {
        auto [x, y] = aligned(a, b);
        if (x.is_rational()) return y.scaled(x.c_[0]);
        if (y.is_rational()) return x.scaled(y.c_[0]);
        std::vector<Rational> raw(x.c_.size() + y.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i] == 0) continue;
            for (std::size_t j = 0; j < y.c_.size(); ++j) {
                if (y.c_[j] == 0) continue;
                raw[i + j] += x.c_[i] * y.c_[j];
            }
        }
        return CycNumber(x.order_, reduce_mod_phi(x.order_, std::move(raw)));
    }

    CycNumber scaled(const Rational& s) const {
        CycNumber r = *this;
        for (auto& x : r.c_) x *= s;
        return r;
    }

    friend CycNumber operator*(const CycNumber& a, const Rational& s) { return a.scaled(s); }
    friend CycNumber operator*(const Rational& s, const CycNumber& a) { return a.scaled(s); }

    CycNumber& operator+=(const CycNumber& b) { return *this = *this + b; }
    CycNumber& operator-=(const CycNumber& b) { return *this = *this - b; }
    CycNumber& operator*=(const CycNumber& b) { return *this = *this * b; }

    friend bool operator==(const CycNumber& a, const CycNumber& b) {
        if (a.order_ == b.order_) return a.c_ == b.c_;
        auto [x, y] = aligned(a, b);
        return x.c_ == y.c_;
    }
    friend bool operator!=(const CycNumber& a, const CycNumber& b) { return !(a == b); }

    // zeta_n -> zeta_n^l; requires gcd(l, n) = 1.
    CycNumber frobenius(const Integer& l) const {
        long ln = to_long(mod_floor(l, Integer(order_)));
        if (std::gcd(ln, order_) != 1)
            throw NotCoprime("frobenius exponent " + l.str() + " vs order " + std::to_string(order_));
        if (order_ == 1 || ln == 1) return *this;
        std::vector<Rational> raw(order_, Rational(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            raw[(static_cast<long>(i) * ln) % order_] += c_[i];
        }
        return from_power_basis(order_, std::move(raw));
    }

    // Complex conjugation: zeta -> zeta^(-1).
    CycNumber conj() const { return order_ <= 2 ? *this : frobenius(Integer(order_ - 1)); }

    // Multiply by zeta_order^k (cheap monomial shift).
    CycNumber times_root(long k) const {
        k = mod_floor(k, order_);
        if (k == 0) return *this;
        std::vector<Rational> raw(order_ + degree(), Rational(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            raw[(static_cast<long>(i) + k) % order_] += c_[i];
        }
        return from_power_basis(order_, std::move(raw));
    }

    // Q[zeta_n] -> Q[zeta_m] for n | m.
    CycNumber embed(long m) const {
        if (m % order_ != 0)
            throw OrderMismatch("embed from order " + std::to_string(order_) + " into " + std::to_string(m));
        if (m == order_) return *this;
        const long k = m / order_;
        std::vector<Rational> raw(static_cast<std::size_t>(m), Rational(0));
        for (std::size_t i = 0; i < c_.size(); ++i) raw[i * k] = c_[i];
        return from_power_basis(m, std::move(raw));
    }

    // Galois-norm based inversion: 1/a = (prod of the other conjugates) / Norm(a).
    CycNumber inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero");
        if (is_rational()) return CycNumber(order_, with_constant(Rational(1) / c_[0]));
        CycNumber prod = one(order_);
        for (long l : units_mod(order_)) {
            if (l == 1) continue;
            prod *= frobenius(Integer(l));
        }
        CycNumber nrm = *this * prod;
        if (!nrm.is_rational() || nrm.c_[0] == 0)
            throw DivisionByZero("norm computation failed");
        return prod.scaled(Rational(1) / nrm.c_[0]);
    }

    friend CycNumber operator/(const CycNumber& a, const CycNumber& b) { return a * b.inverse(); }

    // Galois-fixed-subfield membership: requires m | order (embed first otherwise).
    bool is_in_subfield(long m) const {
        if (order_ % m != 0)
            throw OrderMismatch("subfield order " + std::to_string(m) + " does not divide " + std::to_string(order_));
        if (m == order_) return true;
        for (long l : units_mod(order_)) {
            if (l == 1 || l % m != 1 % m) continue;
            if (frobenius(Integer(l)) != *this) return false;
        }
        return true;
    }

    // Rewrite over the power basis of Q[zeta_m] when the value lies there.
    std::optional<CycNumber> express_in_order(long m) const;

    // Smallest d | order with the value in Q[zeta_d].
    long min_order() const {
        for (long d : divisors(order_))
            if (is_in_subfield(d)) return d;
        return order_;
    }

    CycNumber reduced_to_min_order() const;

    std::complex<double> to_complex() const {
        std::complex<double> acc(0.0, 0.0);
        const double tau = 6.283185307179586476925286766559;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            double x = static_cast<double>(num(c_[i])) / static_cast<double>(den(c_[i]));
            acc += x * std::polar(1.0, tau * static_cast<double>(i) / static_cast<double>(order_));
        }
        return acc;
    }

    // Sparse (index, coefficient) pairs with ascending indices.
    std::vector<std::pair<long, Rational>> to_sparse() const {
        std::vector<std::pair<long, Rational>> out;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0) out.emplace_back(static_cast<long>(i), c_[i]);
        return out;
    }

    static CycNumber from_sparse(long n, const std::vector<std::pair<long, Rational>>& entries) {
        if (n < 1) throw SchemaError("cyclotomic order must be positive");
        std::vector<Rational> raw(static_cast<std::size_t>(n), Rational(0));
        for (const auto& [i, v] : entries) {
            if (i < 0) throw SchemaError("negative power-basis index");
            raw[static_cast<std::size_t>(i % n)] += v;
        }
        return from_power_basis(n, std::move(raw));
    }

    static long degree_of(long n) {
        return static_cast<long>(cyclotomic_polynomial(n).size()) - 1;
    }

    long degree() const { return static_cast<long>(c_.size()); }

private:
    CycNumber(long n, std::vector<Rational> reduced) : order_(n), c_(std::move(reduced)) {}

    std::vector<Rational> with_constant(const Rational& v) const {
        std::vector<Rational> r(c_.size(), Rational(0));
        r[0] = v;
        return r;
    }

    static std::vector<Rational> reduce_mod_phi(long n, std::vector<Rational> raw) {
        const auto& phi = cyclotomic_polynomial(n);
        const long deg = static_cast<long>(phi.size()) - 1;
        if (static_cast<long>(raw.size()) < deg) raw.resize(deg, Rational(0));
        for (long i = static_cast<long>(raw.size()) - 1; i >= deg; --i) {
            if (raw[i] == 0) continue;
            Rational c = raw[i];
            for (long j = 0; j <= deg; ++j) raw[i - deg + j] -= c * Rational(phi[j]);
        }
        raw.resize(deg);
        return raw;
    }

    static std::pair<CycNumber, CycNumber> aligned(const CycNumber& a, const CycNumber& b) {
        if (a.order_ == b.order_) return {a, b};
        long l = to_long(lcm(Integer(a.order_), Integer(b.order_)));
        return {a.embed(l), b.embed(l)};
    }

    long order_;
    std::vector<Rational> c_;
};

// Solve sum_j x_j * basis_j = rhs for several right-hand sides with one
// exact Gauss-Jordan elimination. Each rhs is a coefficient vector over
// Q[zeta_L]; the basis is zeta_m^j embedded in Q[zeta_L], j < phi(m).
// Returns nullopt if any rhs lies outside the subfield.
inline std::optional<std::vector<CycNumber>> express_all_in_order(
    const std::vector<CycNumber>& elems, long m) {
    if (elems.empty()) return std::vector<CycNumber>{};
    long L = m;
    for (const auto& e : elems) L = to_long(lcm(Integer(L), Integer(e.order())));
    const long degL = CycNumber::degree_of(L);
    const long degm = CycNumber::degree_of(m);

    if (L == m) {
        std::vector<CycNumber> out;
        out.reserve(elems.size());
        for (const auto& e : elems) out.push_back(e.embed(m));
        return out;
    }

    const long k = static_cast<long>(elems.size());
    // Augmented rows: [basis columns | rhs columns].
    std::vector<std::vector<Rational>> rows(degL, std::vector<Rational>(degm + k, Rational(0)));
    for (long j = 0; j < degm; ++j) {
        CycNumber b = CycNumber::root_of_unity(L, (L / m) * j);
        for (long i = 0; i < b.degree(); ++i) rows[i][j] = b.coeffs()[i];
    }
    for (long t = 0; t < k; ++t) {
        CycNumber e = elems[t].embed(L);
        for (long i = 0; i < e.degree(); ++i) rows[i][degm + t] = e.coeffs()[i];
    }

    long rank = 0;
    std::vector<long> pivot_col_of_row(degL, -1);
    for (long col = 0; col < degm && rank < degL; ++col) {
        long piv = -1;
        for (long r = rank; r < degL; ++r)
            if (rows[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        Rational inv = Rational(1) / rows[rank][col];
        for (long j = col; j < degm + k; ++j) rows[rank][j] *= inv;
        for (long r = 0; r < degL; ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            Rational f = rows[r][col];
            for (long j = col; j < degm + k; ++j) rows[r][j] -= f * rows[rank][j];
        }
        pivot_col_of_row[rank] = col;
        ++rank;
    }

    // Inconsistent rows mean the element is not in Q[zeta_m].
    for (long r = rank; r < degL; ++r)
        for (long t = 0; t < k; ++t)
            if (rows[r][degm + t] != 0) return std::nullopt;

    std::vector<CycNumber> out;
    out.reserve(k);
    for (long t = 0; t < k; ++t) {
        std::vector<Rational> coords(static_cast<std::size_t>(m), Rational(0));
        for (long r = 0; r < rank; ++r) coords[pivot_col_of_row[r]] = rows[r][degm + t];
        out.push_back(CycNumber::from_power_basis(m, std::move(coords)));
    }
    return out;
}

inline std::optional<CycNumber> CycNumber::express_in_order(long m) const {
    auto r = express_all_in_order({*this}, m);
    if (!r) return std::nullopt;
    return (*r)[0];
}

inline CycNumber CycNumber::reduced_to_min_order() const {
    long d = min_order();
    if (d == order_) return *this;
    auto r = express_in_order(d);
    if (!r) throw OrderMismatch("minimal-order reduction failed");
    return *r;
}

// Exact square root of a non-negative integer. Uses zeta_8 + zeta_8^-1 for
// sqrt(2) and quadratic Gauss sums for odd primes:
//   g_p = sum_t zeta_p^(t^2) equals sqrt(p) for p = 1 (mod 4)
//   and i*sqrt(p) for p = 3 (mod 4).
inline CycNumber sqrt_integer(long m) {
    if (m < 0) throw OrderMismatch("sqrt of negative integer");
    if (m == 0) return CycNumber(0L);
    CycNumber result(1L);
    for (auto& [pI, e] : factorize(Integer(m))) {
        long p = to_long(pI);
        Integer whole = 1;
        for (int i = 0; i < e / 2; ++i) whole *= p;
        result = result * CycNumber(Rational(whole));
        if (e % 2 == 0) continue;
        if (p == 2) {
            result = result * (CycNumber::root_of_unity(8, 1) + CycNumber::root_of_unity(8, 7));
        } else {
            std::vector<Rational> raw(static_cast<std::size_t>(p), Rational(0));
            for (long t = 0; t < p; ++t) raw[(t * t) % p] += 1;
            CycNumber g = CycNumber::from_power_basis(p, std::move(raw));
            if (p % 4 == 3) g = g * (-CycNumber::root_of_unity(4, 1));
            result = result * g;
        }
    }
    return result;
}

}  // namespace modrep
