#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "modrep/errors.hpp"
#include "modrep/matrix.hpp"
#include "modrep/modular_data.hpp"
#include "modrep/numbers.hpp"
#include "modrep/phase.hpp"

namespace modrep {

// Element of SL(2, Z) with arbitrary-precision entries.
struct SL2ZMatrix {
    Integer a{1}, b{0}, c{0}, d{1};

    SL2ZMatrix() = default;
    SL2ZMatrix(Integer a_, Integer b_, Integer c_, Integer d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
        if (a * d - b * c != 1) throw NotUnimodular("determinant is not 1");
    }

    static SL2ZMatrix identity() { return SL2ZMatrix(); }
    static SL2ZMatrix s_gen() { return SL2ZMatrix(0, -1, 1, 0); }
    static SL2ZMatrix t_gen(const Integer& k = 1) { return SL2ZMatrix(1, k, 0, 1); }

    SL2ZMatrix operator*(const SL2ZMatrix& o) const {
        return SL2ZMatrix(a * o.a + b * o.c, a * o.b + b * o.d,
                          c * o.a + d * o.c, c * o.b + d * o.d);
    }
    SL2ZMatrix inverse() const { return SL2ZMatrix(d, -b, -c, a); }
    bool operator==(const SL2ZMatrix& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
    bool operator!=(const SL2ZMatrix& o) const { return !(*this == o); }

    std::string str() const {
        return "((" + a.str() + "," + b.str() + "),(" + c.str() + "," + d.str() + "))";
    }
};

// Element of SL(2, Z/n); entries are stored reduced to [0, n).
struct SL2NMatrix {
    long n{1};
    long a{0}, b{0}, c{0}, d{0};

    SL2NMatrix() = default;
    SL2NMatrix(long n_, const Integer& a_, const Integer& b_, const Integer& c_,
               const Integer& d_)
        : n(n_) {
        if (n_ < 1) throw NotUnimodular("modulus must be positive");
        a = to_long(mod_floor(a_, n_));
        b = to_long(mod_floor(b_, n_));
        c = to_long(mod_floor(c_, n_));
        d = to_long(mod_floor(d_, n_));
        if (mod_floor(Integer(a) * d - Integer(b) * c, n) != 1 % n)
            throw NotUnimodular("determinant is not 1 mod " + std::to_string(n_));
    }

    static SL2NMatrix identity(long n) { return SL2NMatrix(n, 1, 0, 0, 1); }

    SL2NMatrix operator*(const SL2NMatrix& o) const {
        if (n != o.n) throw OrderMismatch("moduli differ");
        return SL2NMatrix(n, Integer(a) * o.a + Integer(b) * o.c,
                          Integer(a) * o.b + Integer(b) * o.d,
                          Integer(c) * o.a + Integer(d) * o.c,
                          Integer(c) * o.b + Integer(d) * o.d);
    }
    SL2NMatrix inverse() const { return SL2NMatrix(n, d, -b, -c, a); }

    bool is_identity() const {
        return a == 1 % n && b == 0 && c == 0 && d == 1 % n;
    }
    bool operator==(const SL2NMatrix& o) const {
        return n == o.n && a == o.a && b == o.b && c == o.c && d == o.d;
    }
    bool operator!=(const SL2NMatrix& o) const { return !(*this == o); }
    bool operator<(const SL2NMatrix& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        if (c != o.c) return c < o.c;
        return d < o.d;
    }

    // Packs the entries into one word; valid for n < 65536.
    std::uint64_t key() const {
        auto u = [](long x) { return static_cast<std::uint64_t>(x); };
        return ((u(a) * u(n) + u(b)) * u(n) + u(c)) * u(n) + u(d);
    }

    std::string str() const {
        return "((" + std::to_string(a) + "," + std::to_string(b) + "),(" +
               std::to_string(c) + "," + std::to_string(d) + "))";
    }
};

inline SL2NMatrix mu_mod(const SL2ZMatrix& m, long n) {
    return SL2NMatrix(n, m.a, m.b, m.c, m.d);
}

// The twist (a, b; c, d) -> (a, l b; lhat c, d) with lhat the inverse of l.
inline SL2NMatrix tau_twist(const SL2NMatrix& m, const Integer& l) {
    Integer lhat = inv_mod(l, m.n);
    return SL2NMatrix(m.n, m.a, l * m.b, lhat * m.c, m.d);
}

// Order of SL(2, Z/n): n^3 prod_{p | n} (1 - 1/p^2).
inline Integer sl2n_group_order(long n) {
    Integer order = Integer(n) * n * n;
    for (const auto& [p, e] : factorize(Integer(n))) {
        order = order / (p * p) * (p * p - 1);
    }
    return order;
}

// A word in the generators S and T, multiplied left to right.
struct GeneratorToken {
    bool is_s{true};
    Integer t_power{0};  // ignored when is_s

    static GeneratorToken s() { return {true, 0}; }
    static GeneratorToken t(Integer k) { return {false, std::move(k)}; }
    bool operator==(const GeneratorToken& o) const {
        return is_s == o.is_s && (is_s || t_power == o.t_power);
    }
};
using GeneratorWord = std::vector<GeneratorToken>;

inline SL2ZMatrix evaluate_integer(const GeneratorWord& w) {
    SL2ZMatrix x;
    for (const auto& tok : w)
        x = x * (tok.is_s ? SL2ZMatrix::s_gen() : SL2ZMatrix::t_gen(tok.t_power));
    return x;
}

namespace detail {

// Merges adjacent T powers and cancels S^4 runs; both are identities in
// SL(2, Z) and in every representation evaluated here.
inline GeneratorWord simplify_word(const GeneratorWord& w) {
    GeneratorWord out;
    auto trailing_s = [&out]() {
        std::size_t k = 0;
        while (k < out.size() && out[out.size() - 1 - k].is_s) ++k;
        return k;
    };
    for (const auto& tok : w) {
        if (!tok.is_s) {
            if (tok.t_power == 0) continue;
            if (!out.empty() && !out.back().is_s) {
                out.back().t_power += tok.t_power;
                if (out.back().t_power == 0) out.pop_back();
                continue;
            }
            out.push_back(tok);
        } else {
            out.push_back(tok);
            if (trailing_s() >= 4) out.resize(out.size() - 4);
        }
    }
    return out;
}

}  // namespace detail

// Writes m as a word in S and T by running Euclid on the bottom row.  The
// result is re-multiplied and checked against the input before returning.
inline GeneratorWord decompose(const SL2ZMatrix& m) {
    SL2ZMatrix cur = m;
    std::vector<Integer> quotients;
    while (cur.c != 0) {
        // d = q c + r with 0 <= r < |c|
        Integer q = cur.d / cur.c;
        Integer r = cur.d - q * cur.c;
        if (r < 0) {
            if (cur.c > 0) { q -= 1; } else { q += 1; }
            r = cur.d - q * cur.c;
        }
        cur = cur * SL2ZMatrix::t_gen(-q) * SL2ZMatrix::s_gen();
        quotients.push_back(q);
    }
    GeneratorWord w;
    if (cur.a == 1) {
        w.push_back(GeneratorToken::t(cur.b));
    } else {
        // cur = (-1, b; 0, -1) = S^2 T^{-b}
        w.push_back(GeneratorToken::s());
        w.push_back(GeneratorToken::s());
        w.push_back(GeneratorToken::t(-cur.b));
    }
    for (auto it = quotients.rbegin(); it != quotients.rend(); ++it) {
        // undo the right-multiplication by t^{-q} s: append s^{-1} t^{q}
        w.push_back(GeneratorToken::s());
        w.push_back(GeneratorToken::s());
        w.push_back(GeneratorToken::s());
        w.push_back(GeneratorToken::t(*it));
    }
    w = detail::simplify_word(w);
    if (evaluate_integer(w) != m)
        throw std::logic_error("generator word does not reproduce its matrix");
    return w;
}

// Deterministic section of the reduction SL(2, Z) -> SL(2, Z/n).
inline SL2ZMatrix lift_to_sl2z(const SL2NMatrix& m) {
    long n = m.n;
    Integer cs = (m.c == 0 && m.d != 1) ? Integer(n) : Integer(m.c);
    Integer ds = m.d;
    while (!coprime(cs, ds)) ds += n;
    Integer x, y;
    xgcd(cs, ds, x, y);  // x cs + y ds = 1
    Integer as = y, bs = -x;  // as * ds - bs * cs = 1
    Integer t = mod_floor(x * (m.a - as) + y * (m.b - bs), n);
    Integer la = as + t * cs, lb = bs + t * ds;
    if (mod_floor(la, n) != m.a || mod_floor(lb, n) != m.b)
        throw std::logic_error("lift failed to match the top row");
    SL2ZMatrix lifted(la, lb, cs, ds);
    if (mu_mod(lifted, n) != m)
        throw std::logic_error("lift failed to reduce back");
    return lifted;
}

// Evaluates generator words in the modular representation attached to the
// data: S maps to the S matrix and T^k to the phase diagonal of k times the
// T exponents.  Diagonal factors are cached by residue mod the conductor.
class RepEvaluator {
public:
    explicit RepEvaluator(const ModularData& md)
        : md_(&md), n_(md.conductor()) {}

    CycMatrix evaluate(const GeneratorWord& w) const {
        CycMatrix x = CycMatrix::identity(md_->rank());
        for (const auto& tok : w) {
            if (tok.is_s) {
                x = x * md_->s_matrix();
            } else {
                x = t_pow(tok.t_power).right_apply(x);
            }
        }
        return x;
    }

    CycMatrix evaluate(const SL2ZMatrix& m) const { return evaluate(decompose(m)); }

    const PhaseDiagonal& t_pow(const Integer& k) const {
        long r = to_long(mod_floor(k, n_));
        auto it = cache_.find(r);
        if (it == cache_.end())
            it = cache_.emplace(r, md_->t_power(Rational(r))).first;
        return it->second;
    }

private:
    const ModularData* md_;
    long n_;
    mutable std::map<long, PhaseDiagonal> cache_;
};

inline CycMatrix rep(const ModularData& md, const GeneratorWord& w) {
    return RepEvaluator(md).evaluate(w);
}

inline CycMatrix rep(const ModularData& md, const SL2ZMatrix& m) {
    return RepEvaluator(md).evaluate(m);
}

// The Galois twist of a represented matrix equals the representation of the
// tau-twisted residue matrix.
inline bool check_gal2(const ModularData& md, const SL2NMatrix& m, const Integer& l) {
    if (m.n != md.conductor()) throw OrderMismatch("residue modulus is not the conductor");
    CycMatrix lhs = rep(md, lift_to_sl2z(m)).frobenius(l);
    CycMatrix rhs = rep(md, lift_to_sl2z(tau_twist(m, l)));
    return lhs == rhs;
}

}  // namespace modrep
