#pragma once

// Diagonal matrices of unit phases diag(exp(2*pi*i*e_p)) represented by their
// exact exponents e_p in [0, 1). T-matrices and the Z-diagonals of the Lambda
// calculus live here; all identities between them become exponent arithmetic
// mod 1.

#include <vector>

#include "modrep/matrix.hpp"
#include "modrep/numbers.hpp"

namespace modrep {

class PhaseDiagonal {
public:
    PhaseDiagonal() = default;
    explicit PhaseDiagonal(std::vector<Rational> exps) : e_(std::move(exps)) {
        for (auto& x : e_) x = mod1(x);
    }

    static PhaseDiagonal identity(long n) {
        return PhaseDiagonal(std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
    }

    long size() const { return static_cast<long>(e_.size()); }
    const Rational& exponent(long p) const { return e_[static_cast<std::size_t>(p)]; }
    const std::vector<Rational>& exponents() const { return e_; }

    friend PhaseDiagonal operator*(const PhaseDiagonal& a, const PhaseDiagonal& b) {
        PhaseDiagonal r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = mod1(r.e_[i] + b.e_[i]);
        return r;
    }

    PhaseDiagonal pow(const Integer& k) const {
        PhaseDiagonal r = *this;
        for (auto& x : r.e_) x = mod1(Rational(k) * x);
        return r;
    }

    PhaseDiagonal pow(const Rational& k) const {
        PhaseDiagonal r = *this;
        for (auto& x : r.e_) x = mod1(k * x);
        return r;
    }

    PhaseDiagonal inverse() const { return pow(Integer(-1)); }

    // Conjugation by a permutation: entry q of the result is entry pi(q).
    PhaseDiagonal permuted(const std::vector<long>& pi) const {
        PhaseDiagonal r = *this;
        for (std::size_t q = 0; q < e_.size(); ++q) r.e_[q] = e_[static_cast<std::size_t>(pi[q])];
        return r;
    }

    friend bool operator==(const PhaseDiagonal& a, const PhaseDiagonal& b) { return a.e_ == b.e_; }
    friend bool operator!=(const PhaseDiagonal& a, const PhaseDiagonal& b) { return !(a == b); }

    bool is_identity() const {
        for (const auto& x : e_)
            if (x != 0) return false;
        return true;
    }

    // Multiplicative order = lcm of exponent denominators.
    long order() const {
        Integer l = 1;
        for (const auto& x : e_) l = lcm(l, den(x));
        return to_long(l);
    }

    CycNumber phase(long p) const {
        const Rational& e = e_[static_cast<std::size_t>(p)];
        return CycNumber::root_of_unity(to_long(den(e)), to_long(num(e)));
    }

    CycMatrix to_matrix() const {
        CycMatrix m(size(), size());
        for (long p = 0; p < size(); ++p) m.at(p, p) = phase(p);
        return m;
    }

    // diag * M (scales row p by phase p).
    CycMatrix left_apply(const CycMatrix& m) const {
        CycMatrix r = m;
        for (long p = 0; p < m.rows(); ++p) {
            CycNumber ph = phase(p);
            for (long q = 0; q < m.cols(); ++q) r.at(p, q) = ph * m.at(p, q);
        }
        return r;
    }

    // M * diag (scales column q by phase q).
    CycMatrix right_apply(const CycMatrix& m) const {
        CycMatrix r = m;
        for (long q = 0; q < m.cols(); ++q) {
            CycNumber ph = phase(q);
            for (long p = 0; p < m.rows(); ++p) r.at(p, q) = m.at(p, q) * ph;
        }
        return r;
    }

private:
    std::vector<Rational> e_;
};

}  // namespace modrep
