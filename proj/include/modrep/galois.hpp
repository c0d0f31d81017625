#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modrep/errors.hpp"
#include "modrep/matrix.hpp"
#include "modrep/modular_data.hpp"
#include "modrep/numbers.hpp"
#include "modrep/phase.hpp"

namespace modrep {

// Signed permutation matrix: entry (p, q) equals sign[q] when p == perm[q]
// and zero otherwise.  Multiplying a matrix by this on the right permutes
// and rescales its columns.
class MonomialMatrix {
 public:
  MonomialMatrix() = default;

  MonomialMatrix(std::vector<long> perm, std::vector<int> sign)
      : perm_(std::move(perm)), sign_(std::move(sign)) {
    if (perm_.size() != sign_.size()) {
      throw NotMonomial("permutation and sign vectors differ in length");
    }
    std::vector<bool> seen(perm_.size(), false);
    for (std::size_t q = 0; q < perm_.size(); ++q) {
      long p = perm_[q];
      if (p < 0 || p >= static_cast<long>(perm_.size()) || seen[p]) {
        throw NotMonomial("column map is not a permutation");
      }
      seen[p] = true;
      if (sign_[q] != 1 && sign_[q] != -1) {
        throw NotMonomial("column scale is not a sign");
      }
    }
  }

  static MonomialMatrix identity(long n) {
    std::vector<long> perm(n);
    for (long q = 0; q < n; ++q) perm[q] = q;
    return MonomialMatrix(std::move(perm), std::vector<int>(n, 1));
  }

  long size() const { return static_cast<long>(perm_.size()); }
  const std::vector<long>& perm() const { return perm_; }
  const std::vector<int>& signs() const { return sign_; }
  long perm_of(long q) const { return perm_.at(q); }
  int sign_of(long q) const { return sign_.at(q); }

  bool operator==(const MonomialMatrix& o) const {
    return perm_ == o.perm_ && sign_ == o.sign_;
  }
  bool operator!=(const MonomialMatrix& o) const { return !(*this == o); }

  bool is_identity() const {
    for (std::size_t q = 0; q < perm_.size(); ++q) {
      if (perm_[q] != static_cast<long>(q) || sign_[q] != 1) return false;
    }
    return true;
  }

  bool perm_is_identity() const {
    for (std::size_t q = 0; q < perm_.size(); ++q) {
      if (perm_[q] != static_cast<long>(q)) return false;
    }
    return true;
  }

  // Product of the underlying matrices: (G*H)_{p,r} = sum_q G_{p,q} H_{q,r}.
  MonomialMatrix operator*(const MonomialMatrix& o) const {
    if (size() != o.size()) throw OrderMismatch("monomial size mismatch");
    long n = size();
    std::vector<long> perm(n);
    std::vector<int> sign(n);
    for (long r = 0; r < n; ++r) {
      perm[r] = perm_[o.perm_[r]];
      sign[r] = sign_[o.perm_[r]] * o.sign_[r];
    }
    return MonomialMatrix(std::move(perm), std::move(sign));
  }

  MonomialMatrix inverse() const {
    long n = size();
    std::vector<long> perm(n);
    std::vector<int> sign(n);
    for (long q = 0; q < n; ++q) perm[perm_[q]] = q;
    for (long q = 0; q < n; ++q) sign[q] = sign_[perm[q]];
    return MonomialMatrix(std::move(perm), std::move(sign));
  }

  // G^-1 diag(e) G permutes the diagonal; the signs cancel pairwise.
  PhaseDiagonal conjugate_diagonal(const PhaseDiagonal& d) const {
    if (d.size() != size()) throw OrderMismatch("diagonal size mismatch");
    return d.permuted(perm_);
  }

  CycMatrix to_matrix() const {
    long n = size();
    CycMatrix m(n, n);
    for (long q = 0; q < n; ++q) {
      m.at(perm_[q], q) = CycNumber(static_cast<long>(sign_[q]));
    }
    return m;
  }

 private:
  std::vector<long> perm_;
  std::vector<int> sign_;
};

// Entry-wise Frobenius twist zeta -> zeta^l.
inline CycMatrix sigma_on_matrix(const CycMatrix& m, const Integer& l) {
  return m.frobenius(l);
}

namespace detail {

// Compares column q of a against sign * column p of b; returns +1, -1 or 0.
inline int column_sign_match(const CycMatrix& a, long q, const CycMatrix& b,
                             long p) {
  bool plus = true, minus = true;
  for (long i = 0; i < a.rows() && (plus || minus); ++i) {
    const CycNumber& x = a.at(i, q);
    const CycNumber& y = b.at(i, p);
    if (plus && !(x == y)) plus = false;
    if (minus && !(x == y.scaled(-1))) minus = false;
  }
  if (plus) return 1;
  if (minus) return -1;
  return 0;
}

}  // namespace detail

// Recovers the monomial matrix G_l from sigma_l(S) = S * G_l by matching
// each column of sigma_l(S) against the columns of S up to sign.
inline MonomialMatrix extract_g(const ModularData& md, const Integer& l) {
  const CycMatrix& s = md.s_matrix();
  CycMatrix sl = sigma_on_matrix(s, l);
  long n = md.rank();
  std::vector<long> perm(n, -1);
  std::vector<int> sign(n, 0);
  std::vector<bool> used(n, false);
  for (long q = 0; q < n; ++q) {
    for (long p = 0; p < n; ++p) {
      int m = detail::column_sign_match(sl, q, s, p);
      if (m == 0) continue;
      if (perm[q] != -1) {
        throw NotMonomial("column " + std::to_string(q) +
                          " of the twisted matrix matches more than one "
                          "column of S");
      }
      perm[q] = p;
      sign[q] = m;
    }
    if (perm[q] == -1) {
      throw NotMonomial("column " + std::to_string(q) +
                        " of the twisted matrix matches no column of S");
    }
    if (used[perm[q]]) {
      throw NotMonomial("two twisted columns match column " +
                        std::to_string(perm[q]) + " of S");
    }
    used[perm[q]] = true;
  }
  MonomialMatrix g(std::move(perm), std::move(sign));
  // A monomial matrix commuting with S entry-wise must be a scalar: if the
  // permutation is trivial the signs have to agree across all columns.
  if (g.perm_is_identity()) {
    for (long q = 1; q < n; ++q) {
      if (g.sign_of(q) != g.sign_of(0)) {
        throw AxiomViolation("scalar Galois matrix has equal signs",
                             "column " + std::to_string(q));
      }
    }
  }
  return g;
}

// G_l = S^-1 T^l S T^lhat S T^l with lhat the inverse of l mod the conductor.
// Valid whenever the data satisfies the modular relations.
inline CycMatrix g_closed_form(const ModularData& md, const Integer& l) {
  long nn = md.conductor();
  Integer lhat = inv_mod(l, nn);
  const CycMatrix& s = md.s_matrix();
  PhaseDiagonal tl = md.t_power(Rational(mod_floor(l, nn)));
  PhaseDiagonal tlhat = md.t_power(Rational(lhat));
  CycMatrix x = tl.right_apply(s);  // S T^l
  x = tlhat.left_apply(x);          // T^lhat S T^l
  x = s * x;                        // S T^lhat S T^l
  x = tl.left_apply(x);             // T^l S T^lhat S T^l
  return s.conj_transpose() * x;    // S^-1 T^l S T^lhat S T^l
}

// T-exponents are rigidly permuted: t_{perm(q)} = l^2 t_q (mod 1).
inline bool check_gtcom(const ModularData& md, const Integer& l,
                        std::string* witness = nullptr) {
  MonomialMatrix g = extract_g(md, l);
  long nn = md.conductor();
  Integer l2 = mod_floor(l * l, nn);
  for (long q = 0; q < md.rank(); ++q) {
    Rational lhs = md.t_exponent(g.perm_of(q));
    Rational rhs = mod1(Rational(l2) * md.t_exponent(q));
    if (lhs != rhs) {
      if (witness) {
        *witness = "primary " + std::to_string(q) + ": t_perm(q) = " +
                   rational_str(lhs) + " but l^2 t_q = " + rational_str(rhs);
      }
      return false;
    }
  }
  return true;
}

// The conductor is the exact cyclotomic level of the data: every S entry
// lies in Q[zeta_N], and no proper subfield contains all of them -- i.e.
// some Frobenius twist fixing nothing smaller moves S.  The second half is
// vacuous when (Z/N)* is trivial.
inline bool conductor_fixed_field_check(const ModularData& md,
                                        std::string* witness = nullptr) {
  long nn = md.conductor();
  const CycMatrix& s = md.s_matrix();
  for (long i = 0; i < s.rows(); ++i) {
    for (long j = 0; j < s.cols(); ++j) {
      long ord = s.at(i, j).order();
      long big = to_long(lcm(Integer(ord), Integer(nn)));
      if (!s.at(i, j).embed(big).is_in_subfield(nn)) {
        if (witness) {
          *witness = "entry (" + std::to_string(i) + "," + std::to_string(j) +
                     ") lies outside Q[zeta_" + std::to_string(nn) + "]";
        }
        return false;
      }
    }
  }
  bool have_candidate = false;
  for (long l : units_mod(nn)) {
    if (l % nn == 1 % nn) continue;
    have_candidate = true;
    if (!(sigma_on_matrix(s, l) == s)) return true;
  }
  if (!have_candidate) return true;
  if (witness) {
    *witness = "every Frobenius twist mod " + std::to_string(nn) + " fixes S";
  }
  return false;
}

}  // namespace modrep
