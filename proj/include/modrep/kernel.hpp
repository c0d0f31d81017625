#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "modrep/errors.hpp"
#include "modrep/galois.hpp"
#include "modrep/modular_data.hpp"
#include "modrep/numbers.hpp"
#include "modrep/sl2.hpp"

namespace modrep {

// The four arithmetic facts that hold for every kernel element once its
// lower right entry has been conjugated into a unit residue.
struct KernelConsequences {
    bool galois_involution{};   // G_d^2 = 1
    bool fourth_power_unit{};   // d^4 = 1 (mod N)
    bool offdiag_match{};       // b = c = 1 - d^2 (mod N0)
    bool vacuum_sign{};         // eps_d(0) = omega_0^{c-b}
    bool doubled_symmetry{};    // 2c = 2b (mod N)
    bool doubled_vanishes{};    // 2c = 0 (mod N0)

    bool all() const {
        return galois_involution && fourth_power_unit && offdiag_match &&
               vacuum_sign && doubled_symmetry && doubled_vanishes;
    }
};

struct KernelReport {
    long conductor{1};
    long n_zero{1};
    long ratio{1};
    Integer group_order{1};  // |SL2(Z/N)|
    Integer budget{0};
    bool enumerated{false};  // false when the group order exceeds the budget
    Integer kernel_order{0};
    std::vector<SL2NMatrix> elements;    // sorted by (a, b, c, d)
    std::vector<SL2NMatrix> generators;  // greedy, deterministic
    bool closure_verified{};
    bool gamma1_matches_gamma{};  // members of Gamma_1(N) shape are Gamma(N)
    bool consequences_hold{};
    Integer center_order{0};
    std::vector<long> center_invariants;
    Integer derived_order{0};
    bool derived_abelian{};
    std::vector<long> derived_invariants;
    double seconds{0.0};
};

// Decides membership in the kernel of the modular representation through
// the criterion sigma_d(S) T^b = T^c S, evaluated as integer comparisons
// against a precomputed table of the values sign * zeta^j * S_{p,q}.
class KernelAnalyzer {
public:
    explicit KernelAnalyzer(const ModularData& md)
        : md_(&md), n_(md.conductor()) {
        build_tables();
    }

    long conductor() const { return n_; }

    bool is_in_kernel(const SL2NMatrix& m) const {
        if (m.n != n_) throw OrderMismatch("residue modulus is not the conductor");
        long a = m.a, b = m.b, c = m.c, d = m.d;
        unit_corner(a, b, c, d);
        return member_unit(b, c, d);
    }
    bool is_in_kernel(const SL2ZMatrix& m) const {
        return is_in_kernel(mu_mod(m, n_));
    }

    // Reference route through the exact representation.
    bool is_in_kernel_via_rep(const SL2NMatrix& m) const {
        return rep(*md_, lift_to_sl2z(m)).is_identity();
    }
    bool is_in_kernel_via_rep(const SL2ZMatrix& m) const {
        return rep(*md_, m).is_identity();
    }

    KernelConsequences kernel_consequences(const SL2NMatrix& m) const {
        if (m.n != n_) throw OrderMismatch("residue modulus is not the conductor");
        long a = m.a, b = m.b, c = m.c, d = m.d;
        unit_corner(a, b, c, d);
        const UnitData& u = units_[static_cast<std::size_t>(unit_index_[d])];
        long r = md_->rank();
        KernelConsequences out;
        out.galois_involution = true;
        for (long q = 0; q < r; ++q) {
            long pq = u.perm[static_cast<std::size_t>(q)];
            if (u.perm[static_cast<std::size_t>(pq)] != q ||
                u.sign[static_cast<std::size_t>(pq)] * u.sign[static_cast<std::size_t>(q)] != 1) {
                out.galois_involution = false;
                break;
            }
        }
        Integer dd(d);
        out.fourth_power_unit = mod_floor(dd * dd * dd * dd, n_) == 1 % n_;
        long n0 = md_->n_zero();
        Integer want = 1 - dd * dd;
        out.offdiag_match = mod_floor(Integer(b) - want, n0) == 0 &&
                            mod_floor(Integer(c) - want, n0) == 0;
        Rational x = mod1(md_->t_exponent(0) * Rational(c - b));
        out.vacuum_sign = (x == Rational(0) && u.sign[0] == 1) ||
                          (x == Rational(1, 2) && u.sign[0] == -1);
        out.doubled_symmetry = mod_floor(2 * (Integer(c) - b), n_) == 0;
        out.doubled_vanishes = mod_floor(2 * Integer(c), n0) == 0;
        return out;
    }

    KernelReport analyze(const Integer& budget = Integer(10000000)) const {
        auto start = std::chrono::steady_clock::now();
        KernelReport out;
        out.conductor = n_;
        out.n_zero = md_->n_zero();
        out.ratio = md_->ratio_e();
        out.group_order = sl2n_group_order(n_);
        out.budget = budget;
        if (out.group_order > budget) {
            out.seconds = elapsed_since(start);
            return out;
        }
        out.enumerated = true;
        out.elements = enumerate_kernel();
        out.kernel_order = static_cast<long>(out.elements.size());
        out.generators = greedy_generators(out.elements);
        out.closure_verified = verify_closure(out.elements, out.generators);
        out.gamma1_matches_gamma = check_gamma1(out.elements);
        out.consequences_hold = true;
        for (const auto& x : out.elements) {
            if (!kernel_consequences(x).all()) {
                out.consequences_hold = false;
                break;
            }
        }
        std::vector<SL2NMatrix> center = center_of(out.elements, out.generators);
        out.center_order = static_cast<long>(center.size());
        out.center_invariants = abelian_invariants(center);
        std::vector<SL2NMatrix> comms;
        std::vector<SL2NMatrix> derived =
            derived_subgroup(out.elements, out.generators, comms);
        out.derived_order = static_cast<long>(derived.size());
        out.derived_abelian = pairwise_commuting(comms);
        if (out.derived_abelian)
            out.derived_invariants = abelian_invariants(derived);
        out.seconds = elapsed_since(start);
        return out;
    }

private:
    struct UnitData {
        long residue;
        std::vector<long> perm;
        std::vector<int> sign;
    };

    const ModularData* md_;
    long n_;
    long level_;                    // cyclotomic level of the class table
    std::vector<long> t_num_;       // N * t_p, reduced mod N
    std::vector<int> unit_index_;   // residue -> index into units_, or -1
    std::vector<UnitData> units_;
    std::vector<std::int32_t> class_id_;  // ((p*r + q)*N + j)*2 + (sign < 0)

    static double elapsed_since(std::chrono::steady_clock::time_point t0) {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }

    std::size_t table_index(long p, long q, long j, bool neg) const {
        long r = md_->rank();
        return static_cast<std::size_t>((((p * r + q) * n_ + j) << 1) |
                                        (neg ? 1 : 0));
    }

    void build_tables() {
        long r = md_->rank();
        t_num_.resize(static_cast<std::size_t>(r));
        for (long p = 0; p < r; ++p) {
            Rational x = md_->t_exponent(p) * n_;
            if (den(x) != 1)
                throw AxiomViolation("conductor clears all T denominators",
                                     "primary " + std::to_string(p));
            t_num_[static_cast<std::size_t>(p)] = to_long(mod_floor(num(x), n_));
        }
        unit_index_.assign(static_cast<std::size_t>(n_), -1);
        for (long l : units_mod(n_)) {
            MonomialMatrix g = extract_g(*md_, l);
            unit_index_[static_cast<std::size_t>(l)] =
                static_cast<int>(units_.size());
            units_.push_back({l, g.perm(), g.signs()});
        }
        // Identify the values sign * zeta_N^j * S_{p,q} by an integer id so
        // the membership criterion reduces to table lookups.
        level_ = n_;
        const CycMatrix& s = md_->s_matrix();
        for (long p = 0; p < r; ++p)
            for (long q = 0; q < r; ++q)
                level_ = to_long(lcm(Integer(level_), Integer(s.at(p, q).order())));
        long shift = level_ / n_;
        class_id_.assign(static_cast<std::size_t>(r * r * n_ * 2), -1);
        std::map<std::string, std::int32_t> ids;
        for (long p = 0; p < r; ++p) {
            for (long q = 0; q < r; ++q) {
                CycNumber base = s.at(p, q).embed(level_);
                for (long j = 0; j < n_; ++j) {
                    CycNumber v = base.times_root(j * shift);
                    class_id_[table_index(p, q, j, false)] = value_id(ids, v);
                    class_id_[table_index(p, q, j, true)] =
                        value_id(ids, v.scaled(Rational(-1)));
                }
            }
        }
    }

    static std::int32_t value_id(std::map<std::string, std::int32_t>& ids,
                                 const CycNumber& v) {
        std::string key;
        for (const auto& [i, x] : v.to_sparse()) {
            key += std::to_string(i);
            key += ':';
            key += rational_str(x);
            key += ';';
        }
        auto [it, fresh] = ids.emplace(std::move(key),
                                       static_cast<std::int32_t>(ids.size()));
        (void)fresh;
        return it->second;
    }

    // Conjugates by a power of t until the lower right entry is a unit; the
    // kernel is normal, so membership is unaffected.  Assumes det = 1 mod N,
    // which guarantees such a power exists.
    void unit_corner(long& a, long& b, long& c, long& d) const {
        if (unit_index_[static_cast<std::size_t>(d)] >= 0) return;
        long dd = d;
        for (long k = 1; k <= n_; ++k) {
            dd += c;
            if (dd >= n_) dd -= n_;
            if (unit_index_[static_cast<std::size_t>(dd)] >= 0) {
                // t^{-k} (a, b; c, d) t^{k} = (a - kc, b + k(a-d) - k^2 c; c, d + kc)
                long a2 = mod_floor(a - k * c, n_);
                long b2 = mod_floor(b + k * (a - d) - k * k * c, n_);
                a = a2;
                b = b2;
                d = dd;
                return;
            }
        }
        throw NotUnimodular("no unit corner in the t-conjugation orbit");
    }

    // sigma_d(S) T^b = T^c S via the class table; entries (p, q) compared as
    // eps_d(q) zeta^{b t_q} S_{p, perm_d(q)} against zeta^{c t_p} S_{p, q}.
    bool member_unit(long b, long c, long d) const {
        long r = md_->rank();
        const UnitData& u = units_[static_cast<std::size_t>(unit_index_[d])];
        for (long q = 0; q < r; ++q) {
            long bq = (b * t_num_[static_cast<std::size_t>(q)]) % n_;
            long pq = u.perm[static_cast<std::size_t>(q)];
            bool neg = u.sign[static_cast<std::size_t>(q)] < 0;
            for (long p = 0; p < r; ++p) {
                long cp = (c * t_num_[static_cast<std::size_t>(p)]) % n_;
                if (class_id_[table_index(p, pq, bq, neg)] !=
                    class_id_[table_index(p, q, cp, false)])
                    return false;
            }
        }
        return true;
    }

    std::vector<SL2NMatrix> enumerate_kernel() const {
        std::vector<SL2NMatrix> found;
        for (long c = 0; c < n_; ++c) {
            for (long d = 0; d < n_; ++d) {
                if (std::gcd(std::gcd(c, d), n_) != 1) continue;
                Integer x, y;
                Integer g = xgcd(Integer(d), Integer(c), x, y);
                Integer ghat = inv_mod(g == 0 ? Integer(1) : g, n_);
                long a = to_long(mod_floor(x * ghat, n_));
                long b = to_long(mod_floor(-y * ghat, n_));
                // all solutions of a d - b c = 1 are (a + tc, b + td)
                for (long t = 0; t < n_; ++t) {
                    long aa = a, bb = b, cc = c, dd = d;
                    unit_corner(aa, bb, cc, dd);
                    if (member_unit(bb, cc, dd))
                        found.emplace_back(n_, a, b, c, d);
                    a += c;
                    if (a >= n_) a -= n_;
                    b += d;
                    if (b >= n_) b -= n_;
                }
            }
        }
        std::sort(found.begin(), found.end());
        return found;
    }

    std::vector<SL2NMatrix> closure_of(const std::vector<SL2NMatrix>& gens) const {
        std::vector<SL2NMatrix> out{SL2NMatrix::identity(n_)};
        std::unordered_set<std::uint64_t> seen{out[0].key()};
        for (std::size_t i = 0; i < out.size(); ++i) {
            for (const auto& g : gens) {
                SL2NMatrix z = out[i] * g;
                if (seen.insert(z.key()).second) out.push_back(z);
            }
        }
        return out;
    }

    // Picks generators by repeatedly adding the element whose closure with
    // the current set is largest; first in (a, b, c, d) order wins ties.
    std::vector<SL2NMatrix> greedy_generators(
        const std::vector<SL2NMatrix>& elements) const {
        std::vector<SL2NMatrix> gens;
        std::unordered_set<std::uint64_t> covered{
            SL2NMatrix::identity(n_).key()};
        while (covered.size() < elements.size()) {
            const SL2NMatrix* best = nullptr;
            std::vector<SL2NMatrix> best_closure;
            for (const auto& cand : elements) {
                if (covered.count(cand.key())) continue;
                gens.push_back(cand);
                std::vector<SL2NMatrix> cl = closure_of(gens);
                gens.pop_back();
                if (cl.size() > best_closure.size()) {
                    best = &cand;
                    best_closure = std::move(cl);
                }
            }
            if (!best) throw std::logic_error("generator search stalled");
            gens.push_back(*best);
            covered.clear();
            for (const auto& z : best_closure) covered.insert(z.key());
        }
        return gens;
    }

    bool verify_closure(const std::vector<SL2NMatrix>& elems,
                        const std::vector<SL2NMatrix>& gens) const {
        std::unordered_set<std::uint64_t> keys;
        for (const auto& e : elems) keys.insert(e.key());
        std::vector<SL2NMatrix> cl = closure_of(gens);
        if (cl.size() != elems.size()) return false;
        for (const auto& z : cl)
            if (!keys.count(z.key())) return false;
        for (const auto& e : elems)
            if (!keys.count(e.inverse().key())) return false;
        if (elems.size() <= 2000) {
            for (const auto& x : elems)
                for (const auto& y : elems)
                    if (!keys.count((x * y).key())) return false;
        } else {
            for (const auto& x : elems)
                for (const auto& g : gens)
                    if (!keys.count((x * g).key())) return false;
        }
        return true;
    }

    bool check_gamma1(const std::vector<SL2NMatrix>& elems) const {
        long one = 1 % n_;
        for (const auto& x : elems) {
            if (x.a == one && x.c == 0 && x.d == one && x.b != 0) return false;
        }
        return true;
    }

    std::vector<SL2NMatrix> center_of(const std::vector<SL2NMatrix>& elems,
                                      const std::vector<SL2NMatrix>& gens) const {
        std::vector<SL2NMatrix> out;
        for (const auto& x : elems) {
            bool central = true;
            for (const auto& g : gens) {
                if (!(x * g == g * x)) {
                    central = false;
                    break;
                }
            }
            if (central) out.push_back(x);
        }
        return out;
    }

    // The subgroup generated by all commutators.  When the element list is
    // large, falls back to commutators against the generators followed by
    // conjugation closure, which yields the same normal subgroup.
    std::vector<SL2NMatrix> derived_subgroup(
        const std::vector<SL2NMatrix>& elems,
        const std::vector<SL2NMatrix>& gens,
        std::vector<SL2NMatrix>& commutators) const {
        std::unordered_set<std::uint64_t> seen;
        auto add = [&](const SL2NMatrix& x, const SL2NMatrix& y) {
            SL2NMatrix z = x * y * x.inverse() * y.inverse();
            if (seen.insert(z.key()).second) commutators.push_back(z);
        };
        if (elems.size() <= 2000) {
            for (const auto& x : elems)
                for (const auto& y : elems) add(x, y);
            return closure_of(commutators);
        }
        for (const auto& g : gens)
            for (const auto& y : elems) add(g, y);
        std::vector<SL2NMatrix> closure = closure_of(commutators);
        bool grew = true;
        while (grew) {
            grew = false;
            std::unordered_set<std::uint64_t> in_closure;
            for (const auto& z : closure) in_closure.insert(z.key());
            for (const auto& g : gens) {
                for (const auto& s : commutators) {
                    SL2NMatrix z = g * s * g.inverse();
                    if (!in_closure.count(z.key())) {
                        if (seen.insert(z.key()).second) commutators.push_back(z);
                        grew = true;
                    }
                }
            }
            if (grew) closure = closure_of(commutators);
        }
        return closure;
    }

    static bool pairwise_commuting(const std::vector<SL2NMatrix>& xs) {
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = i + 1; j < xs.size(); ++j)
                if (!(xs[i] * xs[j] == xs[j] * xs[i])) return false;
        return true;
    }

    static SL2NMatrix power_of(const SL2NMatrix& x, Integer e) {
        SL2NMatrix acc = SL2NMatrix::identity(x.n);
        SL2NMatrix base = x;
        while (e > 0) {
            if ((e & 1) != 0) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    // Elementary divisors of a finite abelian group given as an element
    // list: for each prime p, counting the solutions of x^{p^j} = 1 gives
    // the number of cyclic factors of each order.
    static std::vector<long> abelian_invariants(
        const std::vector<SL2NMatrix>& elems) {
        std::vector<long> out;
        Integer order(static_cast<long>(elems.size()));
        for (const auto& [p, mult] : factorize(order)) {
            long pl = to_long(p);
            std::vector<long> logc{0};
            Integer pj = 1;
            std::vector<long> ranks;  // m_j = #factors of order >= p^j
            for (int j = 1;; ++j) {
                pj *= pl;
                long count = 0;
                for (const auto& x : elems)
                    if (power_of(x, pj).is_identity()) ++count;
                long lg = 0;
                long cc = count;
                while (cc > 1) {
                    if (cc % pl != 0)
                        throw std::logic_error("torsion count is not a prime power");
                    cc /= pl;
                    ++lg;
                }
                long m = lg - logc.back();
                logc.push_back(lg);
                if (m == 0) break;
                ranks.push_back(m);
            }
            Integer piece = 1;
            for (std::size_t j = 0; j < ranks.size(); ++j) {
                piece *= pl;
                long next = (j + 1 < ranks.size()) ? ranks[j + 1] : 0;
                for (long k = 0; k < ranks[j] - next; ++k)
                    out.push_back(to_long(piece));
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

// Largest N whose unit group has exponent dividing twice the exponent of
// the symmetric group of the given degree; any realizable conductor at this
// rank divides it.  Assembled prime by prime from the Carmichael values.
inline Integer conductor_bound_naive(long rank) {
    if (rank < 1) throw DivisionByZero("rank must be positive");
    Integer target = 2 * lcm_up_to(rank);
    long t = to_long(target);
    std::vector<bool> composite(static_cast<std::size_t>(t) + 2, false);
    Integer out = 1;
    for (long p = 2; p <= t + 1; ++p) {
        if (composite[static_cast<std::size_t>(p)]) continue;
        for (long m = 2 * p; m <= t + 1; m += p)
            composite[static_cast<std::size_t>(m)] = true;
        if (target % (p - 1) != 0) continue;
        long v = 0;
        Integer rest = target;
        while (rest % p == 0) {
            rest /= p;
            ++v;
        }
        long k = (p == 2) ? v + 2 : v + 1;
        Integer pk = 1;
        for (long i = 0; i < k; ++i) pk *= p;
        out *= pk;
    }
    return out;
}

}  // namespace modrep
