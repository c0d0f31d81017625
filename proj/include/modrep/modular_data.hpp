#pragma once

// Modular representation data of a rational theory: the exact S matrix over a
// cyclotomic field, the T phases, and the central charge. Construction
// validates the defining axioms and rewrites S over Q[zeta_N] where N is the
// order of T (the conductor); instances are immutable afterwards.

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "modrep/cyclotomic.hpp"
#include "modrep/errors.hpp"
#include "modrep/matrix.hpp"
#include "modrep/phase.hpp"

namespace modrep {

struct PrimaryLabel {
    long index = 0;
    std::string name;
    friend bool operator==(const PrimaryLabel& a, const PrimaryLabel& b) {
        return a.index == b.index && a.name == b.name;
    }
};

// Totally symmetric fusion multiplicities N_pqs.
class FusionTable {
public:
    FusionTable() : r_(0) {}
    explicit FusionTable(long r) : r_(r), n_(static_cast<std::size_t>(r * r * r)) {}

    long rank() const { return r_; }
    Integer& at(long p, long q, long s) { return n_[idx(p, q, s)]; }
    const Integer& at(long p, long q, long s) const { return n_[idx(p, q, s)]; }

private:
    std::size_t idx(long p, long q, long s) const {
        return static_cast<std::size_t>((p * r_ + q) * r_ + s);
    }
    long r_;
    std::vector<Integer> n_;
};

struct AxiomCheck {
    std::string name;
    bool passed = false;
    std::string witness;  // empty when passed
};

class ModularData {
public:
    // Validating factory: checks the axioms, computes the conductor N and
    // rewrites S over Q[zeta_N]. Throws AxiomViolation / NonIntegerFusion /
    // SchemaError on bad input.
    static ModularData create(std::vector<PrimaryLabel> labels, CycMatrix s,
                              std::vector<Rational> t, Rational c, long field_order) {
        ModularData md(std::move(labels), std::move(s), std::move(t), std::move(c), field_order);
        md.check_structure();
        md.reexpress_at_conductor();
        for (const auto& chk : md.check_axioms())
            if (!chk.passed) throw AxiomViolation(chk.name, chk.witness);
        std::string wit;
        md.conj_perm_ = *md.try_conjugation(wit);  // guaranteed by the axiom pass
        md.fusion_ = md.compute_fusion();
        return md;
    }

    // No validation, no re-expression: for diagnostic pipelines that want to
    // run the axiom suites on possibly broken data.
    static ModularData create_unchecked(std::vector<PrimaryLabel> labels, CycMatrix s,
                                        std::vector<Rational> t, Rational c, long field_order) {
        ModularData md(std::move(labels), std::move(s), std::move(t), std::move(c), field_order);
        md.check_structure();
        return md;
    }

    long rank() const { return static_cast<long>(labels_.size()); }
    const std::vector<PrimaryLabel>& labels() const { return labels_; }
    const CycMatrix& s_matrix() const { return s_; }
    const std::vector<Rational>& t_exponents() const { return t_; }
    const Rational& t_exponent(long p) const { return t_[static_cast<std::size_t>(p)]; }
    const Rational& central_charge() const { return c_; }
    long field_order() const { return field_order_; }

    friend bool operator==(const ModularData& a, const ModularData& b) {
        return a.labels_ == b.labels_ && a.t_ == b.t_ && a.c_ == b.c_ &&
               a.field_order_ == b.field_order_ && a.s_ == b.s_;
    }

    // Conductor: the order of T, i.e. lcm of the t-exponent denominators.
    long conductor() const {
        Integer l = 1;
        for (const auto& t : t_) l = lcm(l, den(t));
        return to_long(l);
    }

    // N0: order of T modulo its vacuum phase (lcm of den(t_p - t_0)).
    long n_zero() const {
        Integer l = 1;
        for (const auto& t : t_) l = lcm(l, den(mod1(t - t_[0])));
        return to_long(l);
    }

    long ratio_e() const {
        long n = conductor(), n0 = n_zero();
        if (n % n0 != 0) throw AxiomViolation("N0 divides N", "N=" + std::to_string(n) + " N0=" + std::to_string(n0));
        return n / n0;
    }

    PhaseDiagonal t_diagonal() const { return PhaseDiagonal(t_); }

    // T^r for rational r with the branch pinned per primary:
    // (T^r)_pp = exp(2*pi*i * r * t_p), t_p the representative in [0,1).
    PhaseDiagonal t_power(const Rational& r) const {
        std::vector<Rational> e(t_.size());
        for (std::size_t p = 0; p < t_.size(); ++p) e[p] = mod1(r * t_[p]);
        return PhaseDiagonal(std::move(e));
    }

    // Permutation p -> pbar defined by S^2.
    const std::vector<long>& charge_conjugation() const {
        if (conj_perm_.empty() && rank() > 0)
            throw AxiomViolation("conjugation availability", "unvalidated data");
        return conj_perm_;
    }

    const FusionTable& fusion() const {
        if (fusion_.rank() == 0 && rank() > 0)
            throw AxiomViolation("fusion table availability", "unvalidated data");
        return fusion_;
    }

    // Axiom battery; collects one record per axiom instead of throwing.
    std::vector<AxiomCheck> check_axioms() const {
        std::vector<AxiomCheck> out;
        auto add = [&out](const std::string& name, bool ok, const std::string& wit) {
            out.push_back({name, ok, ok ? std::string() : wit});
        };

        // Symmetry.
        {
            std::string wit;
            bool ok = true;
            for (long p = 0; p < rank() && ok; ++p)
                for (long q = p + 1; q < rank() && ok; ++q)
                    if (s_.at(p, q) != s_.at(q, p)) {
                        ok = false;
                        wit = entry_name(p, q);
                    }
            add("S is symmetric", ok, wit);
        }

        // Unitarity: S * conj(S)^T = 1.
        {
            CycMatrix prod = s_ * s_.conj_transpose();
            std::string wit;
            bool ok = find_identity_defect(prod, wit);
            add("S is unitary", ok, wit);
        }

        // S^2 is the charge-conjugation permutation (and S^4 = 1).
        {
            std::string wit;
            add("S^2 is the conjugation permutation", try_conjugation(wit).has_value(), wit);
        }

        // S T S = T^-1 S T^-1.
        {
            PhaseDiagonal t = t_diagonal(), ti = t.inverse();
            CycMatrix lhs = s_ * t.left_apply(s_);
            CycMatrix rhs = ti.left_apply(ti.right_apply(s_));
            std::string wit;
            bool ok = true;
            for (long p = 0; p < rank() && ok; ++p)
                for (long q = 0; q < rank() && ok; ++q)
                    if (lhs.at(p, q) != rhs.at(p, q)) {
                        ok = false;
                        wit = entry_name(p, q);
                    }
            add("S T S = T^-1 S T^-1", ok, wit);
        }

        // Vacuum T phase against the central charge: t_0 = -c/24 (mod 1).
        add("t_0 = -c/24 (mod 1)", mod1(t_[0] + c_ / 24) == 0, "t_0=" + rational_str(t_[0]));

        return out;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["format"] = "modular-data";
        j["version"] = 1;
        nlohmann::json labels = nlohmann::json::array();
        for (const auto& l : labels_) labels.push_back(l.name);
        j["labels"] = std::move(labels);
        j["central_charge"] = {num(c_).str(), den(c_).str()};
        nlohmann::json te = nlohmann::json::array();
        for (const auto& t : t_) te.push_back({num(t).str(), den(t).str()});
        j["t_exponents"] = std::move(te);
        j["field_order"] = field_order_;
        nlohmann::json rowsj = nlohmann::json::array();
        for (long p = 0; p < rank(); ++p) {
            nlohmann::json row = nlohmann::json::array();
            for (long q = 0; q < rank(); ++q) {
                nlohmann::json cell;
                cell["order"] = s_.at(p, q).order();
                nlohmann::json coeffs = nlohmann::json::array();
                for (const auto& [i, v] : s_.at(p, q).to_sparse())
                    coeffs.push_back({std::to_string(i), num(v).str(), den(v).str()});
                cell["coeffs"] = std::move(coeffs);
                row.push_back(std::move(cell));
            }
            rowsj.push_back(std::move(row));
        }
        j["s_matrix"] = std::move(rowsj);
        return j;
    }

    static ModularData from_json(const nlohmann::json& j, bool validate = true) {
        try {
            if (!j.is_object() || j.value("format", "") != std::string("modular-data"))
                throw SchemaError("missing modular-data format tag");
            if (j.value("version", 0) != 1) throw SchemaError("unsupported version");
            std::vector<PrimaryLabel> labels;
            long idx = 0;
            for (const auto& l : j.at("labels")) labels.push_back({idx++, l.get<std::string>()});
            if (labels.empty()) throw SchemaError("no primary labels");
            Rational c = parse_rational(j.at("central_charge"));
            std::vector<Rational> t;
            for (const auto& e : j.at("t_exponents")) t.push_back(parse_rational(e));
            if (t.size() != labels.size()) throw SchemaError("t-exponent count mismatch");
            long field_order = j.at("field_order").get<long>();
            if (field_order < 1) throw SchemaError("field_order must be positive");
            const auto& sm = j.at("s_matrix");
            long r = static_cast<long>(labels.size());
            if (static_cast<long>(sm.size()) != r) throw SchemaError("s_matrix row count mismatch");
            CycMatrix s(r, r);
            for (long p = 0; p < r; ++p) {
                if (static_cast<long>(sm[p].size()) != r) throw SchemaError("s_matrix column count mismatch");
                for (long q = 0; q < r; ++q) {
                    const auto& cell = sm[p][q];
                    long order = cell.at("order").get<long>();
                    if (order < 1 || field_order % order != 0)
                        throw SchemaError("entry order must divide field_order");
                    std::vector<std::pair<long, Rational>> sparse;
                    for (const auto& co : cell.at("coeffs")) {
                        if (!co.is_array() || co.size() != 3) throw SchemaError("bad coefficient triple");
                        long i = std::stol(co[0].get<std::string>());
                        Rational v = parse_rational_pair(co[1].get<std::string>(), co[2].get<std::string>());
                        sparse.emplace_back(i, v);
                    }
                    s.at(p, q) = CycNumber::from_sparse(order, sparse);
                }
            }
            return validate ? create(std::move(labels), std::move(s), std::move(t), std::move(c), field_order)
                            : create_unchecked(std::move(labels), std::move(s), std::move(t), std::move(c), field_order);
        } catch (const nlohmann::json::exception& e) {
            throw SchemaError(e.what());
        } catch (const std::invalid_argument& e) {
            throw SchemaError(std::string("bad integer literal: ") + e.what());
        }
    }

    void save(const std::string& path) const {
        std::ofstream f(path);
        if (!f) throw SchemaError("cannot open " + path + " for writing");
        f << to_json().dump(2) << "\n";
    }

    static ModularData load(const std::string& path, bool validate = true) {
        std::ifstream f(path);
        if (!f) throw SchemaError("cannot open " + path);
        nlohmann::json j;
        try {
            f >> j;
        } catch (const nlohmann::json::exception& e) {
            throw SchemaError(e.what());
        }
        return from_json(j, validate);
    }

private:
    ModularData(std::vector<PrimaryLabel> labels, CycMatrix s, std::vector<Rational> t,
                Rational c, long field_order)
        : labels_(std::move(labels)), s_(std::move(s)), c_(std::move(c)), field_order_(field_order) {
        t_.reserve(t.size());
        for (auto& x : t) t_.push_back(mod1(x));
    }

    void check_structure() const {
        long r = rank();
        if (r < 1) throw SchemaError("at least one primary required");
        if (s_.rows() != r || s_.cols() != r) throw SchemaError("S matrix shape mismatch");
        if (static_cast<long>(t_.size()) != r) throw SchemaError("t exponent count mismatch");
        for (long i = 0; i < r; ++i)
            if (labels_[static_cast<std::size_t>(i)].index != i)
                throw SchemaError("label indices must be 0..r-1 in order");
        for (long p = 0; p < r; ++p)
            for (long q = 0; q < r; ++q)
                if (field_order_ % s_.at(p, q).order() != 0)
                    throw SchemaError("S entry order does not divide field_order");
    }

    // Rewrite S over Q[zeta_N]; Galois theory says this must succeed for
    // genuine modular data, so failure is reported as an axiom violation.
    void reexpress_at_conductor() {
        long n = conductor();
        std::vector<CycNumber> entries;
        entries.reserve(static_cast<std::size_t>(rank() * rank()));
        for (long p = 0; p < rank(); ++p)
            for (long q = 0; q < rank(); ++q) entries.push_back(s_.at(p, q));
        auto re = express_all_in_order(entries, n);
        if (!re)
            throw AxiomViolation("S entries lie in Q[zeta_N]", "N=" + std::to_string(n));
        std::size_t k = 0;
        for (long p = 0; p < rank(); ++p)
            for (long q = 0; q < rank(); ++q) s_.at(p, q) = (*re)[k++];
        field_order_ = n;
    }

    // Extract the permutation p -> pbar from S^2, or report the offending
    // entry. Also verifies the permutation is an involution (i.e. S^4 = 1).
    std::optional<std::vector<long>> try_conjugation(std::string& wit) const {
        CycMatrix c2 = s_ * s_;
        std::vector<long> perm(static_cast<std::size_t>(rank()), -1);
        std::vector<bool> hit(static_cast<std::size_t>(rank()), false);
        for (long p = 0; p < rank(); ++p)
            for (long q = 0; q < rank(); ++q) {
                const CycNumber& v = c2.at(p, q);
                if (v.is_zero()) continue;
                if (!v.is_one() || perm[q] != -1 || hit[p]) {
                    wit = entry_name(p, q);
                    return std::nullopt;
                }
                perm[q] = p;
                hit[p] = true;
            }
        for (long q = 0; q < rank(); ++q)
            if (perm[q] < 0) {
                wit = "column " + std::to_string(q);
                return std::nullopt;
            }
        for (long q = 0; q < rank(); ++q)
            if (perm[perm[q]] != q) {
                wit = "column " + std::to_string(q);
                return std::nullopt;
            }
        return perm;
    }

    bool find_identity_defect(const CycMatrix& m, std::string& wit) const {
        for (long p = 0; p < rank(); ++p)
            for (long q = 0; q < rank(); ++q) {
                bool ok = (p == q) ? m.at(p, q).is_one() : m.at(p, q).is_zero();
                if (!ok) {
                    wit = entry_name(p, q);
                    return false;
                }
            }
        return true;
    }

    static std::string entry_name(long p, long q) {
        return "(" + std::to_string(p) + "," + std::to_string(q) + ")";
    }

    FusionTable compute_fusion() const {
        long r = rank();
        FusionTable f(r);
        std::vector<CycNumber> inv0(static_cast<std::size_t>(r));
        for (long s = 0; s < r; ++s) {
            if (s_.at(0, s).is_zero())
                throw AxiomViolation("vacuum S row has no zero entries", "S(0," + std::to_string(s) + ")");
            inv0[static_cast<std::size_t>(s)] = s_.at(0, s).inverse();
        }
        for (long p = 0; p < r; ++p)
            for (long q = p; q < r; ++q)
                for (long w = q; w < r; ++w) {
                    CycNumber acc = CycNumber(0L);
                    for (long s = 0; s < r; ++s)
                        acc += s_.at(p, s) * s_.at(q, s) * s_.at(w, s) * inv0[static_cast<std::size_t>(s)];
                    if (!acc.is_rational())
                        throw NonIntegerFusion("N(" + std::to_string(p) + "," + std::to_string(q) + "," +
                                               std::to_string(w) + ") is irrational");
                    Rational v = acc.as_rational();
                    if (den(v) != 1 || v < 0)
                        throw NonIntegerFusion("N(" + std::to_string(p) + "," + std::to_string(q) + "," +
                                               std::to_string(w) + ") = " + rational_str(v));
                    Integer nv = num(v);
                    f.at(p, q, w) = nv;
                    f.at(p, w, q) = nv;
                    f.at(q, p, w) = nv;
                    f.at(q, w, p) = nv;
                    f.at(w, p, q) = nv;
                    f.at(w, q, p) = nv;
                }
        return f;
    }

    static Rational parse_rational(const nlohmann::json& pair) {
        if (!pair.is_array() || pair.size() != 2) throw SchemaError("rational must be [num, den]");
        return parse_rational_pair(pair[0].get<std::string>(), pair[1].get<std::string>());
    }

    static Rational parse_rational_pair(const std::string& n, const std::string& d) {
        Integer nn(n), dd(d);
        if (dd == 0) throw SchemaError("zero denominator");
        return Rational(nn, dd);
    }

    std::vector<PrimaryLabel> labels_;
    CycMatrix s_;
    std::vector<Rational> t_;
    Rational c_;
    long field_order_ = 1;
    std::vector<long> conj_perm_;
    FusionTable fusion_;
};

}  // namespace modrep
