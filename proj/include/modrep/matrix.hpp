#pragma once

// Dense matrices over cyclotomic numbers. Entries may carry different orders;
// arithmetic aligns them through common embeddings as needed.

#include <vector>

#include "modrep/cyclotomic.hpp"
#include "modrep/errors.hpp"

namespace modrep {

class CycMatrix {
public:
    CycMatrix() : rows_(0), cols_(0) {}
    CycMatrix(long rows, long cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}

    static CycMatrix identity(long n) {
        CycMatrix m(n, n);
        for (long i = 0; i < n; ++i) m.at(i, i) = CycNumber(1L);
        return m;
    }

    long rows() const { return rows_; }
    long cols() const { return cols_; }

    CycNumber& at(long i, long j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    const CycNumber& at(long i, long j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

    friend CycMatrix operator*(const CycMatrix& a, const CycMatrix& b) {
        if (a.cols_ != b.rows_) throw OrderMismatch("matrix dimension mismatch");
        CycMatrix r(a.rows_, b.cols_);
        for (long i = 0; i < a.rows_; ++i)
            for (long k = 0; k < a.cols_; ++k) {
                const CycNumber& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (long j = 0; j < b.cols_; ++j) {
                    const CycNumber& bkj = b.at(k, j);
                    if (bkj.is_zero()) continue;
                    r.at(i, j) += aik * bkj;
                }
            }
        return r;
    }

    friend CycMatrix operator-(const CycMatrix& a, const CycMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw OrderMismatch("matrix dimension mismatch");
        CycMatrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = a.data_[i] - b.data_[i];
        return r;
    }

    friend bool operator==(const CycMatrix& a, const CycMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            if (a.data_[i] != b.data_[i]) return false;
        return true;
    }
    friend bool operator!=(const CycMatrix& a, const CycMatrix& b) { return !(a == b); }

    CycMatrix transpose() const {
        CycMatrix r(cols_, rows_);
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    CycMatrix conj() const {
        CycMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i].conj();
        return r;
    }

    // For unitary matrices this is the inverse.
    CycMatrix conj_transpose() const { return conj().transpose(); }

    CycMatrix frobenius(const Integer& l) const {
        CycMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i].frobenius(l);
        return r;
    }

    CycMatrix scaled(const Rational& s) const {
        CycMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i].scaled(s);
        return r;
    }

    CycMatrix scaled(const CycNumber& s) const {
        CycMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * s;
        return r;
    }

    CycMatrix embed_all(long m) const {
        CycMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i].embed(m);
        return r;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j) {
                if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
            }
        return true;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    // Largest cyclotomic order appearing among the entries.
    long max_entry_order() const {
        long m = 1;
        for (const auto& x : data_) m = std::max(m, x.order());
        return m;
    }

private:
    long rows_, cols_;
    std::vector<CycNumber> data_;
};

}  // namespace modrep
