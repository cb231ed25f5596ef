#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "sandpile/numeric.hpp"

namespace sandpile {

// Dense integer matrix with exact entries. Dimensions are fixed at
// construction; 0-row and 0-column matrices are legal (empty interiors,
// empty kernels).
class IntMatrix {
public:
    IntMatrix() = default;

    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    IntMatrix(std::initializer_list<std::initializer_list<Int>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw std::invalid_argument("ragged initializer for IntMatrix");
            for (const auto& x : row) data_.push_back(x);
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0) return false;
        return true;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    IntMatrix operator*(const IntMatrix& o) const {
        if (cols_ != o.rows_)
            throw std::invalid_argument("IntMatrix product: inner dimensions differ");
        IntMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& a = at(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
            }
        return r;
    }

    std::vector<Int> apply(const std::vector<Int>& x) const {
        if (x.size() != cols_)
            throw std::invalid_argument("IntMatrix apply: vector length mismatch");
        std::vector<Int> y(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != 0) y[i] += at(i, j) * x[j];
        return y;
    }

    std::vector<Rat> apply(const std::vector<Rat>& x) const {
        if (x.size() != cols_)
            throw std::invalid_argument("IntMatrix apply: vector length mismatch");
        std::vector<Rat> y(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != 0) y[i] += Rat(at(i, j)) * x[j];
        return y;
    }

    // Keeps the listed rows, in the given order.
    IntMatrix select_rows(const std::vector<std::size_t>& idx) const {
        IntMatrix r(idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(idx[i], j);
        return r;
    }

    IntMatrix select_cols(const std::vector<std::size_t>& idx) const {
        IntMatrix r(rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) r.at(i, j) = at(i, idx[j]);
        return r;
    }

    std::vector<Int> column(std::size_t j) const {
        std::vector<Int> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    // Glues columns of b to the right of *this.
    IntMatrix hcat(const IntMatrix& b) const {
        if (rows_ != b.rows_)
            throw std::invalid_argument("IntMatrix hcat: row counts differ");
        IntMatrix r(rows_, cols_ + b.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
            for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, cols_ + j) = b.at(i, j);
        }
        return r;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? "; " : "";
            s += "[";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) s += ",";
                s += at(i, j).str();
            }
            s += "]";
        }
        return s + "]";
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

// Exact rational vector, entries always in lowest terms.
using RationalVec = std::vector<Rat>;

}  // namespace sandpile
