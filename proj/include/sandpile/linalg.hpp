#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sandpile/int_matrix.hpp"
#include "sandpile/numeric.hpp"

namespace sandpile {

// Exact determinant by fraction-free (Bareiss) elimination. Every division
// below is exact; intermediate entries are minors of the input.
inline Int det_exact(const IntMatrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("det_exact: matrix is not square");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && m.at(r, k) == 0) ++r;
            if (r == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(r, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

// U * A * V = S with U, V unimodular and S diagonal, s_i >= 0, s_i | s_{i+1}.
struct SmithDecomposition {
    IntMatrix u;  // rows x rows
    IntMatrix s;  // rows x cols, diagonal
    IntMatrix v;  // cols x cols

    std::size_t rank() const {
        std::size_t r = 0;
        const std::size_t d = std::min(s.rows(), s.cols());
        while (r < d && s.at(r, r) != 0) ++r;
        return r;
    }

    std::vector<Int> diagonal() const {
        std::vector<Int> d;
        for (std::size_t i = 0; i < std::min(s.rows(), s.cols()); ++i)
            d.push_back(s.at(i, i));
        return d;
    }
};

namespace detail {

inline void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

inline void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

// row[a] -= q * row[b]
inline void row_axpy(IntMatrix& m, std::size_t a, std::size_t b, const Int& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(a, j) -= q * m.at(b, j);
}

inline void col_axpy(IntMatrix& m, std::size_t a, std::size_t b, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, a) -= q * m.at(i, b);
}

inline void negate_row(IntMatrix& m, std::size_t r) {
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) = -m.at(r, j);
}

}  // namespace detail

// Smith normal form by elimination with minimal-|pivot| selection and
// divisibility repair. Maintains u*A*v = s throughout.
inline SmithDecomposition snf(const IntMatrix& a) {
    using namespace detail;
    SmithDecomposition d;
    d.s = a;
    d.u = IntMatrix::identity(a.rows());
    d.v = IntMatrix::identity(a.cols());
    IntMatrix& s = d.s;
    const std::size_t dim = std::min(a.rows(), a.cols());

    for (std::size_t t = 0; t < dim; ++t) {
        // smallest nonzero entry of the trailing block becomes the pivot
        bool found = false;
        std::size_t pi = t, pj = t;
        for (std::size_t i = t; i < s.rows(); ++i)
            for (std::size_t j = t; j < s.cols(); ++j) {
                if (s.at(i, j) == 0) continue;
                if (!found || abs(s.at(i, j)) < abs(s.at(pi, pj))) {
                    found = true;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        if (pi != t) { swap_rows(s, t, pi); swap_rows(d.u, t, pi); }
        if (pj != t) { swap_cols(s, t, pj); swap_cols(d.v, t, pj); }

        for (;;) {
            // clear column t below the pivot
            bool dirty = false;
            for (std::size_t i = t + 1; i < s.rows(); ++i) {
                while (s.at(i, t) != 0) {
                    Int q = floor_div(s.at(i, t), s.at(t, t));
                    row_axpy(s, i, t, q);
                    row_axpy(d.u, i, t, q);
                    if (s.at(i, t) != 0) {
                        // remainder is strictly smaller; promote it
                        swap_rows(s, t, i);
                        swap_rows(d.u, t, i);
                        dirty = true;
                    }
                }
            }
            for (std::size_t j = t + 1; j < s.cols(); ++j) {
                while (s.at(t, j) != 0) {
                    Int q = floor_div(s.at(t, j), s.at(t, t));
                    col_axpy(s, j, t, q);
                    col_axpy(d.v, j, t, q);
                    if (s.at(t, j) != 0) {
                        swap_cols(s, t, j);
                        swap_cols(d.v, t, j);
                        dirty = true;
                    }
                }
            }
            if (dirty) continue;  // column work may have refilled the row

            // pivot must divide the whole trailing block
            bool repaired = false;
            for (std::size_t i = t + 1; i < s.rows() && !repaired; ++i)
                for (std::size_t j = t + 1; j < s.cols() && !repaired; ++j)
                    if (s.at(i, j) % s.at(t, t) != 0) {
                        row_axpy(s, t, i, Int(-1));
                        row_axpy(d.u, t, i, Int(-1));
                        repaired = true;
                    }
            if (!repaired) break;
        }

        if (s.at(t, t) < 0) { negate_row(s, t); negate_row(d.u, t); }
    }
    return d;
}

// Row Hermite normal form: returns (h, u) with u unimodular, u*A = h,
// pivots positive, entries above each pivot reduced into [0, pivot).
inline std::pair<IntMatrix, IntMatrix> hnf(const IntMatrix& a) {
    using namespace detail;
    IntMatrix h = a;
    IntMatrix u = IntMatrix::identity(a.rows());
    std::size_t r = 0;
    for (std::size_t j = 0; j < h.cols() && r < h.rows(); ++j) {
        // gcd the column entries at rows >= r into a single pivot
        for (;;) {
            std::size_t best = h.rows();
            for (std::size_t i = r; i < h.rows(); ++i) {
                if (h.at(i, j) == 0) continue;
                if (best == h.rows() || abs(h.at(i, j)) < abs(h.at(best, j))) best = i;
            }
            if (best == h.rows()) break;  // column already clear
            if (best != r) { swap_rows(h, r, best); swap_rows(u, r, best); }
            bool clear = true;
            for (std::size_t i = r + 1; i < h.rows(); ++i) {
                if (h.at(i, j) == 0) continue;
                Int q = floor_div(h.at(i, j), h.at(r, j));
                row_axpy(h, i, r, q);
                row_axpy(u, i, r, q);
                if (h.at(i, j) != 0) clear = false;
            }
            if (clear) break;
        }
        if (h.at(r, j) == 0) continue;
        if (h.at(r, j) < 0) { negate_row(h, r); negate_row(u, r); }
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(h.at(i, j), h.at(r, j));
            row_axpy(h, i, r, q);
            row_axpy(u, i, r, q);
        }
        ++r;
    }
    return {h, u};
}

// Exact solution of A x = b for square nonsingular A.
inline RationalVec solve_rational(const IntMatrix& a, const std::vector<Int>& b) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("solve_rational: matrix is not square");
    if (b.size() != a.rows())
        throw std::invalid_argument("solve_rational: vector length mismatch");
    const std::size_t n = a.rows();
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Rat(a.at(i, j));
        m[i][n] = Rat(b[i]);
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k] == 0) ++p;
        if (p == n) throw std::domain_error("solve_rational: singular matrix");
        std::swap(m[k], m[p]);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            Rat f = m[i][k] / m[k][k];
            for (std::size_t j = k; j <= n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    RationalVec x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rat acc = m[i][n];
        for (std::size_t j = i + 1; j < n; ++j) acc -= m[i][j] * x[j];
        x[i] = acc / m[i][i];
    }
    return x;
}

// Same, for a rational right-hand side.
inline RationalVec solve_rational(const IntMatrix& a, const RationalVec& b) {
    if (b.size() != a.rows())
        throw std::invalid_argument("solve_rational: vector length mismatch");
    Int scale = 1;
    for (const auto& r : b) scale = scale / boost::multiprecision::gcd(scale, denominator(r)) * denominator(r);
    std::vector<Int> bi(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        bi[i] = numerator(b[i]) * (scale / denominator(b[i]));
    RationalVec x = solve_rational(a, bi);
    for (auto& r : x) r /= Rat(scale);
    return x;
}

// Inverse of a square nonsingular integer matrix, as exact rationals
// (row-major, n x n). Gauss-Jordan.
inline std::vector<std::vector<Rat>> rational_inverse(const IntMatrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("rational_inverse: matrix is not square");
    const std::size_t n = a.rows();
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Rat(a.at(i, j));
        m[i][n + i] = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p][k] == 0) ++p;
        if (p == n) throw std::domain_error("rational_inverse: singular matrix");
        std::swap(m[k], m[p]);
        Rat piv = m[k][k];
        for (std::size_t j = 0; j < 2 * n; ++j) m[k][j] /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m[i][k] == 0) continue;
            Rat f = m[i][k];
            for (std::size_t j = 0; j < 2 * n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
    return inv;
}

// One rational solution of A x = b for a rectangular system (free variables
// set to zero). Throws if the system is inconsistent.
inline RationalVec solve_rational_any(const IntMatrix& a, const std::vector<Rat>& b) {
    if (b.size() != a.rows())
        throw std::invalid_argument("solve_rational_any: vector length mismatch");
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::vector<Rat>> m(rows, std::vector<Rat>(cols + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m[i][j] = Rat(a.at(i, j));
        m[i][cols] = b[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t j = 0; j < cols && r < rows; ++j) {
        std::size_t p = r;
        while (p < rows && m[p][j] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][j] == 0) continue;
            Rat f = m[i][j] / m[r][j];
            for (std::size_t k = j; k <= cols; ++k) m[i][k] -= f * m[r][k];
        }
        pivot_col.push_back(j);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (m[i][cols] != 0)
            throw std::domain_error("solve_rational_any: inconsistent system");
    RationalVec x(cols);
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
        x[pivot_col[i]] = m[i][cols] / m[i][pivot_col[i]];
    return x;
}

// Integer solution of A x = b, if one exists.
inline std::optional<std::vector<Int>> solve_integer(const IntMatrix& a,
                                                     const std::vector<Int>& b) {
    if (b.size() != a.rows())
        throw std::invalid_argument("solve_integer: vector length mismatch");
    SmithDecomposition d = snf(a);
    std::vector<Int> ub = d.u.apply(b);
    const std::size_t r = d.rank();
    std::vector<Int> y(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (i < r) {
            if (ub[i] % d.s.at(i, i) != 0) return std::nullopt;
            y[i] = ub[i] / d.s.at(i, i);
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return d.v.apply(y);
}

// Basis of the integer kernel lattice {x : A x = 0}, one column per basis
// vector. The basis is primitive: it spans a saturated sublattice.
inline IntMatrix kernel_basis(const IntMatrix& a) {
    SmithDecomposition d = snf(a);
    const std::size_t r = d.rank();
    std::vector<std::size_t> idx;
    for (std::size_t j = r; j < a.cols(); ++j) idx.push_back(j);
    return d.v.select_cols(idx);
}

// Isomorphism class of a finitely generated abelian group:
// Z/d_1 + ... + Z/d_k + Z^free_rank with d_1 | d_2 | ... , all d_i > 1.
struct GroupStructure {
    std::vector<Int> invariant_factors;
    std::size_t free_rank = 0;

    Int torsion_order() const {
        Int o = 1;
        for (const auto& d : invariant_factors) o *= d;
        return o;
    }
    bool is_trivial() const { return invariant_factors.empty() && free_rank == 0; }

    bool operator==(const GroupStructure& o) const {
        return invariant_factors == o.invariant_factors && free_rank == o.free_rank;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
            if (i) s += ",";
            s += invariant_factors[i].str();
        }
        s += "]";
        if (free_rank) s += " + Z^" + std::to_string(free_rank);
        return s;
    }
};

// Structure of Z^rows / (column span of A).
inline GroupStructure cokernel_structure(const IntMatrix& a) {
    SmithDecomposition d = snf(a);
    GroupStructure g;
    const std::size_t r = d.rank();
    for (std::size_t i = 0; i < r; ++i)
        if (d.s.at(i, i) > 1) g.invariant_factors.push_back(d.s.at(i, i));
    g.free_rank = a.rows() - r;
    return g;
}

// Canonical form of the lattice spanned by the columns of b: the nonzero
// rows of the row HNF of b^T. Literal equality of these forms is lattice
// equality.
inline IntMatrix lattice_canonical(const IntMatrix& b) {
    IntMatrix h = hnf(b.transpose()).first;
    std::size_t nz = 0;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < h.cols(); ++j)
            if (h.at(i, j) != 0) { zero = false; break; }
        if (!zero) nz = i + 1;
    }
    std::vector<std::size_t> idx(nz);
    for (std::size_t i = 0; i < nz; ++i) idx[i] = i;
    return h.select_rows(idx);
}

// Do the columns of b1 and b2 generate the same sublattice of Z^n?
inline bool lattice_equal(const IntMatrix& b1, const IntMatrix& b2) {
    if (b1.rows() != b2.rows())
        throw std::invalid_argument("lattice_equal: ambient dimensions differ");
    return lattice_canonical(b1) == lattice_canonical(b2);
}

inline std::size_t rank_of(const IntMatrix& a) { return snf(a).rank(); }

// Order of the subgroup of Z^n / col-span(A) generated by the classes of the
// columns of gens. Requires the cokernel to be finite: |S| = |G| / |G/S|,
// and G/S is the cokernel of [A | gens].
inline Int subgroup_order_in_cokernel(const IntMatrix& a, const IntMatrix& gens) {
    GroupStructure g = cokernel_structure(a);
    if (g.free_rank != 0)
        throw std::invalid_argument("subgroup_order_in_cokernel: infinite cokernel");
    GroupStructure q = cokernel_structure(a.hcat(gens));
    return g.torsion_order() / q.torsion_order();
}

}  // namespace sandpile
