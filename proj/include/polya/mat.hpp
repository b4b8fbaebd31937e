#ifndef POLYA_MAT_HPP
#define POLYA_MAT_HPP

#include "polya/int.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <ostream>

namespace polya {

// Dense integer matrix, row-major. Rows act as lattice generators / relation
// vectors throughout the library; everything is exact.
struct IntMat {
    int rows = 0;
    int cols = 0;
    std::vector<Int> a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

    Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static IntMat identity(int n) {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static IntMat from_rows(const std::vector<std::vector<Int>>& rws, int ncols) {
        IntMat m(static_cast<int>(rws.size()), ncols);
        for (size_t i = 0; i < rws.size(); ++i) {
            if (static_cast<int>(rws[i].size()) != ncols)
                throw std::invalid_argument("from_rows: ragged input");
            for (int j = 0; j < ncols; ++j) m.at(static_cast<int>(i), j) = rws[i][j];
        }
        return m;
    }

    std::vector<Int> row(int i) const {
        std::vector<Int> r(cols);
        for (int j = 0; j < cols; ++j) r[j] = at(i, j);
        return r;
    }

    bool operator==(const IntMat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }

    void swap_rows(int i, int j) {
        for (int c = 0; c < cols; ++c) std::swap(at(i, c), at(j, c));
    }
    void swap_cols(int i, int j) {
        for (int r = 0; r < rows; ++r) std::swap(at(r, i), at(r, j));
    }
    // row i += f * row j
    void addmul_row(int i, int j, const Int& f) {
        for (int c = 0; c < cols; ++c) at(i, c) += f * at(j, c);
    }
    void addmul_col(int i, int j, const Int& f) {
        for (int r = 0; r < rows; ++r) at(r, i) += f * at(r, j);
    }
    void negate_row(int i) {
        for (int c = 0; c < cols; ++c) at(i, c) = -at(i, c);
    }
};

inline std::ostream& operator<<(std::ostream& os, const IntMat& m) {
    for (int i = 0; i < m.rows; ++i) {
        os << (i == 0 ? "[" : " ");
        for (int j = 0; j < m.cols; ++j) os << m.at(i, j) << (j + 1 < m.cols ? " " : "");
        os << (i + 1 < m.rows ? ";\n" : "]");
    }
    return os;
}

inline IntMat mat_mul(const IntMat& x, const IntMat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
    IntMat z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Int& v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j) z.at(i, j) += v * y.at(k, j);
        }
    return z;
}

inline std::vector<Int> vec_mat_mul(const std::vector<Int>& v, const IntMat& m) {
    if (static_cast<int>(v.size()) != m.rows) throw std::invalid_argument("vec_mat_mul: shape");
    std::vector<Int> out(m.cols, Int(0));
    for (int i = 0; i < m.rows; ++i) {
        if (v[i] == 0) continue;
        for (int j = 0; j < m.cols; ++j) out[j] += v[i] * m.at(i, j);
    }
    return out;
}

inline IntMat stack_rows(const IntMat& x, const IntMat& y) {
    if (x.cols != y.cols) throw std::invalid_argument("stack_rows: shape mismatch");
    IntMat z(x.rows + y.rows, x.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) z.at(i, j) = x.at(i, j);
    for (int i = 0; i < y.rows; ++i)
        for (int j = 0; j < x.cols; ++j) z.at(x.rows + i, j) = y.at(i, j);
    return z;
}

// Fraction-free determinant (Bareiss).
inline Int det(IntMat m) {
    if (m.rows != m.cols) throw std::invalid_argument("det: not square");
    int n = m.rows;
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            m.swap_rows(k, piv);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m.at(i, j) = divexact(m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j), prev);
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

struct HnfResult {
    IntMat h;             // basis rows, pivots strictly left-to-right, zero rows dropped
    IntMat u;             // unimodular, u * input = [h; 0]
    std::vector<int> pivot_col;
};

// Row-style Hermite normal form: pivots positive, entries above a pivot
// reduced into [0, pivot).
inline HnfResult hnf_transform(const IntMat& input) {
    IntMat m = input;
    IntMat u = IntMat::identity(m.rows);
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        // gcd-reduce column c among rows >= r
        while (true) {
            int best = -1;
            for (int i = r; i < m.rows; ++i)
                if (m.at(i, c) != 0 && (best < 0 || abs(m.at(i, c)) < abs(m.at(best, c))))
                    best = i;
            if (best < 0) break;
            m.swap_rows(r, best);
            u.swap_rows(r, best);
            bool clean = true;
            for (int i = r + 1; i < m.rows; ++i) {
                if (m.at(i, c) == 0) continue;
                Int q = fdiv_q(m.at(i, c), m.at(r, c));
                if (q != 0) {
                    m.addmul_row(i, r, -q);
                    u.addmul_row(i, r, -q);
                }
                if (m.at(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (m.at(r, c) == 0) continue;
        if (m.at(r, c) < 0) {
            m.negate_row(r);
            u.negate_row(r);
        }
        for (int i = 0; i < r; ++i) {
            Int q = fdiv_q(m.at(i, c), m.at(r, c));
            if (q != 0) {
                m.addmul_row(i, r, -q);
                u.addmul_row(i, r, -q);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    IntMat h(r, m.cols);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < m.cols; ++j) h.at(i, j) = m.at(i, j);
    return {std::move(h), std::move(u), std::move(pivots)};
}

inline IntMat hnf(const IntMat& input) { return hnf_transform(input).h; }

// Basis of { x : x * m = 0 }.
inline IntMat left_kernel(const IntMat& m) {
    HnfResult hr = hnf_transform(m);
    int rank = hr.h.rows;
    IntMat k(m.rows - rank, m.rows);
    for (int i = rank; i < m.rows; ++i)
        for (int j = 0; j < m.rows; ++j) k.at(i - rank, j) = hr.u.at(i, j);
    return hnf(k);
}

// Membership of v in the row lattice of an HNF basis h; returns the coefficient
// vector over h's rows if it exists.
inline std::optional<std::vector<Int>> hnf_solve(const IntMat& h, const std::vector<Int>& v0) {
    if (static_cast<int>(v0.size()) != h.cols) throw std::invalid_argument("hnf_solve: shape");
    std::vector<Int> v = v0;
    std::vector<Int> coeff(h.rows, Int(0));
    int row = 0;
    for (int c = 0; c < h.cols; ++c) {
        if (row < h.rows && h.at(row, c) != 0) {
            Int q, r;
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v[c].get_mpz_t(), h.at(row, c).get_mpz_t());
            if (r != 0) return std::nullopt;
            if (q != 0)
                for (int j = c; j < h.cols; ++j) v[j] -= q * h.at(row, j);
            coeff[row] = q;
            ++row;
        } else if (v[c] != 0) {
            return std::nullopt;
        }
    }
    return coeff;
}

inline bool in_lattice(const IntMat& h, const std::vector<Int>& v) {
    return hnf_solve(h, v).has_value();
}

inline bool lattice_contains(const IntMat& outer_hnf, const IntMat& inner) {
    for (int i = 0; i < inner.rows; ++i)
        if (!in_lattice(outer_hnf, inner.row(i))) return false;
    return true;
}

inline IntMat lattice_sum(const IntMat& x, const IntMat& y) { return hnf(stack_rows(x, y)); }

// Intersection of the row lattices of a and b.
inline IntMat lattice_intersect(const IntMat& a, const IntMat& b) {
    IntMat stacked = stack_rows(a, b);
    IntMat k = left_kernel(stacked);
    // rows (u | v) with u*a = -v*b; u*a spans the intersection
    IntMat gen(k.rows, a.cols);
    for (int i = 0; i < k.rows; ++i) {
        std::vector<Int> u(a.rows);
        for (int j = 0; j < a.rows; ++j) u[j] = k.at(i, j);
        auto w = vec_mat_mul(u, a);
        for (int j = 0; j < a.cols; ++j) gen.at(i, j) = w[j];
    }
    return hnf(gen);
}

struct SnfResult {
    std::vector<Int> diag;  // min(rows,cols) entries, d1 | d2 | ..., trailing zeros possible
    IntMat u, v;            // unimodular: u * input * v = diag
};

// Smith normal form with both transforms.
inline SnfResult snf(const IntMat& input) {
    IntMat d = input;
    IntMat u = IntMat::identity(d.rows);
    IntMat v = IntMat::identity(d.cols);
    int n = std::min(d.rows, d.cols);
    for (int t = 0; t < n; ++t) {
        while (true) {
            int pi = -1, pj = -1;
            for (int i = t; i < d.rows; ++i)
                for (int j = t; j < d.cols; ++j)
                    if (d.at(i, j) != 0 &&
                        (pi < 0 || abs(d.at(i, j)) < abs(d.at(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) break;  // submatrix zero
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            bool dirty = false;
            for (int i = t + 1; i < d.rows; ++i) {
                if (d.at(i, t) == 0) continue;
                Int q = fdiv_q(d.at(i, t), d.at(t, t));
                d.addmul_row(i, t, -q);
                u.addmul_row(i, t, -q);
                if (d.at(i, t) != 0) dirty = true;
            }
            for (int j = t + 1; j < d.cols; ++j) {
                if (d.at(t, j) == 0) continue;
                Int q = fdiv_q(d.at(t, j), d.at(t, t));
                d.addmul_col(j, t, -q);
                v.addmul_col(j, t, -q);
                if (d.at(t, j) != 0) dirty = true;
            }
            if (dirty) continue;
            // row/col clear; enforce divisibility of the remaining block
            bool fixed = true;
            for (int i = t + 1; i < d.rows && fixed; ++i)
                for (int j = t + 1; j < d.cols && fixed; ++j)
                    if (!divides(d.at(t, t), d.at(i, j))) {
                        d.addmul_row(t, i, Int(1));
                        u.addmul_row(t, i, Int(1));
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (d.at(t, t) < 0) {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    std::vector<Int> diag(n);
    for (int t = 0; t < n; ++t) diag[t] = d.at(t, t);
    return {std::move(diag), std::move(u), std::move(v)};
}

// Solve X * basis = m where basis is a full-rank square HNF; entries of X must
// be integers (i.e. the rows of m lie in the row lattice of basis).
inline IntMat express_over(const IntMat& m, const IntMat& basis) {
    if (basis.rows != basis.cols || m.cols != basis.cols)
        throw std::invalid_argument("express_over: shape");
    IntMat x(m.rows, basis.rows);
    for (int i = 0; i < m.rows; ++i) {
        auto sol = hnf_solve(basis, m.row(i));
        if (!sol) throw inconsistency_error("express_over: row not in lattice");
        for (int j = 0; j < basis.rows; ++j) x.at(i, j) = (*sol)[j];
    }
    return x;
}

}  // namespace polya

#endif
