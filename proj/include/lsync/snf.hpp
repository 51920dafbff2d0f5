#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace lsync {

using Integer = boost::multiprecision::cpp_int;

/// Dense integer matrix, row-major.
struct IntMatrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<Integer> a;

    IntMatrix() = default;
    IntMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}

    static IntMatrix identity(size_t n) {
        IntMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static IntMatrix from(const std::vector<std::vector<long long>>& v) {
        IntMatrix m(v.size(), v.empty() ? 0 : v[0].size());
        for (size_t i = 0; i < m.rows; ++i) {
            for (size_t j = 0; j < m.cols; ++j) m(i, j) = v[i][j];
        }
        return m;
    }

    Integer& operator()(size_t i, size_t j) { return a[i * cols + j]; }
    const Integer& operator()(size_t i, size_t j) const { return a[i * cols + j]; }

    IntMatrix transpose() const {
        IntMatrix t(cols, rows);
        for (size_t i = 0; i < rows; ++i) {
            for (size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        }
        return t;
    }
    bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

inline IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    IntMatrix r(x.rows, y.cols);
    for (size_t i = 0; i < x.rows; ++i) {
        for (size_t k = 0; k < x.cols; ++k) {
            if (x(i, k) == 0) continue;
            for (size_t j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
        }
    }
    return r;
}

inline IntMatrix operator-(const IntMatrix& x, const IntMatrix& y) {
    IntMatrix r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

/// Columns of x followed by columns of y.
inline IntMatrix hconcat(const IntMatrix& x, const IntMatrix& y) {
    IntMatrix r(x.rows, x.cols + y.cols);
    for (size_t i = 0; i < x.rows; ++i) {
        for (size_t j = 0; j < x.cols; ++j) r(i, j) = x(i, j);
        for (size_t j = 0; j < y.cols; ++j) r(i, x.cols + j) = y(i, j);
    }
    return r;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntMatrix m) {
    const size_t n = m.rows;
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            for (size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... , d_i >= 0.
struct SmithForm {
    IntMatrix U, D, V;
    std::vector<Integer> diagonal;  ///< min(rows, cols) entries, zeros last

    size_t rank() const {
        return static_cast<size_t>(std::count_if(diagonal.begin(), diagonal.end(), [](const Integer& d) { return d != 0; }));
    }
};

inline SmithForm smith_normal_form(const IntMatrix& A) {
    const size_t m = A.rows, n = A.cols;
    SmithForm s{IntMatrix::identity(m), A, IntMatrix::identity(n), {}};
    IntMatrix& D = s.D;
    auto swap_rows = [&](size_t i, size_t j) {
        if (i == j) return;
        for (size_t c = 0; c < n; ++c) std::swap(D(i, c), D(j, c));
        for (size_t c = 0; c < m; ++c) std::swap(s.U(i, c), s.U(j, c));
    };
    auto swap_cols = [&](size_t i, size_t j) {
        if (i == j) return;
        for (size_t r = 0; r < m; ++r) std::swap(D(r, i), D(r, j));
        for (size_t r = 0; r < n; ++r) std::swap(s.V(r, i), s.V(r, j));
    };
    // row_i += q * row_j
    auto add_row = [&](size_t i, size_t j, const Integer& q) {
        for (size_t c = 0; c < n; ++c) D(i, c) += q * D(j, c);
        for (size_t c = 0; c < m; ++c) s.U(i, c) += q * s.U(j, c);
    };
    auto add_col = [&](size_t i, size_t j, const Integer& q) {
        for (size_t r = 0; r < m; ++r) D(r, i) += q * D(r, j);
        for (size_t r = 0; r < n; ++r) s.V(r, i) += q * s.V(r, j);
    };

    const size_t k = std::min(m, n);
    for (size_t t = 0; t < k; ++t) {
        // Pivot: nonzero entry of least absolute value in the trailing block.
        auto bring_min = [&]() {
            size_t pi = m, pj = n;
            for (size_t i = t; i < m; ++i) {
                for (size_t j = t; j < n; ++j) {
                    if (D(i, j) != 0 && (pi == m || abs(D(i, j)) < abs(D(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
                }
            }
            if (pi == m) return false;
            swap_rows(t, pi);
            swap_cols(t, pj);
            return true;
        };
        if (!bring_min()) break;
        for (;;) {
            bool dirty = false;
            for (size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                add_row(i, t, -(D(i, t) / D(t, t)));
                if (D(i, t) != 0) dirty = true;
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                add_col(j, t, -(D(t, j) / D(t, t)));
                if (D(t, j) != 0) dirty = true;
            }
            if (dirty) {
                bring_min();
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            size_t bad = m;
            for (size_t i = t + 1; i < m && bad == m; ++i) {
                for (size_t j = t + 1; j < n; ++j) {
                    if (D(i, j) % D(t, t) != 0) {
                        bad = i;
                        break;
                    }
                }
            }
            if (bad == m) break;
            add_row(t, bad, 1);
        }
        if (D(t, t) < 0) {
            for (size_t c = 0; c < n; ++c) D(t, c) = -D(t, c);
            for (size_t c = 0; c < m; ++c) s.U(t, c) = -s.U(t, c);
        }
    }
    for (size_t t = 0; t < k; ++t) s.diagonal.push_back(D(t, t));
    return s;
}

/// Finitely generated abelian group Z^free_rank + Z/d_1 + ... with d_1 | d_2 | ..., d_i >= 2.
struct AbelianGroup {
    size_t free_rank = 0;
    std::vector<Integer> torsion;

    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const AbelianGroup& o) const { return free_rank == o.free_rank && torsion == o.torsion; }

    /// Canonical rendering, e.g. "Z^2 + Z/2 + Z/6" or "0".
    std::string str() const {
        std::string r;
        if (free_rank == 1) r = "Z";
        if (free_rank > 1) r = "Z^" + std::to_string(free_rank);
        for (const auto& d : torsion) r += (r.empty() ? "" : " + ") + ("Z/" + d.str());
        return r.empty() ? "0" : r;
    }
};

/// Z^rows / A Z^cols.
inline AbelianGroup cokernel(const IntMatrix& A) {
    auto s = smith_normal_form(A);
    AbelianGroup g;
    g.free_rank = A.rows - s.rank();
    for (const auto& d : s.diagonal) {
        if (d > 1) g.torsion.push_back(d);
    }
    return g;
}

/// Basis of ker A in Z^cols, as the columns of the returned matrix.
inline IntMatrix kernel_basis(const IntMatrix& A) {
    auto s = smith_normal_form(A);
    const size_t r = s.rank();
    IntMatrix B(A.cols, A.cols - r);
    for (size_t i = 0; i < A.cols; ++i) {
        for (size_t j = r; j < A.cols; ++j) B(i, j - r) = s.V(i, j);
    }
    return B;
}

/// True when the columns of B generate Z^rows (all invariant factors 1, full rank).
inline bool spans_lattice(const IntMatrix& B) {
    auto s = smith_normal_form(B);
    if (s.rank() != B.rows) return false;
    return std::all_of(s.diagonal.begin(), s.diagonal.end(), [](const Integer& d) { return d == 0 || d == 1; });
}

/// True when the columns of B form a basis of a saturated sublattice (all
/// nonzero invariant factors 1, linearly independent).
inline bool primitive_columns(const IntMatrix& B) {
    auto s = smith_normal_form(B);
    if (s.rank() != B.cols) return false;
    return std::all_of(s.diagonal.begin(), s.diagonal.end(), [](const Integer& d) { return d <= 1; });
}

}  // namespace lsync
