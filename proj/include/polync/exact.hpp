#pragma once

#include "polync/core.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace polync {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Periodically polled by long-running matrix routines; returning true aborts
/// the computation with Cancelled.
using CancelFn = std::function<bool()>;

/// Dense integer matrix, row-major, arbitrary-precision entries.
class IMat {
public:
    IMat() = default;
    IMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IMat identity(std::size_t n) {
        IMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Int& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool operator==(const IMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    bool is_square() const { return rows_ == cols_; }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }

    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
    }

    IMat operator*(const IMat& o) const {
        if (cols_ != o.rows_) throw PreconditionError("matrix product dimension mismatch");
        IMat out(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& aik = (*this)(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += aik * o(k, j);
            }
        return out;
    }

    std::vector<Int> operator*(const std::vector<Int>& x) const {
        if (cols_ != x.size()) throw PreconditionError("matrix-vector dimension mismatch");
        std::vector<Int> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0) out[i] += (*this)(i, j) * x[j];
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> a_;
};

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
inline Int exact_determinant(IMat a) {
    if (!a.is_square()) throw PreconditionError("determinant requires a square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;  // division is exact
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

struct Signature {
    long long positive = 0;
    long long negative = 0;
    long long zero = 0;

    bool operator==(const Signature&) const = default;
    long long rank() const { return positive + negative; }
};

/// Exact signature of a symmetric integer matrix via rational LDL^T with
/// symmetric pivoting. Diagonal pivots are chosen by largest absolute value,
/// then lowest index; when the whole remaining diagonal vanishes, a nonzero
/// off-diagonal entry yields a hyperbolic 2x2 block contributing (+1, -1).
inline Signature exact_signature(const IMat& m) {
    if (!m.is_symmetric()) throw PreconditionError("signature requires a symmetric matrix");
    const std::size_t n = m.rows();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(m(i, j));

    auto sym_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        a[i].swap(a[j]);
        for (std::size_t r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
    };

    Signature sig;
    std::size_t lo = 0;
    while (lo < n) {
        std::size_t best = n;
        for (std::size_t i = lo; i < n; ++i) {
            if (a[i][i] == 0) continue;
            if (best == n || abs(a[i][i]) > abs(a[best][best])) best = i;
        }
        if (best != n) {
            sym_swap(lo, best);
            const Rat p = a[lo][lo];
            if (p > 0)
                ++sig.positive;
            else
                ++sig.negative;
            const std::vector<Rat> row = a[lo];
            for (std::size_t i = lo + 1; i < n; ++i) {
                if (a[i][lo] == 0) continue;
                const Rat f = a[i][lo] / p;
                for (std::size_t j = lo + 1; j < n; ++j) a[i][j] -= f * row[j];
            }
            ++lo;
            continue;
        }
        // Remaining diagonal is zero; look for an off-diagonal pivot.
        std::size_t bi = n, bj = n;
        for (std::size_t i = lo; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (a[i][j] == 0) continue;
                if (bi == n || abs(a[i][j]) > abs(a[bi][bj])) {
                    bi = i;
                    bj = j;
                }
            }
        if (bi == n) {
            sig.zero += static_cast<long long>(n - lo);
            break;
        }
        sym_swap(lo, bi);
        sym_swap(lo + 1, bj);
        const Rat p = a[lo][lo + 1];
        ++sig.positive;
        ++sig.negative;
        const std::vector<Rat> r0 = a[lo];
        const std::vector<Rat> r1 = a[lo + 1];
        for (std::size_t i = lo + 2; i < n; ++i) {
            const Rat g = a[i][lo];
            const Rat h = a[i][lo + 1];
            if (g == 0 && h == 0) continue;
            for (std::size_t j = lo + 2; j < n; ++j) a[i][j] -= (g * r1[j] + h * r0[j]) / p;
        }
        lo += 2;
    }
    return sig;
}

/// Smith normal form u * a * v = d with unimodular u, v; the diagonal of d
/// holds the invariant factors d_1 | d_2 | ... >= 0.
struct SmithResult {
    IMat d;
    IMat u;
    IMat v;
    std::size_t rank = 0;

    std::vector<Int> invariant_factors() const {
        std::vector<Int> out;
        for (std::size_t i = 0; i < rank; ++i) out.push_back(d(i, i));
        return out;
    }
};

inline SmithResult smith_normal_form(IMat a, const CancelFn& cancel = {}) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    IMat u = IMat::identity(m);
    IMat v = IMat::identity(n);

    auto row_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
        if (q == 0) return;
        for (std::size_t c = 0; c < n; ++c) a(dst, c) -= q * a(src, c);
        for (std::size_t c = 0; c < m; ++c) u(dst, c) -= q * u(src, c);
    };
    auto col_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
        if (q == 0) return;
        for (std::size_t r = 0; r < m; ++r) a(r, dst) -= q * a(r, src);
        for (std::size_t r = 0; r < n; ++r) v(r, dst) -= q * v(r, src);
    };
    auto swap_rows = [&](std::size_t i, std::size_t j) {
        a.swap_rows(i, j);
        u.swap_rows(i, j);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        a.swap_cols(i, j);
        v.swap_cols(i, j);
    };

    std::size_t t = 0;
    std::size_t steps = 0;
    while (t < m && t < n) {
        if (cancel && cancel()) throw Cancelled();
        // Smallest nonzero entry of the trailing block becomes the pivot.
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                if (a(i, j) == 0) continue;
                if (pi == m || abs(a(i, j)) < abs(a(pi, pj))) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi == m) break;
        swap_rows(t, pi);
        swap_cols(t, pj);

        bool dirty = true;
        while (dirty) {
            if (cancel && ++steps % 64 == 0 && cancel()) throw Cancelled();
            dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a(i, t) == 0) continue;
                const Int q = a(i, t) / a(t, t);
                row_sub(i, t, q);
                if (a(i, t) != 0) {
                    swap_rows(t, i);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a(t, j) == 0) continue;
                const Int q = a(t, j) / a(t, t);
                col_sub(j, t, q);
                if (a(t, j) != 0) {
                    swap_cols(t, j);
                    dirty = true;
                }
            }
            if (!dirty) {
                // Enforce divisibility of the trailing block by the pivot.
                for (std::size_t i = t + 1; i < m && !dirty; ++i)
                    for (std::size_t j = t + 1; j < n && !dirty; ++j)
                        if (a(i, j) % a(t, t) != 0) {
                            row_sub(t, i, Int(-1));  // add row i to row t
                            dirty = true;
                        }
            }
        }
        ++t;
    }
    for (std::size_t k = 0; k < t; ++k)
        if (a(k, k) < 0) {
            for (std::size_t c = 0; c < n; ++c) a(k, c) = -a(k, c);
            for (std::size_t c = 0; c < m; ++c) u(k, c) = -u(k, c);
        }
    return SmithResult{std::move(a), std::move(u), std::move(v), t};
}

/// Basis of the integer kernel of a, as columns. The result spans
/// ker(a) & Z^n exactly (the kernel of an integer matrix is saturated).
inline IMat kernel_basis(const IMat& a, const CancelFn& cancel = {}) {
    const SmithResult s = smith_normal_form(a, cancel);
    const std::size_t n = a.cols();
    IMat k(n, n - s.rank);
    for (std::size_t j = s.rank; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) k(i, j - s.rank) = s.v(i, j);
    return k;
}

inline std::size_t exact_rank(const IMat& a, const CancelFn& cancel = {}) {
    return smith_normal_form(a, cancel).rank;
}

/// Solves basis * x = target over the integers, where the columns of basis
/// are independent. Returns nullopt when no integral solution exists.
inline std::optional<std::vector<Int>> solve_in_column_span(const SmithResult& snf,
                                                            const IMat& basis,
                                                            const std::vector<Int>& target) {
    const std::size_t n = basis.rows();
    const std::size_t r = basis.cols();
    if (target.size() != n) throw PreconditionError("solve dimension mismatch");
    const std::vector<Int> w = snf.u * target;
    std::vector<Int> y(r, 0);
    for (std::size_t i = 0; i < snf.rank; ++i) {
        if (w[i] % snf.d(i, i) != 0) return std::nullopt;
        y[i] = w[i] / snf.d(i, i);
    }
    for (std::size_t i = snf.rank; i < n; ++i)
        if (w[i] != 0) return std::nullopt;
    std::vector<Int> x = snf.v * y;
    if (basis * x != target) return std::nullopt;
    return x;
}

}  // namespace polync
