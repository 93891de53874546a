#pragma once

// Smith and Hermite normal forms over the integers, plus the solvers built on
// them. Everything here is exact; no operation can overflow.

#include "mixedab/matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mixedab {

struct SmithForm {
    IntMatrix S;  ///< diagonal, d_1 | d_2 | ..., d_i >= 0
    IntMatrix U;  ///< unimodular, rows x rows
    IntMatrix V;  ///< unimodular, cols x cols; U * A * V == S
    IntMatrix V_inverse;
    std::size_t rank = 0;

    BigInt diag(std::size_t i) const { return i < std::min(S.rows(), S.cols()) ? S(i, i) : BigInt(0); }
};

namespace detail {

// Column op on S and V: col[dst] += f * col[src]; V^{-1} gets the inverse row op.
inline void snf_col_op(SmithForm& f, std::size_t dst, std::size_t src, const BigInt& k) {
    f.S.add_col(dst, src, k);
    f.V.add_col(dst, src, k);
    f.V_inverse.add_row(src, dst, -k);
}

inline void snf_swap_cols(SmithForm& f, std::size_t a, std::size_t b) {
    f.S.swap_cols(a, b);
    f.V.swap_cols(a, b);
    f.V_inverse.swap_rows(a, b);
}

inline void snf_row_op(SmithForm& f, std::size_t dst, std::size_t src, const BigInt& k) {
    f.S.add_row(dst, src, k);
    f.U.add_row(dst, src, k);
}

inline void snf_swap_rows(SmithForm& f, std::size_t a, std::size_t b) {
    f.S.swap_rows(a, b);
    f.U.swap_rows(a, b);
}

}  // namespace detail

/// Smith normal form with transforms. Pivots on the entry of least absolute
/// value in the trailing block.
inline SmithForm snf(const IntMatrix& A) {
    SmithForm f{A, IntMatrix::identity(A.rows()), IntMatrix::identity(A.cols()),
                IntMatrix::identity(A.cols()), 0};
    const std::size_t m = A.rows();
    const std::size_t n = A.cols();
    const std::size_t lim = std::min(m, n);
    for (std::size_t t = 0; t < lim; ++t) {
        for (;;) {
            // least nonzero |entry| in the trailing block
            std::size_t pi = m, pj = n;
            BigInt best;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    const BigInt& v = f.S(i, j);
                    if (v == 0) continue;
                    BigInt a = abs(v);
                    if (pi == m || a < best) {
                        best = a;
                        pi = i;
                        pj = j;
                        if (best == 1) break;
                    }
                }
            if (pi == m) {
                f.rank = t;
                return f;
            }
            detail::snf_swap_rows(f, t, pi);
            detail::snf_swap_cols(f, t, pj);

            bool clean = true;
            const BigInt piv = f.S(t, t);
            for (std::size_t i = t + 1; i < m; ++i) {
                if (f.S(i, t) == 0) continue;
                detail::snf_row_op(f, i, t, -(f.S(i, t) / piv));
                if (f.S(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (f.S(t, j) == 0) continue;
                detail::snf_col_op(f, j, t, -(f.S(t, j) / piv));
                if (f.S(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // divisibility of the trailing block by the pivot
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (f.S(i, j) % piv != 0) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            detail::snf_row_op(f, t, bad, 1);
        }
        if (f.S(t, t) < 0) {
            f.S.negate_row(t);
            f.U.negate_row(t);
        }
    }
    f.rank = lim;
    for (std::size_t t = 0; t < lim; ++t) {
        if (f.S(t, t) == 0) {
            f.rank = t;
            break;
        }
    }
    return f;
}

/// Integer solution of A x = b, or nullopt when none exists.
inline std::optional<IntVector> solve_linear(const IntMatrix& A, const IntVector& b) {
    if (b.size() != A.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
    const SmithForm f = snf(A);
    const IntVector c = f.U.apply(b);
    IntVector z(A.cols());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < f.rank) {
            const BigInt& d = f.S(i, i);
            if (c[i] % d != 0) return std::nullopt;
            z[i] = c[i] / d;
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return f.V.apply(z);
}

/// Solvability of A x = b over the localization Z_(p).
inline bool solvable_locally(const IntMatrix& A, const IntVector& b, std::uint64_t p) {
    if (b.size() != A.rows()) throw std::invalid_argument("solvable_locally: dimension mismatch");
    const SmithForm f = snf(A);
    const IntVector c = f.U.apply(b);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < f.rank) {
            if (c[i] == 0) continue;
            // valuations are bounded by the bit length of the entries
            const unsigned cap = static_cast<unsigned>(msb(abs(c[i])) + msb(abs(f.S(i, i))) + 2);
            if (valuation(c[i], p, cap) < valuation(f.S(i, i), p, cap)) return false;
        } else if (c[i] != 0) {
            return false;
        }
    }
    return true;
}

/// Invariant factors of the cokernel Z^cols / rowspace(relations): nonunit
/// factors in divisibility order followed by one 0 per free generator.
inline std::vector<BigInt> canonical_form(const IntMatrix& relations) {
    const SmithForm f = snf(relations);
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < f.rank; ++i)
        if (f.S(i, i) != 1) out.push_back(f.S(i, i));
    for (std::size_t i = f.rank; i < relations.cols(); ++i) out.emplace_back(0);
    return out;
}

/// Basis (as rows) of { y : y * A = 0 }.
inline IntMatrix left_kernel(const IntMatrix& A) {
    const SmithForm f = snf(A);
    IntMatrix k(A.rows() - f.rank, A.rows());
    for (std::size_t i = f.rank; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.rows(); ++j) k(i - f.rank, j) = f.U(i, j);
    return k;
}

/// Row-style Hermite normal form of the lattice spanned by the rows of A:
/// pivots positive with strictly increasing columns, entries above a pivot
/// reduced into [0, pivot). Zero rows are dropped.
inline IntMatrix hnf(const IntMatrix& A) {
    IntMatrix H = A;
    const std::size_t m = H.rows();
    const std::size_t n = H.cols();
    std::size_t r = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        for (;;) {
            std::size_t best = m;
            for (std::size_t i = r; i < m; ++i) {
                if (H(i, c) == 0) continue;
                if (best == m || abs(H(i, c)) < abs(H(best, c))) best = i;
            }
            if (best == m) break;
            H.swap_rows(r, best);
            bool done = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (H(i, c) == 0) continue;
                H.add_row(i, r, -(H(i, c) / H(r, c)));
                if (H(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (H(r, c) == 0) continue;
        if (H(r, c) < 0) H.negate_row(r);
        for (std::size_t i = 0; i < r; ++i) H.add_row(i, r, -div_floor(H(i, c), H(r, c)));
        pivots.push_back(c);
        ++r;
    }
    IntMatrix out(r, n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = H(i, j);
    return out;
}

/// Saturation { v : k v in rowspace(A) for some k != 0 }, as a row basis.
inline IntMatrix saturation(const IntMatrix& A) {
    const SmithForm f = snf(A);
    IntMatrix out(f.rank, A.cols());
    for (std::size_t i = 0; i < f.rank; ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) out(i, j) = f.V_inverse(i, j);
    return out;
}

/// Vertical concatenation.
inline IntMatrix stack(const IntMatrix& top, const IntMatrix& bottom) {
    if (top.rows() == 0) return bottom;
    if (bottom.rows() == 0) return top;
    if (top.cols() != bottom.cols()) throw std::invalid_argument("stack: column mismatch");
    IntMatrix out(top.rows() + bottom.rows(), top.cols());
    for (std::size_t i = 0; i < top.rows(); ++i)
        for (std::size_t j = 0; j < top.cols(); ++j) out(i, j) = top(i, j);
    for (std::size_t i = 0; i < bottom.rows(); ++i)
        for (std::size_t j = 0; j < top.cols(); ++j) out(top.rows() + i, j) = bottom(i, j);
    return out;
}

}  // namespace mixedab
