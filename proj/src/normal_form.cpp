#include "cryst/normal_form.hpp"

#include <limits>
#include <stdexcept>

namespace cryst {

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void negate_row(IntMatrix& m, std::size_t a) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) = -m(a, j);
}

// row[a] += f * row[b]
void add_row(IntMatrix& m, std::size_t a, std::size_t b, const Int& f) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) += f * m(b, j);
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

void negate_col(IntMatrix& m, std::size_t a) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, a) = -m(i, a);
}

// col[a] += f * col[b]
void add_col(IntMatrix& m, std::size_t a, std::size_t b, const Int& f) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, a) += f * m(i, b);
}

}  // namespace

HnfResult hnf(const IntMatrix& A) {
    const std::size_t m = A.rows(), n = A.cols();
    IntMatrix H(A), U = IntMatrix::identity(m);
    std::size_t r = 0;
    std::vector<std::size_t> pivot_cols;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        // Euclid on column c below row r until a single nonzero entry remains
        for (;;) {
            std::size_t best = m;
            for (std::size_t i = r; i < m; ++i) {
                if (H(i, c) == 0) continue;
                if (best == m || abs_int(H(i, c)) < abs_int(H(best, c))) best = i;
            }
            if (best == m) break;  // column has no pivot
            swap_rows(H, r, best);
            swap_rows(U, r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (H(i, c) == 0) continue;
                Int q = H(i, c) / H(r, c);  // truncating; remainder shrinks
                if (q != 0) {
                    add_row(H, i, r, -q);
                    add_row(U, i, r, -q);
                }
                if (H(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (r < m && H(r, c) != 0) {
            if (H(r, c) < 0) {
                negate_row(H, r);
                negate_row(U, r);
            }
            pivot_cols.push_back(c);
            ++r;
        }
    }
    // reduce entries above each pivot into [0, pivot)
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) {
        std::size_t c = pivot_cols[k];
        for (std::size_t i = 0; i < k; ++i) {
            Int q = floor_div(H(i, c), H(k, c));
            if (q != 0) {
                add_row(H, i, k, -q);
                add_row(U, i, k, -q);
            }
        }
    }
    return {std::move(H), std::move(U)};
}

IntMatrix column_hnf(const IntMatrix& A) {
    return hnf(A.transpose()).H.transpose();
}

SnfResult snf(const IntMatrix& A) {
    const std::size_t m = A.rows(), n = A.cols();
    const std::size_t nmin = std::min(m, n);
    IntMatrix D(A), U = IntMatrix::identity(m), V = IntMatrix::identity(n);

    auto locate_min = [&](std::size_t t, std::size_t& bi, std::size_t& bj) -> bool {
        bool found = false;
        Int best;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                if (D(i, j) == 0) continue;
                Int a = abs_int(D(i, j));
                if (!found || a < best) {
                    found = true;
                    best = a;
                    bi = i;
                    bj = j;
                }
            }
        return found;
    };

    auto lone = [&](std::size_t t) {
        for (std::size_t i = t + 1; i < m; ++i)
            if (D(i, t) != 0) return false;
        for (std::size_t j = t + 1; j < n; ++j)
            if (D(t, j) != 0) return false;
        return true;
    };

    std::size_t t = 0;
    for (; t < nmin; ++t) {
        std::size_t bi, bj;
        if (!locate_min(t, bi, bj)) break;  // remaining block is zero
        swap_rows(D, t, bi);
        swap_rows(U, t, bi);
        swap_cols(D, t, bj);
        swap_cols(V, t, bj);
        for (;;) {
            while (!lone(t)) {
                // minimal-|entry| pivot keeps intermediate growth moderate
                locate_min(t, bi, bj);
                swap_rows(D, t, bi);
                swap_rows(U, t, bi);
                swap_cols(D, t, bj);
                swap_cols(V, t, bj);
                for (std::size_t i = t + 1; i < m; ++i) {
                    if (D(i, t) == 0) continue;
                    Int q = D(i, t) / D(t, t);
                    if (q != 0) {
                        add_row(D, i, t, -q);
                        add_row(U, i, t, -q);
                    }
                }
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (D(t, j) == 0) continue;
                    Int q = D(t, j) / D(t, t);
                    if (q != 0) {
                        add_col(D, j, t, -q);
                        add_col(V, j, t, -q);
                    }
                }
            }
            // divisibility: fold in a row containing a non-multiple and retry
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        add_row(D, t, i, 1);
                        add_row(U, t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (D(t, t) < 0) {
            negate_row(D, t);
            negate_row(U, t);
        }
    }
    SnfResult r{std::move(D), std::move(U), std::move(V), 0};
    for (std::size_t i = 0; i < nmin; ++i)
        if (r.D(i, i) != 0) ++r.rank;
    return r;
}

std::vector<Int> SnfResult::divisors() const {
    std::vector<Int> d;
    for (std::size_t i = 0; i < rank; ++i) d.push_back(D(i, i));
    return d;
}

std::vector<Int> SnfResult::nontrivial_divisors() const {
    std::vector<Int> d;
    for (std::size_t i = 0; i < rank; ++i)
        if (D(i, i) > 1) d.push_back(D(i, i));
    return d;
}

std::size_t rank(const IntMatrix& A) { return snf(A).rank; }

std::optional<IntegerSolution> solve_integer(const IntMatrix& A, const IntVector& b) {
    if (A.rows() != b.size()) throw std::invalid_argument("solve_integer shape mismatch");
    const std::size_t n = A.cols();
    SnfResult s = snf(A);
    IntVector c = s.U * b;
    IntVector y(n);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        const Int& d = (i < std::min(A.rows(), n)) ? s.D(i, i) : Int(0);
        if (d != 0) {
            if (c[i] % d != 0) return std::nullopt;
            y[i] = c[i] / d;
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    IntVector x = s.V * y;
    IntMatrix ker(n, n - s.rank);
    for (std::size_t j = s.rank; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) ker(i, j - s.rank) = s.V(i, j);
    return IntegerSolution{std::move(x), column_hnf(ker)};
}

}  // namespace cryst
