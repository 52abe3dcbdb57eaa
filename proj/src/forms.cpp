#include "cryst/forms.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "cryst/normal_form.hpp"

namespace cryst {

namespace {

bool leading_minors_positive(const IntMatrix& m) {
    for (std::size_t k = 1; k <= m.rows(); ++k) {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(i, j);
        if (sub.det() <= 0) return false;
    }
    return true;
}

}  // namespace

SymForm::SymForm(IntMatrix m) : mat_(std::move(m)) {
    if (!mat_.is_symmetric()) throw std::invalid_argument("form matrix is not symmetric");
    positive_definite_ = leading_minors_positive(mat_);
}

Int SymForm::evaluate(const IntVector& v) const {
    if (v.size() != dim()) throw std::invalid_argument("vector dimension mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < dim(); ++j) s += v[i] * mat_(i, j) * v[j];
    }
    return s;
}

std::vector<SymForm> invariant_form_space(const FinMatGroup& G) {
    const std::size_t n = G.dim();
    // unknowns: entries F_kl with k <= l
    std::vector<std::pair<std::size_t, std::size_t>> pos;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k; l < n; ++l) pos.emplace_back(k, l);
    const std::size_t K = pos.size();

    const auto& gens = G.generators();
    IntMatrix M(K * gens.size(), K);
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        const IntMatrix& g = gens[gi];
        for (std::size_t r = 0; r < K; ++r) {
            auto [a, b] = pos[r];
            for (std::size_t u = 0; u < K; ++u) {
                auto [k, l] = pos[u];
                // coefficient of F_kl in (g^T F g - F)_ab
                Int coeff = g(k, a) * g(l, b);
                if (k != l) coeff += g(l, a) * g(k, b);
                if (k == a && l == b) coeff -= 1;
                M(gi * K + r, u) = coeff;
            }
        }
    }

    SnfResult s = snf(M);
    IntMatrix ker(K, K - s.rank);
    for (std::size_t j = s.rank; j < K; ++j)
        for (std::size_t i = 0; i < K; ++i) ker(i, j - s.rank) = s.V(i, j);
    ker = column_hnf(ker);

    std::vector<SymForm> basis;
    for (std::size_t j = 0; j < ker.cols(); ++j) {
        IntMatrix F(n, n);
        for (std::size_t u = 0; u < K; ++u) {
            auto [k, l] = pos[u];
            F(k, l) = ker(u, j);
            F(l, k) = ker(u, j);
        }
        basis.emplace_back(std::move(F));
    }
    return basis;
}

SymForm average_form(const FinMatGroup& G) {
    IntMatrix acc(G.dim(), G.dim());
    for (const IntMatrix& g : G.elements()) acc = acc + g.transpose() * g;
    return SymForm(std::move(acc));
}

namespace {

// integer interval {x : (x + s)^2 <= R}; empty when lo > hi
std::pair<Int, Int> quadratic_range(const Rat& s, const Rat& R) {
    if (R < 0) return {1, 0};
    Int fs = isqrt(num(R) * den(R)) / den(R);  // floor(sqrt(R))
    auto fits = [&](const Int& x) {
        Rat t = Rat(x) + s;
        return t * t <= R;
    };
    Int hi = floor_rat(Rat(fs) - s);
    if (fits(hi + 1)) ++hi;
    Int lo = ceil_rat(Rat(-fs) - s);
    if (fits(lo - 1)) --lo;
    return {lo, hi};
}

struct Ldl {
    std::vector<Rat> d;
    RatMatrix r;  // unit upper triangular
};

Ldl ldl_decompose(const SymForm& Q) {
    const std::size_t n = Q.dim();
    Ldl out{std::vector<Rat>(n), RatMatrix(n, n)};
    for (std::size_t i = 0; i < n; ++i) out.r(i, i) = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Rat di = Rat(Q(i, i));
        for (std::size_t k = 0; k < i; ++k) di -= out.d[k] * out.r(k, i) * out.r(k, i);
        out.d[i] = di;
        for (std::size_t j = i + 1; j < n; ++j) {
            Rat v = Rat(Q(i, j));
            for (std::size_t k = 0; k < i; ++k) v -= out.d[k] * out.r(k, i) * out.r(k, j);
            out.r(i, j) = v / di;
        }
    }
    return out;
}

}  // namespace

std::vector<IntVector> short_vectors(const SymForm& Q, const Int& c) {
    if (!Q.is_positive_definite())
        throw std::invalid_argument("short_vectors requires a positive definite form");
    const std::size_t n = Q.dim();
    std::vector<IntVector> out;
    if (n == 0 || c < 1) return out;
    Ldl ldl = ldl_decompose(Q);

    IntVector x(n);
    // enumerate coordinates from the last one down
    auto rec = [&](auto&& self, std::size_t level, const Rat& budget) -> void {
        std::size_t i = level - 1;
        Rat s = 0;
        for (std::size_t j = i + 1; j < n; ++j) s += ldl.r(i, j) * Rat(x[j]);
        auto [lo, hi] = quadratic_range(s, budget / ldl.d[i]);
        for (Int v = lo; v <= hi; ++v) {
            x[i] = v;
            if (i == 0) {
                // canonical representative: first nonzero coordinate positive
                std::size_t f = 0;
                while (f < n && x[f] == 0) ++f;
                if (f < n && x[f] > 0) out.push_back(x);
            } else {
                Rat used = ldl.d[i] * (Rat(v) + s) * (Rat(v) + s);
                self(self, i, budget - used);
            }
        }
        x[i] = 0;
    };
    rec(rec, n, Rat(c));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<IntMatrix> isometries(const SymForm& Q1, const SymForm& Q2) {
    if (Q1.dim() != Q2.dim()) throw std::invalid_argument("form dimension mismatch");
    if (!Q1.is_positive_definite() || !Q2.is_positive_definite())
        throw std::invalid_argument("isometries requires positive definite forms");
    const std::size_t n = Q1.dim();
    std::vector<IntMatrix> out;
    if (Q1.matrix().det() != Q2.matrix().det()) return out;
    if (n == 0) {
        out.push_back(IntMatrix(0, 0));
        return out;
    }

    Int maxdiag = Q2(0, 0);
    for (std::size_t j = 1; j < n; ++j) maxdiag = std::max(maxdiag, Q2(j, j));

    // candidates with both signs, plus their Q1-images for fast inner products
    struct Cand {
        IntVector v;
        IntVector qv;
        Int norm;
    };
    std::vector<Cand> cands;
    for (const IntVector& v : short_vectors(Q1, maxdiag)) {
        Cand c{v, Q1.matrix() * v, Q1.evaluate(v)};
        Cand neg = c;
        for (auto& t : neg.v) t = -t;
        for (auto& t : neg.qv) t = -t;
        cands.push_back(std::move(c));
        cands.push_back(std::move(neg));
    }

    std::vector<const Cand*> cols(n, nullptr);
    auto place = [&](auto&& self, std::size_t j) -> void {
        if (j == n) {
            IntMatrix X(n, n);
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t i = 0; i < n; ++i) X(i, k) = cols[k]->v[i];
            out.push_back(std::move(X));
            return;
        }
        for (const Cand& c : cands) {
            if (c.norm != Q2(j, j)) continue;
            bool ok = true;
            for (std::size_t k = 0; k < j && ok; ++k) {
                Int dot = 0;
                for (std::size_t i = 0; i < n; ++i) dot += cols[k]->qv[i] * c.v[i];
                ok = dot == Q2(k, j);
            }
            if (!ok) continue;
            cols[j] = &c;
            self(self, j + 1);
        }
        cols[j] = nullptr;
    };
    place(place, 0);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cryst
