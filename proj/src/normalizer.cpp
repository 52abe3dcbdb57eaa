#include "cryst/normalizer.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>

#include "cryst/errors.hpp"
#include "cryst/forms.hpp"
#include "cryst/normal_form.hpp"

namespace cryst {

std::string to_string(NormalizerStatus s) {
    switch (s) {
        case NormalizerStatus::certified: return "certified";
        case NormalizerStatus::heuristic_complete: return "heuristic-complete";
        case NormalizerStatus::infinite_or_cap_exceeded: return "infinite-or-cap-exceeded";
    }
    return "?";
}

namespace {

bool scalar_only(const FinMatGroup& G) {
    for (const IntMatrix& g : G.elements()) {
        bool plus = g.is_identity(), minus = (-g).is_identity();
        if (!plus && !minus) return false;
    }
    return true;
}

NormalizerResult close_found(const FinMatGroup& G, std::vector<IntMatrix> found,
                             std::size_t max_order, NormalizerStatus ok_status,
                             const std::string& backend, Int bound) {
    for (const IntMatrix& g : G.generators()) found.push_back(g);
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    NormalizerResult res;
    res.backend = backend;
    res.search_bound_used = std::move(bound);
    try {
        std::vector<IntMatrix> gens = find_generators(G.dim(), found, max_order);
        FinMatGroup closed = FinMatGroup::closure(gens, max_order);
        // the closure can add elements beyond the found set; all of them
        // normalize G (products of normalizing elements)
        res.group = std::move(closed);
        res.status = ok_status;
    } catch (const OrderCapExceeded&) {
        res.group = G;
        res.status = NormalizerStatus::infinite_or_cap_exceeded;
    }
    return res;
}

// ---- int64 fast path for the brute-force search ----------------------------

using i64 = std::int64_t;
using SmallMat = std::vector<i64>;  // row-major n x n

i64 small_det(const SmallMat& a, std::size_t n) {
    if (n == 1) return a[0];
    if (n == 2) return a[0] * a[3] - a[1] * a[2];
    if (n == 3)
        return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
               a[2] * (a[3] * a[7] - a[4] * a[6]);
    throw std::logic_error("small_det supports n <= 3");
}

// adjugate, so that adj(X) * X = det(X) * I
SmallMat small_adjugate(const SmallMat& a, std::size_t n) {
    SmallMat r(n * n);
    if (n == 1) {
        r[0] = 1;
        return r;
    }
    if (n == 2) {
        r = {a[3], -a[1], -a[2], a[0]};
        return r;
    }
    auto e = [&](std::size_t i, std::size_t j) { return a[i * 3 + j]; };
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            std::size_t r1 = (i + 1) % 3, r2 = (i + 2) % 3;
            std::size_t c1 = (j + 1) % 3, c2 = (j + 2) % 3;
            // cofactor transpose; cyclic index choice absorbs the sign
            r[j * 3 + i] = e(r1, c1) * e(r2, c2) - e(r1, c2) * e(r2, c1);
        }
    return r;
}

SmallMat small_mul(const SmallMat& a, const SmallMat& b, std::size_t n) {
    SmallMat r(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            i64 v = a[i * n + k];
            if (!v) continue;
            for (std::size_t j = 0; j < n; ++j) r[i * n + j] += v * b[k * n + j];
        }
    return r;
}

std::vector<IntMatrix> bruteforce_search_small(const FinMatGroup& G, long B) {
    const std::size_t n = G.dim();
    std::vector<SmallMat> elems, gens;
    for (const IntMatrix& m : G.elements()) {
        SmallMat s(n * n);
        for (std::size_t i = 0; i < n * n; ++i) s[i] = static_cast<i64>(m.entries()[i]);
        elems.push_back(std::move(s));
    }
    std::sort(elems.begin(), elems.end());
    for (const IntMatrix& m : G.generators()) {
        SmallMat s(n * n);
        for (std::size_t i = 0; i < n * n; ++i) s[i] = static_cast<i64>(m.entries()[i]);
        gens.push_back(std::move(s));
    }

    std::vector<IntMatrix> hits;
    SmallMat x(n * n, -B);
    const std::size_t slots = n * n;
    for (;;) {
        i64 d = small_det(x, n);
        if (d == 1 || d == -1) {
            SmallMat adj = small_adjugate(x, n);
            SmallMat xinv(n * n);
            for (std::size_t i = 0; i < slots; ++i) xinv[i] = d * adj[i];
            bool ok = true;
            for (const SmallMat& g : gens) {
                SmallMat conj = small_mul(small_mul(x, g, n), xinv, n);
                if (!std::binary_search(elems.begin(), elems.end(), conj)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                IntMatrix m(n, n);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) m(i, j) = x[i * n + j];
                hits.push_back(std::move(m));
            }
        }
        std::size_t k = 0;
        while (k < slots && x[k] == B) x[k++] = -B;
        if (k == slots) break;
        ++x[k];
    }
    return hits;
}

std::vector<IntMatrix> bruteforce_search_generic(const FinMatGroup& G, long B) {
    const std::size_t n = G.dim();
    std::vector<IntMatrix> hits;
    IntMatrix x(n, n);
    std::vector<long> odo(n * n, -B);
    for (;;) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) x(i, j) = odo[i * n + j];
        if (x.is_unimodular() && normalizes(G, x)) hits.push_back(x);
        std::size_t k = 0;
        while (k < odo.size() && odo[k] == B) odo[k++] = -B;
        if (k == odo.size()) break;
        ++odo[k];
    }
    return hits;
}

}  // namespace

NormalizerResult normalizer_bruteforce(const FinMatGroup& G, long entry_bound,
                                       std::size_t max_order) {
    if (entry_bound < 1) throw std::invalid_argument("entry bound must be >= 1");
    const std::size_t n = G.dim();
    if (n == 0) {
        NormalizerResult res;
        res.group = G;
        res.status = NormalizerStatus::certified;
        res.backend = "brute";
        return res;
    }
    Int max_entry = 0;
    for (const IntMatrix& m : G.elements())
        for (const Int& v : m.entries()) max_entry = std::max(max_entry, abs_int(v));
    bool small = n <= 3 && entry_bound <= 16 && max_entry <= 1000;
    std::vector<IntMatrix> hits =
        small ? bruteforce_search_small(G, entry_bound) : bruteforce_search_generic(G, entry_bound);
    return close_found(G, std::move(hits), max_order, NormalizerStatus::heuristic_complete,
                       "brute", Int(entry_bound));
}

namespace {

// all integral forms in the span of `basis` whose diagonal entries lie in
// [1, diag_bound] and off-diagonal entries in [-diag_bound, diag_bound],
// positive definite, with the prescribed determinant
std::vector<SymForm> candidate_forms(const std::vector<SymForm>& basis, const Int& diag_bound,
                                     const Int& target_det) {
    const std::size_t n = basis.front().dim();
    std::vector<std::pair<std::size_t, std::size_t>> pos;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k; l < n; ++l) pos.emplace_back(k, l);
    const std::size_t P = pos.size(), K = basis.size();

    // vectorized basis, echelonized so coordinates resolve triangularly
    IntMatrix B(P, K);
    for (std::size_t j = 0; j < K; ++j)
        for (std::size_t u = 0; u < P; ++u) B(u, j) = basis[j](pos[u].first, pos[u].second);
    B = column_hnf(B);
    std::vector<std::size_t> pivot_row(K);
    for (std::size_t j = 0; j < K; ++j) {
        std::size_t r = 0;
        while (r < P && B(r, j) == 0) ++r;
        if (r == P) throw std::logic_error("degenerate form-space basis");
        pivot_row[j] = r;
    }

    std::vector<SymForm> out;
    std::vector<Int> coord(K);
    auto rec = [&](auto&& self, std::size_t j) -> void {
        if (j == K) {
            IntMatrix F(n, n);
            for (std::size_t u = 0; u < P; ++u) {
                Int v = 0;
                for (std::size_t k = 0; k < K; ++k) v += coord[k] * B(u, k);
                F(pos[u].first, pos[u].second) = v;
                F(pos[u].second, pos[u].first) = v;
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (F(i, i) < 1 || F(i, i) > diag_bound) return;
                for (std::size_t l = 0; l < n; ++l)
                    if (abs_int(F(i, l)) > diag_bound) return;
            }
            SymForm f(std::move(F));
            if (f.is_positive_definite() && f.matrix().det() == target_det)
                out.push_back(std::move(f));
            return;
        }
        std::size_t r = pivot_row[j];
        bool diag = pos[r].first == pos[r].second;
        Int partial = 0;
        for (std::size_t k = 0; k < j; ++k) partial += coord[k] * B(r, k);
        const Int& piv = B(r, j);
        Int low = diag ? Int(1) : -diag_bound, high = diag_bound;
        // pivot entry value = partial + coord[j]*piv within [low, high]
        Int clo = floor_div(low - partial + piv - 1, piv);   // ceil for piv > 0
        Int chi = floor_div(high - partial, piv);
        for (Int v = clo; v <= chi; ++v) {
            coord[j] = v;
            self(self, j + 1);
        }
        coord[j] = 0;
    };
    rec(rec, 0);
    return out;
}

}  // namespace

NormalizerResult normalizer_formbased(const FinMatGroup& G, const Rat& diag_bound_factor,
                                      std::size_t max_order) {
    const std::size_t n = G.dim();
    if (n == 0) {
        NormalizerResult res;
        res.group = G;
        res.status = NormalizerStatus::certified;
        res.backend = "form";
        return res;
    }
    if (scalar_only(G)) {
        if (n == 1) {
            NormalizerResult res;
            res.group = FinMatGroup::closure({IntMatrix{{-1}}});
            res.status = NormalizerStatus::certified;
            res.backend = "form";
            return res;
        }
        throw CentralPointGroup(
            "point group lies in {+-I}: its GL(n,Z)-normalizer is infinite");
    }

    std::vector<SymForm> space = invariant_form_space(G);
    SymForm q0 = average_form(G);
    IntMatrix q0m = q0.matrix();
    Int content = q0m.content();
    if (content > 1) q0m = q0m.divided_by(content);
    SymForm q0n(q0m);  // isometry groups are scale-invariant

    if (space.size() == 1) {
        std::vector<IntMatrix> keep;
        for (IntMatrix& X : isometries(q0n, q0n))
            if (normalizes(G, X)) keep.push_back(std::move(X));
        NormalizerResult res;
        res.group = FinMatGroup::from_elements(n, find_generators(n, keep), keep);
        res.status = NormalizerStatus::certified;
        res.backend = "form";
        return res;
    }

    Int maxdiag = q0n(0, 0);
    for (std::size_t j = 1; j < n; ++j) maxdiag = std::max(maxdiag, q0n(j, j));
    Int diag_bound = floor_rat(diag_bound_factor * Rat(maxdiag));
    Int target_det = q0n.matrix().det();

    std::vector<IntMatrix> found;
    for (IntMatrix& X : isometries(q0n, q0n))
        if (normalizes(G, X)) found.push_back(std::move(X));
    for (const SymForm& q : candidate_forms(space, diag_bound, target_det)) {
        if (q == q0n) continue;
        // normalizing isometries onto a fixed target form a single coset of
        // Aut(q0n) ∩ N, so one representative regenerates all of them in the
        // closure below
        for (IntMatrix& X : isometries(q0n, q)) {
            if (normalizes(G, X)) {
                found.push_back(std::move(X));
                break;
            }
        }
    }
    return close_found(G, std::move(found), max_order, NormalizerStatus::heuristic_complete,
                       "form", diag_bound);
}

NormalizerResult normalizer(const FinMatGroup& G, const NormalizerConfig& config) {
    switch (config.backend) {
        case NormalizerConfig::Backend::brute:
            return normalizer_bruteforce(G, config.brute_entry_bound, config.max_order);
        case NormalizerConfig::Backend::form:
            return normalizer_formbased(G, config.diag_bound_factor, config.max_order);
        case NormalizerConfig::Backend::both: {
            NormalizerResult form = normalizer_formbased(G, config.diag_bound_factor,
                                                         config.max_order);
            NormalizerResult brute =
                normalizer_bruteforce(G, config.brute_entry_bound, config.max_order);
            if (form.finite() && brute.finite()) {
                for (const IntMatrix& x : brute.group.elements())
                    if (!form.group.contains(x))
                        throw std::logic_error(
                            "brute-force normalizer found an element missing from the "
                            "form-based result");
            }
            form.backend = "both";
            return form;
        }
    }
    throw std::logic_error("unknown backend");
}

}  // namespace cryst
