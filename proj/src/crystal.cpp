#include "cryst/crystal.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

#include "cryst/builtins.hpp"
#include "cryst/errors.hpp"

namespace cryst {

CrystGroup CrystGroup::from_data(FinMatGroup point_group, std::vector<RatVector> translations) {
    if (translations.size() != point_group.order())
        throw std::invalid_argument("translation count differs from group order");
    const std::size_t n = point_group.dim();
    for (auto& t : translations) {
        if (t.size() != n) throw std::invalid_argument("translation dimension mismatch");
        t = mod_one(t);
    }
    CrystGroup gamma;
    gamma.point_group_ = std::move(point_group);
    gamma.translations_ = std::move(translations);
    const FinMatGroup& G = gamma.point_group_;

    if (!is_integral(gamma.translations_[G.identity_index()]))
        throw InconsistentVectorSystem("identity carries a nonzero translation");
    for (const Rat& q : gamma.translations_[G.identity_index()])
        if (q != 0) throw InconsistentVectorSystem("identity carries a nonzero translation");

    // checking (element, generator) pairs proves the full cocycle condition
    // by induction on word length
    for (std::size_t i = 0; i < G.order(); ++i) {
        const IntMatrix& x = G.elements()[i];
        for (const IntMatrix& h : G.generators()) {
            std::size_t k = G.index_of(x * h);
            if (k == G.order()) throw std::logic_error("point group not closed");
            RatVector expect =
                mod_one(gamma.translations_[i] + x * gamma.translation_of(h));
            if (expect != gamma.translations_[k])
                throw InconsistentVectorSystem("vector system violates the cocycle condition");
        }
    }
    return gamma;
}

const RatVector& CrystGroup::translation_of(const IntMatrix& g) const {
    std::size_t i = point_group_.index_of(g);
    if (i == point_group_.order())
        throw std::invalid_argument("element not in the point group");
    return translations_[i];
}

std::vector<AffineGen> CrystGroup::affine_generators() const {
    std::vector<AffineGen> gens;
    for (const IntMatrix& g : point_group_.generators())
        gens.emplace_back(g, translation_of(g));
    return gens;
}

CrystGroup make_cryst(std::size_t dim, const std::vector<AffineGen>& affine_gens,
                      std::size_t max_order) {
    for (const auto& [g, t] : affine_gens) {
        if (!g.is_square() || g.rows() != dim)
            throw std::invalid_argument("linear part has wrong dimension");
        if (!g.is_unimodular()) throw std::invalid_argument("linear part is not unimodular");
        if (t.size() != dim) throw std::invalid_argument("translation has wrong dimension");
    }
    std::map<IntMatrix, RatVector> table;
    std::deque<const IntMatrix*> frontier;
    IntMatrix id = IntMatrix::identity(dim);
    auto [it, _] = table.emplace(id, RatVector(dim));
    frontier.push_back(&it->first);
    while (!frontier.empty()) {
        const IntMatrix& x = *frontier.front();
        frontier.pop_front();
        RatVector tx = table.at(x);
        for (const auto& [h, s] : affine_gens) {
            IntMatrix y = x * h;
            RatVector ty = mod_one(tx + x * s);
            auto found = table.find(y);
            if (found != table.end()) {
                if (found->second != ty)
                    throw InconsistentVectorSystem(
                        "two words with the same linear part disagree mod Z^n");
                continue;
            }
            if (table.size() >= max_order) {
                std::ostringstream msg;
                msg << "affine closure exceeds cap " << max_order;
                throw OrderCapExceeded(msg.str());
            }
            auto [pos, __] = table.emplace(std::move(y), std::move(ty));
            frontier.push_back(&pos->first);
        }
    }
    std::vector<IntMatrix> gens, elements;
    for (const auto& [g, t] : affine_gens) gens.push_back(g);
    std::vector<RatVector> translations;
    for (const auto& [g, t] : table) {
        elements.push_back(g);
        translations.push_back(t);  // std::map iterates in canonical order
    }
    FinMatGroup G = FinMatGroup::from_elements(dim, std::move(gens), std::move(elements));
    return CrystGroup::from_data(std::move(G), std::move(translations));
}

namespace {

// rows (g - I) stacked over the generators
IntMatrix stacked_displacement(const CrystGroup& gamma) {
    const std::size_t n = gamma.dim();
    const auto& gens = gamma.point_group().generators();
    IntMatrix A(gens.size() * n, n);
    for (std::size_t k = 0; k < gens.size(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                A(k * n + i, j) = gens[k](i, j) - (i == j ? 1 : 0);
    return A;
}

}  // namespace

bool center_trivial(const CrystGroup& gamma) {
    return rank(stacked_displacement(gamma)) == gamma.dim();
}

Lattice a0_lattice(const CrystGroup& gamma) {
    if (!center_trivial(gamma))
        throw NotCenterless("a0 lattice requires a group with trivial center");
    IntMatrix A = stacked_displacement(gamma);
    CongruenceSolution sol = solve_congruence(A, RatVector(A.rows()));
    if (!sol.solvable || sol.non_discrete)
        throw std::logic_error("homogeneous congruence must have a discrete solution set");
    return *sol.solution_lattice;
}

std::vector<Int> h1_invariants(const CrystGroup& gamma) {
    return lattice_quotient_invariants(a0_lattice(gamma), Lattice::standard(gamma.dim()));
}

CrystGroup rebase(const FinMatGroup& point_group, const std::vector<RatVector>& translations,
                  const Lattice& L) {
    if (translations.size() != point_group.order())
        throw std::invalid_argument("translation count differs from group order");
    const std::size_t n = point_group.dim();
    RatMatrix B = L.basis();
    RatMatrix Binv = B.inverse();

    auto conj = [&](const IntMatrix& g) {
        RatMatrix m = Binv * RatMatrix(g) * B;
        if (!m.is_integral())
            throw NonIntegralRebase("conjugated linear part is not integral");
        IntMatrix gi = m.to_int();
        if (!gi.is_unimodular())
            throw NonIntegralRebase("conjugated linear part is not unimodular");
        return gi;
    };

    std::vector<IntMatrix> gens;
    for (const IntMatrix& g : point_group.generators()) gens.push_back(conj(g));

    std::vector<std::pair<IntMatrix, RatVector>> rebased(point_group.order());
    for (std::size_t i = 0; i < point_group.order(); ++i)
        rebased[i] = {conj(point_group.elements()[i]), mod_one(Binv * translations[i])};
    std::sort(rebased.begin(), rebased.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<IntMatrix> elements;
    std::vector<RatVector> ts;
    for (auto& [g, t] : rebased) {
        elements.push_back(std::move(g));
        ts.push_back(std::move(t));
    }
    FinMatGroup G = FinMatGroup::from_elements(n, std::move(gens), std::move(elements));
    return CrystGroup::from_data(std::move(G), std::move(ts));
}

AffNormalizerResult affine_normalizer(const CrystGroup& gamma, const NormalizerResult& N) {
    if (!center_trivial(gamma))
        throw NotCenterless("the affine normalizer computation requires a trivial center");
    if (!N.finite())
        throw NormalizerNotFinite("affine normalizer needs a finite GL(n,Z)-normalizer");

    const std::size_t n = gamma.dim();
    const auto gens = gamma.affine_generators();
    Lattice a0 = a0_lattice(gamma);

    std::vector<IntMatrix> kept;
    std::vector<RatVector> parts;
    for (const IntMatrix& X : N.group.elements()) {
        IntMatrix Xinv = X.inverse_unimodular();
        IntMatrix A(gens.size() * n, n);
        RatVector b(gens.size() * n);
        bool in_group = true;
        for (std::size_t k = 0; k < gens.size() && in_group; ++k) {
            const auto& [g, tg] = gens[k];
            IntMatrix gp = X * g * Xinv;
            std::size_t idx = gamma.point_group().index_of(gp);
            if (idx == gamma.point_group().order()) {
                // no affine lift can exist when X does not normalize G
                in_group = false;
                break;
            }
            RatVector rhs = gamma.translations()[idx] - X * tg;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j)
                    A(k * n + i, j) = (i == j ? 1 : 0) - gp(i, j);
                b[k * n + i] = rhs[i];
            }
        }
        if (!in_group) continue;
        CongruenceSolution sol = solve_congruence(A, b);
        if (sol.solvable) {
            kept.push_back(X);
            parts.push_back(sol.particular);
        }
    }

    AffNormalizerResult res;
    res.a0 = a0;
    res.rebase_matrix = a0.basis();
    res.n_alpha =
        FinMatGroup::from_elements(n, find_generators(n, kept), kept);  // verifies a subgroup
    res.n_alpha_translations = parts;
    res.group = rebase(res.n_alpha, parts, a0);
    return res;
}

Int out_order(const CrystGroup& gamma, const NormalizerResult& N) {
    Int h1 = lattice_index(a0_lattice(gamma), Lattice::standard(gamma.dim()));
    AffNormalizerResult aff = affine_normalizer(gamma, N);
    Int numer = h1 * Int(aff.n_alpha.order());
    Int g = Int(gamma.point_group().order());
    if (numer % g != 0)
        throw std::logic_error("|H1| * |N_alpha| is not divisible by |G|");
    return numer / g;
}

CrystGroup direct_product(const CrystGroup& a, const CrystGroup& b) {
    const std::size_t na = a.dim(), nb = b.dim(), n = na + nb;

    auto embed = [&](const IntMatrix& ga, const IntMatrix& gb) {
        IntMatrix m = IntMatrix::identity(n);
        for (std::size_t i = 0; i < na; ++i)
            for (std::size_t j = 0; j < na; ++j) m(i, j) = ga(i, j);
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t j = 0; j < nb; ++j) m(na + i, na + j) = gb(i, j);
        return m;
    };

    std::vector<IntMatrix> gens;
    IntMatrix ida = IntMatrix::identity(na), idb = IntMatrix::identity(nb);
    for (const IntMatrix& g : a.point_group().generators()) gens.push_back(embed(g, idb));
    for (const IntMatrix& g : b.point_group().generators()) gens.push_back(embed(ida, g));

    std::vector<std::pair<IntMatrix, RatVector>> all;
    for (std::size_t i = 0; i < a.point_group().order(); ++i)
        for (std::size_t j = 0; j < b.point_group().order(); ++j) {
            RatVector t(n);
            for (std::size_t k = 0; k < na; ++k) t[k] = a.translations()[i][k];
            for (std::size_t k = 0; k < nb; ++k) t[na + k] = b.translations()[j][k];
            all.emplace_back(embed(a.point_group().elements()[i], b.point_group().elements()[j]),
                             std::move(t));
        }
    std::sort(all.begin(), all.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    std::vector<IntMatrix> elements;
    std::vector<RatVector> ts;
    for (auto& [g, t] : all) {
        elements.push_back(std::move(g));
        ts.push_back(std::move(t));
    }
    FinMatGroup G = FinMatGroup::from_elements(n, std::move(gens), std::move(elements));
    return CrystGroup::from_data(std::move(G), std::move(ts));
}

AnalysisOutcome analyze(const CrystGroup& gamma, const NormalizerConfig& config) {
    AnalysisOutcome out;
    AnalysisReport& r = out.report;
    r.dim = gamma.dim();
    r.point_group_order = gamma.point_group().order();
    r.center_trivial = center_trivial(gamma);
    if (!r.center_trivial)
        throw NotCenterless("analysis pipeline requires a group with trivial center");
    r.h1_invariants = h1_invariants(gamma);

    out.normalizer = normalizer(gamma.point_group(), config);
    r.normalizer_status = out.normalizer.status;
    r.normalizer_backend = out.normalizer.backend;
    if (!out.normalizer.finite())
        throw NormalizerNotFinite("GL(n,Z)-normalizer search exceeded its cap");
    r.normalizer_order = out.normalizer.group.order();

    out.affine = affine_normalizer(gamma, out.normalizer);
    r.n_alpha_order = out.affine.n_alpha.order();

    Int h1 = lattice_index(out.affine.a0, Lattice::standard(gamma.dim()));
    Int numer = h1 * r.n_alpha_order;
    if (numer % r.point_group_order != 0)
        throw std::logic_error("|H1| * |N_alpha| is not divisible by |G|");
    r.out_order = numer / r.point_group_order;
    r.out_trivial = r.out_order == 1;

    // bottom-row exactness, re-checked as stated
    if (r.out_order * r.point_group_order != h1 * r.n_alpha_order)
        throw std::logic_error("exact-sequence arithmetic violated");
    return out;
}

IterationResult iterate_fixpoint(const CrystGroup& gamma, std::size_t max_iter,
                                 const NormalizerConfig& config) {
    IterationResult res;
    res.group = gamma;
    for (std::size_t step = 0; step <= max_iter; ++step) {
        AnalysisOutcome out = analyze(res.group, config);
        res.history.push_back(out.report);
        bool fixpoint =
            out.affine.n_alpha == res.group.point_group() && out.affine.a0.is_standard();
        if (fixpoint) {
            res.steps = step;
            return res;
        }
        res.group = out.affine.group;
    }
    throw MaxIterExceeded(std::move(res.history));
}

IterationResult construct_complete(std::size_t n, std::size_t max_iter,
                                   const NormalizerConfig& config) {
    if (n < 2) throw std::invalid_argument("construction requires dimension >= 2");
    std::size_t i = n % 2;
    std::size_t k = (n - 3 * i) / 2;
    CrystGroup product = CrystGroup::from_data(FinMatGroup::trivial(0), {RatVector{}});
    for (std::size_t c = 0; c < k; ++c) product = direct_product(product, gamma1());
    if (i) product = direct_product(product, gamma2());
    return iterate_fixpoint(product, max_iter, config);
}

bool aut_crystallographic_check(const CrystGroup& gamma, const NormalizerResult& N) {
    if (!center_trivial(gamma))
        throw NotCenterless("consistency check requires a trivial center");
    if (!N.finite())
        throw NormalizerNotFinite("consistency check needs a finite normalizer");
    // Out is finite here (both |H1| and |N_alpha / G| are); the affine
    // normalizer must then be crystallographic, and conversely
    bool out_finite = true;
    bool aut_cryst;
    try {
        AffNormalizerResult aff = affine_normalizer(gamma, N);
        aut_cryst = aff.a0.dim() == gamma.dim() && aff.n_alpha.order() >= 1 &&
                    aff.group.point_group().order() == aff.n_alpha.order();
    } catch (const std::exception&) {
        aut_cryst = false;
    }
    return out_finite == aut_cryst;
}

}  // namespace cryst
