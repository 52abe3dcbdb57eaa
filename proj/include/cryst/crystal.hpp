#pragma once

#include <utility>
#include <vector>

#include "cryst/lattice.hpp"
#include "cryst/matgroup.hpp"
#include "cryst/normalizer.hpp"

namespace cryst {

using AffineGen = std::pair<IntMatrix, RatVector>;

// Crystallographic group with translation lattice Z^n: a finite point group
// together with the vector system g -> t_g (canonical representatives in
// [0,1)^n, aligned with the point group's canonical element order). The
// cocycle condition t_{gh} = t_g + g*t_h (mod Z^n) is constructor-enforced.
class CrystGroup {
public:
    CrystGroup() = default;

    // validated constructor over complete data
    static CrystGroup from_data(FinMatGroup point_group, std::vector<RatVector> translations);

    std::size_t dim() const { return point_group_.dim(); }
    const FinMatGroup& point_group() const { return point_group_; }
    const std::vector<RatVector>& translations() const { return translations_; }
    const RatVector& translation_of(const IntMatrix& g) const;

    std::vector<AffineGen> affine_generators() const;

    bool operator==(const CrystGroup& other) const {
        return point_group_ == other.point_group_ && translations_ == other.translations_;
    }

private:
    FinMatGroup point_group_;
    std::vector<RatVector> translations_;
};

// close the affine group generated by (linear part, translation) pairs;
// throws InconsistentVectorSystem when two words with equal linear part
// disagree on the translation mod Z^n
CrystGroup make_cryst(std::size_t dim, const std::vector<AffineGen>& affine_gens,
                      std::size_t max_order = FinMatGroup::kDefaultMaxOrder);

// trivial center <=> the stacked (g - I) over generators has full column rank
bool center_trivial(const CrystGroup& gamma);

// the lattice {m in Q^n : (g - I)m integral for all g}; requires a trivial
// center (otherwise the set is not discrete)
Lattice a0_lattice(const CrystGroup& gamma);

// elementary divisors of a0_lattice(gamma) / Z^n
std::vector<Int> h1_invariants(const CrystGroup& gamma);

// conjugate the group to the basis of L: g -> B^-1 g B, t -> B^-1 t;
// linear parts must stay integral (NonIntegralRebase otherwise)
CrystGroup rebase(const FinMatGroup& point_group, const std::vector<RatVector>& translations,
                  const Lattice& L);

struct AffNormalizerResult {
    CrystGroup group;      // the affine normalizer, rebased to lattice Z^n
    FinMatGroup n_alpha;   // linear parts realizable in the affine normalizer
    Lattice a0;            // its translation lattice
    RatMatrix rebase_matrix;
    std::vector<RatVector> n_alpha_translations;  // particular parts, pre-rebase
};

// the affine normalizer: for each X in N decide solvability of
// (I - g')v = t_{g'} - X t_g (mod Z^n) over the generators, g' = X g X^-1
AffNormalizerResult affine_normalizer(const CrystGroup& gamma, const NormalizerResult& N);

// |H^1| * |N_alpha| / |G|, exact
Int out_order(const CrystGroup& gamma, const NormalizerResult& N);

CrystGroup direct_product(const CrystGroup& a, const CrystGroup& b);

struct AnalysisReport {
    std::size_t dim = 0;
    Int point_group_order = 0;
    bool center_trivial = false;
    std::vector<Int> h1_invariants;
    Int normalizer_order = 0;
    NormalizerStatus normalizer_status = NormalizerStatus::heuristic_complete;
    std::string normalizer_backend;
    Int n_alpha_order = 0;
    Int out_order = 0;
    bool out_trivial = false;
};

struct AnalysisOutcome {
    AnalysisReport report;
    NormalizerResult normalizer;
    AffNormalizerResult affine;
};

// full pipeline: center, H^1, normalizer, affine normalizer, Out order;
// verifies |Out| * |G| = |H^1| * |N_alpha| exactly
AnalysisOutcome analyze(const CrystGroup& gamma, const NormalizerConfig& config = {});

struct IterationResult {
    CrystGroup group;
    std::vector<AnalysisReport> history;  // one report per step, step 0 first
    std::size_t steps = 0;                // rebasings performed before the fixpoint
};

struct MaxIterExceeded : std::runtime_error {
    explicit MaxIterExceeded(std::vector<AnalysisReport> h)
        : std::runtime_error("fixed-point iteration did not stabilize within the step budget"),
          history(std::move(h)) {}
    std::vector<AnalysisReport> history;
};

// repeat gamma <- affine_normalizer(gamma) until the literal fixpoint
// (n_alpha equals the point group and a0 = Z^n)
IterationResult iterate_fixpoint(const CrystGroup& gamma, std::size_t max_iter = 10,
                                 const NormalizerConfig& config = {});

// crystallographic group of dimension n >= 2 with trivial center and trivial
// outer automorphism group, via the product-and-iterate construction
IterationResult construct_complete(std::size_t n, std::size_t max_iter = 10,
                                   const NormalizerConfig& config = {});

// consistency probe: the affine normalizer is crystallographic (finite point
// group, full-rank translation lattice) exactly when Out is finite
bool aut_crystallographic_check(const CrystGroup& gamma, const NormalizerResult& N);

}  // namespace cryst
