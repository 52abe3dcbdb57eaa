#pragma once

#include <string>

#include "cryst/matgroup.hpp"
#include "cryst/numeric.hpp"

namespace cryst {

enum class NormalizerStatus {
    certified,            // provably complete (1-dimensional invariant form space)
    heuristic_complete,   // complete up to the recorded search bound
    infinite_or_cap_exceeded,
};

std::string to_string(NormalizerStatus s);

struct NormalizerResult {
    FinMatGroup group;  // meaningful only when status != infinite_or_cap_exceeded
    NormalizerStatus status = NormalizerStatus::heuristic_complete;
    std::string backend;
    Int search_bound_used = 0;

    bool finite() const { return status != NormalizerStatus::infinite_or_cap_exceeded; }
};

struct NormalizerConfig {
    enum class Backend { form, brute, both };
    Backend backend = Backend::form;
    long brute_entry_bound = 3;
    std::size_t max_order = FinMatGroup::kDefaultMaxOrder;
    Rat diag_bound_factor = 4;
};

// oracle backend: enumerate every X in GL(n,Z) with |entries| <= entry_bound
// that normalizes G, then close the found set. Cost (2B+1)^(n^2); n <= 3
// is the practical range.
NormalizerResult normalizer_bruteforce(const FinMatGroup& G, long entry_bound,
                                       std::size_t max_order = FinMatGroup::kDefaultMaxOrder);

// invariant-form backend. A 1-dimensional form space pins every normalizer
// element into the automorphism group of the averaged form (certified);
// otherwise candidate target forms within the diagonal bound are enumerated
// and the union of normalizing isometries is closed (heuristic-complete).
NormalizerResult normalizer_formbased(const FinMatGroup& G, const Rat& diag_bound_factor,
                                      std::size_t max_order = FinMatGroup::kDefaultMaxOrder);

// dispatch per config; with Backend::both the brute-force result is computed
// as well and must be contained in the form-based one
NormalizerResult normalizer(const FinMatGroup& G, const NormalizerConfig& config = {});

}  // namespace cryst
