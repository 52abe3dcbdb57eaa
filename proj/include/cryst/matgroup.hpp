#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "cryst/int_matrix.hpp"

namespace cryst {

// Finite subgroup of GL(n,Z): generators plus the full element list in
// canonical (lexicographic) order, so membership is a binary search.
class FinMatGroup {
public:
    static constexpr std::size_t kDefaultMaxOrder = 20000;

    // Dimino-style breadth-first closure of the generated group.
    // Throws OrderCapExceeded when the group would exceed max_order.
    static FinMatGroup closure(const std::vector<IntMatrix>& gens,
                               std::size_t max_order = kDefaultMaxOrder);

    // Wrap an already-closed element set (validated: identity present,
    // closed under the listed generators, generators contained).
    static FinMatGroup from_elements(std::size_t dim,
                                     std::vector<IntMatrix> generators,
                                     std::vector<IntMatrix> elements);

    static FinMatGroup trivial(std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<IntMatrix>& generators() const { return generators_; }
    const std::vector<IntMatrix>& elements() const { return elements_; }

    bool contains(const IntMatrix& X) const;
    // index into elements(), or order() when absent
    std::size_t index_of(const IntMatrix& X) const;
    std::size_t identity_index() const;

    bool operator==(const FinMatGroup& other) const {
        return dim_ == other.dim_ && elements_ == other.elements_;
    }

private:
    std::size_t dim_ = 0;
    std::vector<IntMatrix> generators_;
    std::vector<IntMatrix> elements_;
};

// true iff X g X^-1 lies in G for every generator g (sufficient: G finite)
bool normalizes(const FinMatGroup& G, const IntMatrix& X);

struct GroupFingerprint {
    Int order = 0;
    std::map<Int, Int> element_order_histogram;
    std::vector<Int> abelianization_invariants;  // elementary divisors > 1

    bool operator==(const GroupFingerprint&) const = default;
};

// order, element-order histogram, and abelianization invariants computed
// from the regular permutation action (quadratic in |G|; fine at desk scale)
GroupFingerprint fingerprint(const FinMatGroup& G);

// deterministic small generating set: scan elements in canonical order,
// keep those enlarging the generated subgroup. closure_cap bounds the
// generated group (0 means the element count, right when the input is
// already a full subgroup); exceeding it throws OrderCapExceeded.
std::vector<IntMatrix> find_generators(std::size_t dim, const std::vector<IntMatrix>& elements,
                                       std::size_t closure_cap = 0);

}  // namespace cryst
