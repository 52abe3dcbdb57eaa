#pragma once

#include <vector>

#include "cryst/int_matrix.hpp"
#include "cryst/matgroup.hpp"

namespace cryst {

// Symmetric integral bilinear form.
class SymForm {
public:
    SymForm() = default;
    explicit SymForm(IntMatrix m);

    std::size_t dim() const { return mat_.rows(); }
    const IntMatrix& matrix() const { return mat_; }
    const Int& operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

    // exact leading-principal-minor test
    bool is_positive_definite() const { return positive_definite_; }

    Int evaluate(const IntVector& v) const;  // v^T Q v

    bool operator==(const SymForm& other) const { return mat_ == other.mat_; }

private:
    IntMatrix mat_;
    bool positive_definite_ = false;
};

// integral basis of {F symmetric : g^T F g = F for all g in G}, saturated
// (kernel of an integer system, so primitive), column-HNF canonical
std::vector<SymForm> invariant_form_space(const FinMatGroup& G);

// sum of g^T g over all elements: positive definite and G-invariant
SymForm average_form(const FinMatGroup& G);

// all nonzero v with v^T Q v <= c, one per +-pair (first nonzero coordinate
// positive), sorted; exact rational Fincke-Pohst enumeration
std::vector<IntVector> short_vectors(const SymForm& Q, const Int& c);

// all integral X with X^T Q1 X = Q2 (empty when determinants differ);
// for Q1 = Q2 this is the automorphism group of the form
std::vector<IntMatrix> isometries(const SymForm& Q1, const SymForm& Q2);

}  // namespace cryst
