#pragma once

#include <optional>
#include <vector>

#include "cryst/int_matrix.hpp"

namespace cryst {

struct HnfResult {
    IntMatrix H;  // row Hermite form: upper echelon, positive pivots,
                  // entries above each pivot reduced into [0, pivot)
    IntMatrix U;  // unimodular, U*A = H
};

HnfResult hnf(const IntMatrix& A);

// column-style Hermite form: spans the same column lattice as A,
// canonical for column-lattice equality tests
IntMatrix column_hnf(const IntMatrix& A);

struct SnfResult {
    IntMatrix D;  // diagonal, nonnegative, d1 | d2 | ...
    IntMatrix U;  // unimodular row transform
    IntMatrix V;  // unimodular column transform, U*A*V = D
    std::size_t rank = 0;

    std::vector<Int> divisors() const;          // nonzero diagonal entries
    std::vector<Int> nontrivial_divisors() const;  // those > 1
};

SnfResult snf(const IntMatrix& A);

std::size_t rank(const IntMatrix& A);

struct IntegerSolution {
    IntVector particular;  // A*particular = b
    IntMatrix kernel;      // columns span {x : A*x = 0}; column-HNF canonical
};

// exact solution of A*x = b over the integers
std::optional<IntegerSolution> solve_integer(const IntMatrix& A, const IntVector& b);

}  // namespace cryst
