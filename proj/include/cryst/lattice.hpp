#pragma once

#include <optional>
#include <vector>

#include "cryst/int_matrix.hpp"
#include "cryst/normal_form.hpp"

namespace cryst {

// Full-rank subgroup of Q^n commensurable with Z^n, stored canonically as
// (integer basis in column Hermite form, positive denominator) with
// gcd(content(basis), denominator) = 1. Equal lattices compare equal.
class Lattice {
public:
    Lattice() = default;

    static Lattice standard(std::size_t dim);  // Z^n
    // lattice spanned by the columns of B (must be square nonsingular)
    static Lattice from_rational_columns(const RatMatrix& B);
    static Lattice from_integer_columns(const IntMatrix& B, const Int& denom = 1);

    std::size_t dim() const { return basis_.rows(); }
    const IntMatrix& numerator_basis() const { return basis_; }
    const Int& denominator() const { return denom_; }
    RatMatrix basis() const;  // columns are basis vectors

    bool contains(const RatVector& v) const;
    bool contains_lattice(const Lattice& other) const;
    bool is_standard() const;

    bool operator==(const Lattice& other) const = default;

private:
    IntMatrix basis_;  // column HNF
    Int denom_ = 1;
};

// elementary divisors > 1 of the finite group L_sup / L_sub
std::vector<Int> lattice_quotient_invariants(const Lattice& L_sup, const Lattice& L_sub);

Int lattice_index(const Lattice& L_sup, const Lattice& L_sub);

struct CongruenceSolution {
    bool solvable = false;
    RatVector particular;  // when solvable: A*particular - b integral
    // {v : A*v = 0 mod Z^m} decomposes into a discrete part and, when A has
    // a rational kernel, free directions; callers that need a lattice must
    // check the flag
    bool non_discrete = false;
    std::optional<Lattice> solution_lattice;  // set iff discrete
    std::vector<RatVector> homogeneous_basis;  // discrete directions
    std::vector<RatVector> free_directions;
};

// solve A*v = b (mod Z^m) for rational v; A integral
CongruenceSolution solve_congruence(const IntMatrix& A, const RatVector& b);

}  // namespace cryst
