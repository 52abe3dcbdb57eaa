#include "cryst/lattice.hpp"

#include <stdexcept>

#include "cryst/errors.hpp"

namespace cryst {

Lattice Lattice::standard(std::size_t dim) {
    Lattice l;
    l.basis_ = IntMatrix::identity(dim);
    l.denom_ = 1;
    return l;
}

Lattice Lattice::from_integer_columns(const IntMatrix& B, const Int& denom) {
    if (!B.is_square()) throw std::invalid_argument("lattice basis must be square");
    if (denom <= 0) throw std::invalid_argument("lattice denominator must be positive");
    if (B.rows() > 0 && B.det() == 0) throw std::invalid_argument("lattice basis is singular");
    Lattice l;
    l.basis_ = column_hnf(B);
    l.denom_ = denom;
    Int g = gcd_int(l.basis_.content(), l.denom_);
    if (g > 1) {
        l.basis_ = l.basis_.divided_by(g);
        l.denom_ /= g;
    }
    return l;
}

Lattice Lattice::from_rational_columns(const RatMatrix& B) {
    if (B.rows() != B.cols()) throw std::invalid_argument("lattice basis must be square");
    Int d = 1;
    for (std::size_t i = 0; i < B.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) d = lcm_int(d, den(B(i, j)));
    IntMatrix C(B.rows(), B.cols());
    for (std::size_t i = 0; i < B.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) {
            Rat v = B(i, j) * Rat(d);
            C(i, j) = num(v);
        }
    return from_integer_columns(C, d);
}

RatMatrix Lattice::basis() const {
    RatMatrix b(basis_.rows(), basis_.cols());
    for (std::size_t i = 0; i < basis_.rows(); ++i)
        for (std::size_t j = 0; j < basis_.cols(); ++j) b(i, j) = Rat(basis_(i, j), denom_);
    return b;
}

bool Lattice::contains(const RatVector& v) const {
    if (v.size() != dim()) throw std::invalid_argument("vector dimension mismatch");
    // v in L  <=>  basis^-1 * (denom * v) is integral
    RatVector scaled(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) scaled[i] = v[i] * Rat(denom_);
    RatVector coords = RatMatrix(basis_).inverse() * scaled;
    return is_integral(coords);
}

bool Lattice::contains_lattice(const Lattice& other) const {
    if (other.dim() != dim()) throw std::invalid_argument("lattice dimension mismatch");
    RatMatrix coords = basis().inverse() * other.basis();
    return coords.is_integral();
}

bool Lattice::is_standard() const { return denom_ == 1 && basis_.is_identity(); }

std::vector<Int> lattice_quotient_invariants(const Lattice& L_sup, const Lattice& L_sub) {
    if (L_sup.dim() != L_sub.dim()) throw std::invalid_argument("lattice dimension mismatch");
    RatMatrix coords = L_sup.basis().inverse() * L_sub.basis();
    if (!coords.is_integral())
        throw NotSublattice("second lattice is not contained in the first");
    return snf(coords.to_int()).nontrivial_divisors();
}

Int lattice_index(const Lattice& L_sup, const Lattice& L_sub) {
    RatMatrix coords = L_sup.basis().inverse() * L_sub.basis();
    if (!coords.is_integral())
        throw NotSublattice("second lattice is not contained in the first");
    return abs_int(coords.to_int().det());
}

CongruenceSolution solve_congruence(const IntMatrix& A, const RatVector& b) {
    if (A.rows() != b.size()) throw std::invalid_argument("solve_congruence shape mismatch");
    const std::size_t m = A.rows(), n = A.cols();
    const std::size_t nmin = std::min(m, n);
    SnfResult s = snf(A);

    RatVector c(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) c[i] += Rat(s.U(i, j)) * b[j];

    CongruenceSolution sol;
    RatVector w(n);
    for (std::size_t i = 0; i < m; ++i) {
        const Int d = (i < nmin) ? s.D(i, i) : Int(0);
        if (d != 0) {
            w[i] = c[i] / Rat(d);
        } else if (!is_integral(c[i])) {
            return sol;  // constant obstruction, unsolvable
        }
    }
    sol.solvable = true;
    sol.particular = RatMatrix(s.V) * w;

    std::vector<RatVector> hom;
    for (std::size_t j = 0; j < n; ++j) {
        RatVector col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = Rat(s.V(i, j));
        if (j < s.rank) {
            for (auto& x : col) x /= Rat(s.D(j, j));
            hom.push_back(std::move(col));
        } else {
            sol.free_directions.push_back(std::move(col));
        }
    }
    sol.homogeneous_basis = hom;
    sol.non_discrete = !sol.free_directions.empty();
    if (!sol.non_discrete) {
        RatMatrix B(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) B(i, j) = hom[j][i];
        sol.solution_lattice = Lattice::from_rational_columns(B);
    }
    return sol;
}

}  // namespace cryst
