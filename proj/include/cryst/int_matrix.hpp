#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <vector>

#include "cryst/numeric.hpp"

namespace cryst {

using RatVector = std::vector<Rat>;
using IntVector = std::vector<Int>;

// Dense integer matrix, row-major, arbitrary-precision entries.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> init);

    static IntMatrix identity(std::size_t n);
    static IntMatrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    const std::vector<Int>& entries() const { return e_; }

    IntMatrix operator*(const IntMatrix& other) const;
    IntMatrix operator+(const IntMatrix& other) const;
    IntMatrix operator-(const IntMatrix& other) const;
    IntMatrix operator-() const;
    IntMatrix transpose() const;

    IntVector operator*(const IntVector& v) const;
    RatVector operator*(const RatVector& v) const;

    bool operator==(const IntMatrix& other) const = default;
    // lexicographic over row-major entries; the canonical element order
    bool operator<(const IntMatrix& other) const;

    bool is_square() const { return rows_ == cols_; }
    bool is_zero() const;
    bool is_identity() const;
    bool is_symmetric() const;

    Int det() const;            // Bareiss fraction-free elimination
    bool is_unimodular() const; // square with det +-1

    // inverse of a unimodular matrix, exact integer result
    IntMatrix inverse_unimodular() const;

    // gcd of all entries (0 for the zero matrix)
    Int content() const;
    IntMatrix divided_by(const Int& d) const; // entries must all be divisible

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> e_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

// Dense rational matrix; internal helper for basis changes and inverses.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}
    explicit RatMatrix(const IntMatrix& m);

    static RatMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    RatMatrix operator*(const RatMatrix& other) const;
    RatVector operator*(const RatVector& v) const;
    bool operator==(const RatMatrix& other) const = default;

    RatMatrix inverse() const;  // Gauss-Jordan; throws on singular input
    bool is_integral() const;
    IntMatrix to_int() const;   // throws if any entry is non-integral

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> e_;
};

RatVector operator+(const RatVector& a, const RatVector& b);
RatVector operator-(const RatVector& a, const RatVector& b);
RatVector mod_one(const RatVector& v);
bool is_integral(const RatVector& v);
RatVector to_rat(const IntVector& v);

}  // namespace cryst
