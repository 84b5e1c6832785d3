#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "exlie/field.hpp"

namespace exlie {

class Vector {
public:
    Vector() = default;
    Vector(Field F, std::size_t n) : F_(F), e_(n, F.zero()) {}
    Vector(Field F, std::vector<FieldElement> e);
    static Vector unit(Field F, std::size_t n, std::size_t i);
    static Vector from_ints(Field F, const std::vector<long long>& v);

    Field field() const { return F_; }
    std::size_t size() const { return e_.size(); }
    FieldElement& operator[](std::size_t i) { return e_[i]; }
    const FieldElement& operator[](std::size_t i) const { return e_[i]; }
    const std::vector<FieldElement>& entries() const { return e_; }

    bool is_zero() const;
    // Index of the first nonzero entry, or size() when zero.
    std::size_t leading_index() const;

    Vector operator+(const Vector& o) const;
    Vector operator-(const Vector& o) const;
    Vector operator-() const;
    Vector operator*(const FieldElement& c) const;
    Vector& operator+=(const Vector& o);
    Vector& operator-=(const Vector& o);
    // this += c*o
    void add_scaled(const FieldElement& c, const Vector& o);
    bool operator==(const Vector& o) const;
    bool operator!=(const Vector& o) const { return !(*this == o); }

    FieldElement dot(const Vector& o) const;
    Vector embed(Field target) const;
    std::string to_string() const;

private:
    void check(const Vector& o) const;
    Field F_;
    std::vector<FieldElement> e_;
};

class Matrix {
public:
    Matrix() = default;
    Matrix(Field F, std::size_t rows, std::size_t cols);
    static Matrix identity(Field F, std::size_t n);
    static Matrix from_ints(Field F, const std::vector<std::vector<long long>>& rows);
    static Matrix from_rows(Field F, const std::vector<Vector>& rows);
    static Matrix from_columns(Field F, std::size_t nrows, const std::vector<Vector>& cols);
    // u * v^T
    static Matrix outer(const Vector& u, const Vector& v);
    // Inverse of flatten().
    static Matrix unflatten(const Vector& v, std::size_t rows, std::size_t cols);

    Field field() const { return F_; }
    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    FieldElement& operator()(std::size_t i, std::size_t j) { return e_[i * c_ + j]; }
    const FieldElement& operator()(std::size_t i, std::size_t j) const { return e_[i * c_ + j]; }

    Vector row(std::size_t i) const;
    Vector col(std::size_t j) const;
    Vector flatten() const { return Vector(F_, e_); }

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator-() const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator*(const FieldElement& c) const;
    Vector operator*(const Vector& v) const;
    Matrix& operator+=(const Matrix& o);
    void add_scaled(const FieldElement& c, const Matrix& o);
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix transpose() const;
    FieldElement trace() const;
    bool is_zero() const;
    std::size_t rank() const;
    Matrix embed(Field target) const;
    std::string to_string() const;  // one row per line, exact entries

private:
    void check_same_shape(const Matrix& o) const;
    Field F_;
    std::size_t r_ = 0, c_ = 0;
    std::vector<FieldElement> e_;
};

// [a, b] = ab - ba
Matrix commutator(const Matrix& a, const Matrix& b);

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
};

// Gauss-Jordan elimination: columns scanned left to right, the first row with a
// nonzero entry in the current column becomes the pivot row.
RrefResult rref(const Matrix& m);

// Coordinates c with sum c_i basis_i = v, or nullopt. Free coordinates are 0.
std::optional<Vector> in_span(const Vector& v, const std::vector<Vector>& basis);

// Basis of {x : m x = 0}, one vector per free column, each scaled to leading entry 1.
std::vector<Vector> kernel(const Matrix& m);

struct AffineSolution {
    Vector particular;
    std::vector<Vector> homogeneous;
};
// All solutions of m x = b, or nullopt when inconsistent.
std::optional<AffineSolution> solve(const Matrix& m, const Vector& b);

// Inverse of a square matrix, or nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

// An incrementally maintained reduced echelon basis of a subspace of F^n.
// Rows stay fully reduced, so the coordinates of a member are its entries at
// the pivot columns.
class EchelonBasis {
public:
    EchelonBasis() = default;
    EchelonBasis(Field F, std::size_t n) : F_(F), n_(n) {}

    // Returns false (and leaves the basis unchanged) if v is already in the span.
    bool add(const Vector& v);
    Vector reduce(const Vector& v) const;
    bool contains(const Vector& v) const { return reduce(v).is_zero(); }
    // Coordinates with respect to rows(); nullopt if outside the span.
    std::optional<Vector> coordinates(const Vector& v) const;
    // Skips the membership test.
    Vector coordinates_unchecked(const Vector& v) const;

    std::size_t dim() const { return rows_.size(); }
    std::size_t ambient() const { return n_; }
    Field field() const { return F_; }
    const std::vector<Vector>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

private:
    Field F_;
    std::size_t n_ = 0;
    std::vector<Vector> rows_;
    std::vector<std::size_t> pivots_;  // increasing
};

}  // namespace exlie
