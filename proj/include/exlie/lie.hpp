#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "exlie/graphs.hpp"
#include "exlie/matrix.hpp"

namespace exlie {

using SparseVector = std::vector<std::pair<std::size_t, FieldElement>>;

SparseVector to_sparse(const Vector& v);
Vector to_dense(Field F, std::size_t n, const SparseVector& s);

// A finite-dimensional Lie algebra given by structure constants on a fixed
// basis. Elements are coordinate vectors.
class LieAlgebra {
public:
    LieAlgebra() = default;
    LieAlgebra(Field F, std::size_t dim);

    Field field() const { return F_; }
    std::size_t dim() const { return dim_; }

    // Sets [e_i, e_j] = v and [e_j, e_i] = -v.
    void set_bracket(std::size_t i, std::size_t j, const Vector& v);
    const SparseVector& basis_bracket(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }

    Vector zero() const { return Vector(F_, dim_); }
    Vector basis_vector(std::size_t i) const { return Vector::unit(F_, dim_, i); }

    Vector bracket(const Vector& a, const Vector& b) const;
    // Column k is [a, e_k].
    Matrix ad(const Vector& a) const;

    // The same structure constants over an extension field.
    LieAlgebra embed(Field K) const;

    // Exhaustive checks on basis elements; return a description of the first
    // failure, or an empty string.
    std::string antisymmetry_failure() const;
    std::string jacobi_failure() const;

    // "i j k num/den" for i < j and every nonzero coefficient, 1-based.
    std::string structure_constants_text() const;

private:
    Field F_;
    std::size_t dim_ = 0;
    std::vector<SparseVector> table_;
};

// Smallest subalgebra of L containing gens, as an echelon basis of coordinates.
EchelonBasis subalgebra_closure(const LieAlgebra& L, const std::vector<Vector>& gens);

// Right-nested fold [g_{i_k}, [..., [g_{i_2}, g_{i_1}]]].
Vector evaluate_monomial(const LieAlgebra& L, const std::vector<Vector>& gens, const Monomial& m);
Matrix evaluate_monomial(const std::vector<Matrix>& gens, const Monomial& m);

}  // namespace exlie
