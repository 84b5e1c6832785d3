#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exlie/extremal.hpp"
#include "exlie/graphs.hpp"
#include "exlie/lie.hpp"

namespace exlie {

enum class FormKind { Symplectic, Orthogonal };

struct BilinearForm {
    Matrix matrix;
    FormKind kind = FormKind::Orthogonal;

    // [[0, I], [-I, 0]] on F^{2m}
    static BilinearForm symplectic(Field F, std::size_t dim);
    // [[0, I], [I, 0]] on F^{2k}, or [[0, I, 0], [I, 0, 0], [0, 0, 2]] on F^{2k+1}
    static BilinearForm orthogonal(Field F, std::size_t dim);

    std::size_t dim() const { return matrix.rows(); }
    FieldElement operator()(const Vector& u, const Vector& v) const;
    // A^T M + M A = 0
    bool preserves(const Matrix& A) const;
};

struct TransvectionData {
    Vector x;  // centre
    Vector h;  // axis, as a functional in the dual basis
};

struct SiegelLine {
    Vector u, v;
};

// x h^T
Matrix transvection(const Vector& x, const Vector& h);
// y (y^T M): v -> B(y, v) y
Matrix symplectic_transvection(const Vector& y, const BilinearForm& B);
// T_{u,v} = v (M u)^T - u (M v)^T: x -> B(u, x) v - B(v, x) u
Matrix siegel(const SiegelLine& l, const BilinearForm& B);

struct RealizationParams {
    Family family = Family::A;
    int n = 0;
    std::optional<FieldElement> alpha, beta, gamma, kappa, lambda;
    std::optional<Vector> tilde_f;
    std::string tilde_f_source;  // "listing" or "solved"
};

struct Realization {
    Family family = Family::A;
    int n = 0;
    Field field;
    std::vector<Matrix> gens;
    std::optional<BilinearForm> form;  // absent for the sl realization
    RealizationParams params;
    std::vector<TransvectionData> transvections;  // A
    std::vector<Vector> centres;                  // C
    std::vector<SiegelLine> lines;                // B, D
};

Realization generators_A(int n, Field F);
Realization generators_C(int n, Field F);
Realization generators_D(int n, const FieldElement& alpha, const FieldElement& beta, Field F);
Realization generators_B(int n, const FieldElement& gamma, Field F);

// The vector with B(f,f) = 0, B(f,u_i) = [i = 3], B(f,v_i) = 0 for i != 3 and
// B(f,v_3) = -1 (n odd) or kappa/(1+beta+kappa) (n even), supported away from
// e1, e2, f1, f2. *source records whether the coordinate listing already
// satisfied these or the linear system had to be solved.
Vector derive_tilde_f(int n, const FieldElement& beta, const FieldElement& kappa, Field F,
                      std::string* source = nullptr);

// The Lie subalgebra of gl(N) generated by some matrices. The basis is the
// reduced echelon basis of the flattened span.
class MatrixLieAlgebra : public LieAlgebra {
public:
    MatrixLieAlgebra() = default;
    std::size_t ambient() const { return N_; }
    const std::vector<Matrix>& basis() const { return basis_; }
    bool contains(const Matrix& m) const { return span_.contains(m.flatten()); }
    // Throws DimensionMismatch when m lies outside the algebra.
    Vector coordinates(const Matrix& m) const;
    Matrix to_matrix(const Vector& c) const;

private:
    friend MatrixLieAlgebra lie_closure(const std::vector<Matrix>& gens);
    std::size_t N_ = 0;
    std::vector<Matrix> basis_;
    EchelonBasis span_;
};

MatrixLieAlgebra lie_closure(const std::vector<Matrix>& gens);

// Y + t [a, Y] + t^2/2 [a, [a, Y]] in gl(N); requires (ad a)^3 Y = 0.
Matrix exp_ad_matrix(const Matrix& a, const FieldElement& t, const Matrix& Y);

PairKind classify_transvection_pair_geometric(const TransvectionData& t1, const TransvectionData& t2);
PairKind classify_siegel_pair_geometric(const SiegelLine& l1, const SiegelLine& l2, const BilinearForm& B);

}  // namespace exlie
