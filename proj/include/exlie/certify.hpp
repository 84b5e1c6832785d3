#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exlie/realizations.hpp"

namespace exlie {

// ---------------------------------------------------------------- graph check

struct GraphCheck {
    bool ok = false;
    bool pattern_ok = false;
    std::vector<bool> extremal;                // one flag per generator
    std::optional<std::pair<int, int>> witness;  // first pair whose commutation disagrees with the graph
};

GraphCheck graph_realization_check(const LieAlgebra& L, const std::vector<Vector>& gens, const SimpleGraph& g);
GraphCheck graph_realization_check(const std::vector<Matrix>& gens, const SimpleGraph& g);

// ---------------------------------------------------------------- psi

struct PsiVector {
    Family family = Family::A;
    int n = 0;
    std::vector<FieldElement> values;
    std::vector<std::string> labels;  // "f(1,2)", "f(1,[2,3])", "f(1,long)", ...

    std::size_t expected_length() const;
    std::vector<std::string> to_strings() const;
    bool operator==(const PsiVector& o) const { return family == o.family && n == o.n && values == o.values; }
};

// The word x_{3 up n-2} x_{n down 2}.
Monomial long_monomial(int n);

// Throws NotExtremal when a generator is not extremal.
PsiVector psi(Family fam, const LieAlgebra& L, const std::vector<Vector>& gens);

// ---------------------------------------------------------------- genericity

struct Condition {
    std::string name;
    bool holds = false;
    std::string detail;
};

// The Zariski-open conditions of the family, evaluated exactly. For B and D
// the parameter conditions are evaluated on the parameters solved from the
// normalized form values; those may require a field extension.
std::vector<Condition> check_genericity(Family fam, const LieAlgebra& L, const std::vector<Vector>& gens);

// ---------------------------------------------------------------- solvers

// Roots in F of sum c_i x^i (coefficients from the constant term up). Over a
// quadratic extension the coefficients must lie in the prime subfield; roots
// are then found there. Sorted by canonical encoding, without repetition.
std::vector<FieldElement> polynomial_roots(const std::vector<FieldElement>& coeffs);

struct DParams {
    FieldElement alpha, beta;
};

struct DSolution {
    std::vector<DParams> candidates;
    std::string branch;  // "alpha=0", "odd", "even"
};

// Uses the odd or even equations according to n. f_short enters through its
// square. Throws NoRootInField, or SquareRootUnavailable when the odd branch
// needs a square root missing from the field.
DSolution solve_params_D(const FieldElement& f_long, const FieldElement& f_short, int n);

// gamma = (-1)^n f_long / 8. Throws ConditionViolated.
FieldElement solve_param_B(const FieldElement& f_long, int n);

// ---------------------------------------------------------------- normalization

struct Normalized {
    LieAlgebra L;  // over the (possibly lifted) field
    std::vector<Vector> gens;
    PsiVector psi;
    std::vector<std::string> steps;
};

// The fixed normalization of the family applied inside L, over L's field.
// Throws SquareRootUnavailable if a scaling has no root there.
Normalized normalize_in_field(Family fam, const LieAlgebra& L, const std::vector<Vector>& gens);

// As above, lifting to quadratic extensions as needed (at most max_lifts).
// Throws NormalizationFailed.
Normalized normalize(Family fam, const LieAlgebra& L, const std::vector<Vector>& gens, Field start,
                     int max_lifts = 4);

// ---------------------------------------------------------------- matching

struct IsomorphismCertificate {
    Family family = Family::A;
    int n = 0;
    Field field;                 // where the map and both algebras live
    std::string route;           // "direct" or "via-model"
    Matrix map;                  // L2 coordinates of phi(e_j) for the basis e_j of L1
    std::size_t pairs_verified = 0;
    PsiVector psi1, psi2;      // after normalization
    std::vector<std::string> model_params;  // via-model only, one line per side
};

struct MatchInput {
    const LieAlgebra* L = nullptr;
    std::vector<Vector> gens;
};

// Throws FormMismatch, NormalizationFailed, or StructureMismatch.
IsomorphismCertificate match_algebras(Family fam, const MatchInput& a, const MatchInput& b, int max_lifts = 4);

// Realization helpers used by matching and certification.
struct BuiltRealization {
    Realization R;
    MatrixLieAlgebra L;
    std::vector<Vector> gens;  // coordinates of R.gens in L
};
BuiltRealization build_realization(Family fam, int n, const RealizationParams& p, Field F);

// ---------------------------------------------------------------- reports

struct Tally {
    int tried = 0, passed = 0;
};

struct CertReport {
    Family family = Family::A;
    int n = 0;
    std::string field;
    std::vector<std::pair<std::string, std::string>> params;  // name, exact value
    std::vector<bool> extremal;
    bool graph_match = false;
    std::optional<std::pair<int, int>> graph_witness;
    std::size_t dim = 0, dim_expected = 0, catalog_rank = 0;
    Tally spanning;
    std::vector<std::string> psi;
    std::vector<Condition> genericity;
    std::vector<std::pair<std::string, Tally>> identities;
    std::vector<std::string> notes;
    std::string error;  // set when a component threw
    bool verdict = false;

    // Keys in the fixed order family, n, field, params, extremal, graph_match,
    // dim, dim_expected, catalog_rank, spanning_samples, psi, genericity,
    // identities, verdict; then notes and error when present.
    std::string to_json() const;
};

struct CertifyOptions {
    int spanning_samples = 100;
    int identity_samples = 50;
    std::uint64_t seed = 1;
};

CertReport certify_family(Family fam, int n, const RealizationParams& p, Field F, const CertifyOptions& opt = {});

}  // namespace exlie
