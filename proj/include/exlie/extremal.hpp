#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exlie/lie.hpp"

namespace exlie {

struct ExtremalCertificate {
    Vector x;
    std::vector<FieldElement> values;  // f_x(e_b) for each basis element b
    bool trivial = false;              // x is central

    FieldElement operator()(const Vector& y) const;  // f_x(y)
};

// Absent when some [x, [x, e_b]] is not a multiple of x.
std::optional<ExtremalCertificate> is_extremal(const LieAlgebra& L, const Vector& x);

// The scalar c in [x, [x, y]] = c x, checking only this y. A certificate is
// required for the functional on all of L.
FieldElement extremal_form(const LieAlgebra& L, const Vector& x, const Vector& y);
FieldElement extremal_form(const ExtremalCertificate& cx, const Vector& y);

enum class PairKind { Proportional, Abelian2, Heisenberg, Sl2 };
std::string pair_kind_name(PairKind k);

struct PairClass {
    PairKind kind;
    FieldElement f;  // f(x, y)
};

// Both arguments must be extremal. The rule is cross-checked against the
// dimension of the subalgebra they generate.
PairClass classify_pair(const LieAlgebra& L, const Vector& x, const Vector& y);

struct PremetReport {
    int checked = 0;
    bool symmetric_checked = false;  // AS and SM need an extremal z
};

// P1, P2, P5 for extremal x; AS and SM as well when z is extremal. Throws
// IdentityViolation naming the identity.
PremetReport check_premet(const LieAlgebra& L, const Vector& x, const Vector& y, const Vector& z,
                          bool z_extremal);

// 1 + t ad a + t^2/2 (ad a)^2 on the basis of L.
Matrix exp_ad(const LieAlgebra& L, const FieldElement& t, const Vector& a);
// exp(t ad a)(v) without forming the matrix; a is assumed extremal.
Vector exp_ad_apply(const LieAlgebra& L, const FieldElement& t, const Vector& a, const Vector& v);

struct FixtriangleTranscript {
    FieldElement s;
    FieldElement scale_x, scale_y, scale_z;
    char negated = 0;  // 'x', 'y', 'z' or 0
};

struct FixtriangleResult {
    Vector x, y, z;
    FixtriangleTranscript transcript;
};

// x, y, z extremal with f(x,y) f(y,z) != 0 and f(x,yz)^2 != 2 f(x,y) f(x,z) f(y,z).
// Produces (f(x',y'), f(x',z'), f(y',z'), f(x',y'z')) = (pi, rho, sigma, 0).
// Throws SquareRootUnavailable when a scaling has no root in the field.
FixtriangleResult fixtriangle(const LieAlgebra& L, const Vector& x, const Vector& y, const Vector& z,
                              const FieldElement& pi, const FieldElement& rho, const FieldElement& sigma,
                              bool verify_span = true);

}  // namespace exlie
