#include "exlie/extremal.hpp"

namespace exlie {

namespace {

// c with w = c x, or nullopt.
std::optional<FieldElement> multiple_of(const Vector& w, const Vector& x) {
    std::size_t l = x.leading_index();
    if (l == x.size()) return std::nullopt;
    FieldElement c = w[l] / x[l];
    if (w != x * c) return std::nullopt;
    return c;
}

}  // namespace

FieldElement ExtremalCertificate::operator()(const Vector& y) const {
    FieldElement s = x.field().zero();
    for (std::size_t b = 0; b < y.size(); ++b)
        if (!y[b].is_zero()) s.add_mul(y[b], values[b]);
    return s;
}

std::optional<ExtremalCertificate> is_extremal(const LieAlgebra& L, const Vector& x) {
    if (x.is_zero()) throw ZeroElement("is_extremal: zero element");
    Matrix A = L.ad(x);
    ExtremalCertificate cert{x, {}, A.is_zero()};
    for (std::size_t b = 0; b < L.dim(); ++b) {
        Vector w = A * A.col(b);
        auto c = multiple_of(w, x);
        if (!c) return std::nullopt;
        cert.values.push_back(*c);
    }
    return cert;
}

FieldElement extremal_form(const LieAlgebra& L, const Vector& x, const Vector& y) {
    if (x.is_zero()) throw ZeroElement("extremal_form: zero element");
    Vector w = L.bracket(x, L.bracket(x, y));
    auto c = multiple_of(w, x);
    if (!c) throw NotExtremal("[x, [x, y]] is not a multiple of x");
    return *c;
}

FieldElement extremal_form(const ExtremalCertificate& cx, const Vector& y) { return cx(y); }

std::string pair_kind_name(PairKind k) {
    switch (k) {
        case PairKind::Proportional: return "proportional";
        case PairKind::Abelian2: return "abelian";
        case PairKind::Heisenberg: return "heisenberg";
        default: return "sl2";
    }
}

PairClass classify_pair(const LieAlgebra& L, const Vector& x, const Vector& y) {
    FieldElement f = extremal_form(L, x, y);
    extremal_form(L, y, x);  // y must be extremal too
    PairKind k;
    std::size_t expect;
    if (multiple_of(y, x)) {
        k = PairKind::Proportional;
        expect = 1;
    } else if (L.bracket(x, y).is_zero()) {
        k = PairKind::Abelian2;
        expect = 2;
    } else {
        k = f.is_zero() ? PairKind::Heisenberg : PairKind::Sl2;
        expect = 3;
    }
    std::size_t d = subalgebra_closure(L, {x, y}).dim();
    if (d != expect)
        throw Error("classify_pair: " + pair_kind_name(k) + " pair generates a subalgebra of dimension " +
                    std::to_string(d));
    return {k, f};
}

PremetReport check_premet(const LieAlgebra& L, const Vector& x, const Vector& y, const Vector& z,
                          bool z_extremal) {
    auto br = [&](const Vector& a, const Vector& b) { return L.bracket(a, b); };
    auto f = [&](const Vector& a, const Vector& b) { return extremal_form(L, a, b); };
    auto fail = [](const std::string& id) { throw IdentityViolation(id + " fails on the sampled triple"); };
    const FieldElement two = L.field().from_int(2);
    Vector xy = br(x, y), xz = br(x, z), yz = br(y, z);
    FieldElement fxyz = f(x, yz), fxz = f(x, z), fxy = f(x, y);

    PremetReport rep;
    // P1: 2 (xy) x z = f(x,yz) x + f(x,z) xy - f(x,y) xz
    if (br(xy, xz) * two != x * fxyz + xy * fxz - xz * fxy) fail("P1");
    // P2: 2 x y x z = f(x,yz) x - f(x,z) xy - f(x,y) xz
    if (br(x, br(y, xz)) * two != x * fxyz - xy * fxz - xz * fxy) fail("P2");
    // P5: f(x, y x z) = -f(x,z) f(x,y)
    if (f(x, br(y, xz)) != -(fxz * fxy)) fail("P5");
    rep.checked = 3;
    if (z_extremal) {
        // AS: f(x, yz) = f(xy, z), the right side read through z
        if (fxyz != f(z, xy)) fail("AS");
        // SM: f(x, z) = f(z, x)
        if (fxz != f(z, x)) fail("SM");
        rep.checked += 2;
        rep.symmetric_checked = true;
    }
    return rep;
}

Matrix exp_ad(const LieAlgebra& L, const FieldElement& t, const Vector& a) {
    if (a.is_zero()) throw ZeroElement("exp_ad: zero element");
    Matrix A = L.ad(a);
    Matrix A2 = A * A;
    for (std::size_t b = 0; b < L.dim(); ++b)
        if (!multiple_of(A2.col(b), a)) throw NotExtremal("exp_ad: element is not extremal");
    if (!(A * A2).is_zero()) throw NotExtremal("exp_ad: (ad a)^3 != 0");
    Field F = L.field();
    Matrix E = Matrix::identity(F, L.dim());
    E.add_scaled(t, A);
    E.add_scaled(t * t / F.from_int(2), A2);
    return E;
}

Vector exp_ad_apply(const LieAlgebra& L, const FieldElement& t, const Vector& a, const Vector& v) {
    Vector av = L.bracket(a, v);
    Vector out = v + av * t;
    out.add_scaled(t * t / L.field().from_int(2), L.bracket(a, av));
    return out;
}

FixtriangleResult fixtriangle(const LieAlgebra& L, const Vector& x0, const Vector& y, const Vector& z,
                              const FieldElement& pi, const FieldElement& rho, const FieldElement& sigma,
                              bool verify_span) {
    Field F = L.field();
    if (pi.is_zero() || rho.is_zero() || sigma.is_zero()) throw HypothesisViolated("fixtriangle: zero target value");
    auto f = [&](const Vector& a, const Vector& b) { return extremal_form(L, a, b); };
    const FieldElement two = F.from_int(2);
    FieldElement fxy = f(x0, y), fyz = f(y, z), fxz = f(x0, z), fxyz = f(x0, L.bracket(y, z));
    if (fxy.is_zero() || fyz.is_zero()) throw HypothesisViolated("fixtriangle: f(x,y) f(y,z) = 0");
    if (fxyz * fxyz == two * fxy * fxz * fyz)
        throw HypothesisViolated("fixtriangle: f(x,yz)^2 = 2 f(x,y) f(x,z) f(y,z)");

    FixtriangleResult out;
    FixtriangleTranscript& tr = out.transcript;
    tr.s = fxyz / (fxy * fyz);
    Vector x = exp_ad_apply(L, tr.s, y, x0);
    fxz = f(x, z);
    tr.scale_x = require_sqrt(pi * rho * fyz / (sigma * fxy * fxz), "fixtriangle scaling of x");
    tr.scale_y = require_sqrt(pi * sigma * fxz / (rho * fxy * fyz), "fixtriangle scaling of y");
    tr.scale_z = require_sqrt(rho * sigma * fxy / (pi * fxz * fyz), "fixtriangle scaling of z");
    out.x = x * tr.scale_x;
    out.y = y * tr.scale_y;
    out.z = z * tr.scale_z;

    bool bad_xy = f(out.x, out.y) != pi, bad_xz = f(out.x, out.z) != rho, bad_yz = f(out.y, out.z) != sigma;
    if (bad_xy && bad_xz) {
        out.x = -out.x;
        tr.negated = 'x';
    } else if (bad_xy && bad_yz) {
        out.y = -out.y;
        tr.negated = 'y';
    } else if (bad_xz && bad_yz) {
        out.z = -out.z;
        tr.negated = 'z';
    }
    if (f(out.x, out.y) != pi || f(out.x, out.z) != rho || f(out.y, out.z) != sigma ||
        !f(out.x, L.bracket(out.y, out.z)).is_zero())
        throw Error("internal: fixtriangle post-condition failed");
    if (verify_span) {
        EchelonBasis before = subalgebra_closure(L, {x0, y, z});
        EchelonBasis after = subalgebra_closure(L, {out.x, out.y, out.z});
        bool same = before.dim() == after.dim();
        for (const auto& r : after.rows()) same = same && before.contains(r);
        if (!same) throw Error("internal: fixtriangle changed the generated subalgebra");
    }
    return out;
}

}  // namespace exlie
