#include "exlie/realizations.hpp"

namespace exlie {

BilinearForm BilinearForm::symplectic(Field F, std::size_t dim) {
    if (dim % 2) throw OddN("symplectic form needs even dimension");
    std::size_t m = dim / 2;
    Matrix M(F, dim, dim);
    for (std::size_t i = 0; i < m; ++i) {
        M(i, m + i) = F.one();
        M(m + i, i) = -F.one();
    }
    return {M, FormKind::Symplectic};
}

BilinearForm BilinearForm::orthogonal(Field F, std::size_t dim) {
    std::size_t k = dim / 2;
    Matrix M(F, dim, dim);
    for (std::size_t i = 0; i < k; ++i) {
        M(i, k + i) = F.one();
        M(k + i, i) = F.one();
    }
    if (dim % 2) M(2 * k, 2 * k) = F.from_int(2);
    return {M, FormKind::Orthogonal};
}

FieldElement BilinearForm::operator()(const Vector& u, const Vector& v) const { return u.dot(matrix * v); }

bool BilinearForm::preserves(const Matrix& A) const { return (A.transpose() * matrix + matrix * A).is_zero(); }

Matrix transvection(const Vector& x, const Vector& h) {
    if (x.is_zero() || h.is_zero()) throw ZeroElement("transvection: zero centre or axis");
    if (!h.dot(x).is_zero()) throw AxisThroughCentre("transvection: h(x) != 0");
    return Matrix::outer(x, h);
}

Matrix symplectic_transvection(const Vector& y, const BilinearForm& B) {
    if (B.kind != FormKind::Symplectic) throw InvalidField("symplectic_transvection: form is not symplectic");
    return Matrix::outer(y, B.matrix.transpose() * y);
}

Matrix siegel(const SiegelLine& l, const BilinearForm& B) {
    if (B.kind != FormKind::Orthogonal) throw NotIsotropic("siegel: form is not orthogonal");
    if (!B(l.u, l.u).is_zero() || !B(l.u, l.v).is_zero() || !B(l.v, l.v).is_zero())
        throw NotIsotropic("siegel: <u, v> is not totally isotropic");
    if (rref(Matrix::from_rows(l.u.field(), {l.u, l.v})).rank != 2) throw NotIsotropic("siegel: u, v dependent");
    Matrix Mt = B.matrix.transpose();
    return Matrix::outer(l.v, Mt * l.u) - Matrix::outer(l.u, Mt * l.v);
}

namespace {

// e_i and f_i for 1-based i in a space with e block of size k.
Vector e(Field F, std::size_t dim, int i) { return Vector::unit(F, dim, static_cast<std::size_t>(i - 1)); }
Vector f(Field F, std::size_t dim, std::size_t k, int i) {
    return Vector::unit(F, dim, k + static_cast<std::size_t>(i - 1));
}

struct DLines {
    std::vector<Vector> u, v;  // v_1 without the alpha f~ term
};

DLines d_lines(int n, const FieldElement& beta, Field F) {
    const std::size_t dim = 2 * static_cast<std::size_t>(n), k = static_cast<std::size_t>(n);
    DLines L;
    L.u.push_back(e(F, dim, 1) - e(F, dim, 2));
    L.v.push_back(f(F, dim, k, 1) + f(F, dim, k, 2));
    for (int i = 2; i < n; ++i) {
        L.u.push_back(e(F, dim, i - 1) + e(F, dim, i));
        L.v.push_back(f(F, dim, k, i - 1) - f(F, dim, k, i));
    }
    L.u.push_back(e(F, dim, n - 2) + f(F, dim, k, n - 1) * beta + e(F, dim, n));
    L.v.push_back(f(F, dim, k, n - 2) + e(F, dim, n - 1) - f(F, dim, k, n) * (F.one() + beta));
    return L;
}

Realization blank(Family fam, int n, Field F, std::optional<BilinearForm> form) {
    Realization R;
    R.family = R.params.family = fam;
    R.n = R.params.n = n;
    R.field = F;
    R.form = std::move(form);
    return R;
}

void check_n(Family fam, int n) {
    if (n < family_min_n(fam))
        throw BoundsViolation(family_name(fam) + " realization needs n >= " + std::to_string(family_min_n(fam)));
}

}  // namespace

Realization generators_A(int n, Field F) {
    if (n < 2) throw BoundsViolation("A realization needs n >= 2");
    const std::size_t dim = static_cast<std::size_t>(n);
    Realization R = blank(Family::A, n, F, std::nullopt);
    for (int i = 1; i <= n; ++i) {
        TransvectionData t;
        if (i == 1) {
            t = {e(F, dim, 1) - e(F, dim, 2), e(F, dim, 1) + e(F, dim, 2)};
        } else {
            t = {e(F, dim, i - 1) + e(F, dim, i), e(F, dim, i - 1) - e(F, dim, i)};
        }
        R.gens.push_back(transvection(t.x, t.h));
        R.transvections.push_back(t);
    }
    return R;
}

Realization generators_C(int n, Field F) {
    if (n < 2) throw BoundsViolation("C realization needs n >= 2");
    if (n % 2) throw OddN("C realization needs even n, got " + std::to_string(n));
    const std::size_t dim = static_cast<std::size_t>(n);
    const int h = n / 2;
    Realization R = blank(Family::C, n, F, BilinearForm::symplectic(F, dim));
    for (int i = 1; i <= n; ++i) {
        int l = (i + 1) / 2;
        Vector y = (i % 2) ? e(F, dim, l) : (i == n ? e(F, dim, n) : e(F, dim, l + h) + e(F, dim, l + h + 1));
        R.centres.push_back(y);
        R.gens.push_back(symplectic_transvection(y, *R.form));
    }
    return R;
}

Vector derive_tilde_f(int n, const FieldElement& beta, const FieldElement& kappa, Field F, std::string* source) {
    if (n < 5) throw BoundsViolation("derive_tilde_f needs n >= 5");
    if (kappa * kappa != F.one() + beta) throw ParameterDegenerate("kappa^2 != 1 + beta");
    const std::size_t dim = 2 * static_cast<std::size_t>(n), k = static_cast<std::size_t>(n);
    const bool odd = n % 2;
    const FieldElement c = F.one() + beta + kappa;
    if (!odd && c.is_zero()) throw ParameterDegenerate("1 + beta + kappa = 0");
    BilinearForm B = BilinearForm::orthogonal(F, dim);
    DLines L = d_lines(n, beta, F);
    const FieldElement v3_target = odd ? -F.one() : kappa / c;

    auto satisfies = [&](const Vector& t) {
        if (!B(t, t).is_zero()) return false;
        for (int i = 1; i <= n; ++i) {
            if (B(t, L.u[i - 1]) != (i == 3 ? F.one() : F.zero())) return false;
            if (B(t, L.v[i - 1]) != (i == 3 ? v3_target : F.zero())) return false;
        }
        for (std::size_t z : {std::size_t{0}, std::size_t{1}, k, k + 1})
            if (!t[z].is_zero()) return false;
        return true;
    };

    Vector listing(F, dim);
    if (odd) {
        for (int i = 3; i < n; ++i) listing[i - 1] = F.one();
        listing[k + 2] = F.one();
        for (int i = 4; i < n; ++i) listing[k + i - 1] = -F.one();
        listing[k + n - 1] = -F.one() - beta;
    } else {
        for (int i = 3; i < n; ++i) listing[i - 1] = -kappa;
        listing[n - 1] = F.one();
        for (int i = 3; i < n; ++i) listing[k + i - 1] = (i % 2) ? c : -c;
        listing[k + n - 1] = (beta + F.one()) * (kappa + F.one());
        listing = listing * c.inv();
    }
    if (satisfies(listing)) {
        if (source) *source = "listing";
        return listing;
    }

    // Linear conditions, then isotropy along one kernel direction.
    std::vector<Vector> rows;
    Vector rhs(F, 2 * k + 4);
    std::size_t r = 0;
    for (int i = 1; i <= n; ++i) {
        rows.push_back(B.matrix * L.u[i - 1]);
        rhs[r++] = i == 3 ? F.one() : F.zero();
        rows.push_back(B.matrix * L.v[i - 1]);
        rhs[r++] = i == 3 ? v3_target : F.zero();
    }
    for (std::size_t z : {std::size_t{0}, std::size_t{1}, k, k + 1}) {
        rows.push_back(Vector::unit(F, dim, z));
        rhs[r++] = F.zero();
    }
    auto sol = solve(Matrix::from_rows(F, rows), rhs);
    if (!sol) throw NoSolution("tilde f: linear conditions are inconsistent");
    Vector p = sol->particular;
    if (satisfies(p)) {
        if (source) *source = "solved";
        return p;
    }
    const FieldElement two = F.from_int(2);
    for (const Vector& kv : sol->homogeneous) {
        FieldElement a = B(kv, kv), b = B(p, kv) * two, c0 = B(p, p);
        std::optional<FieldElement> t;
        if (a.is_zero()) {
            if (!b.is_zero()) t = -c0 / b;
        } else if (auto s = (b * b - a * c0 * F.from_int(4)).sqrt()) {
            t = (-b + *s) / (a * two);
        }
        if (t) {
            Vector cand = p + kv * *t;
            if (satisfies(cand)) {
                if (source) *source = "solved";
                return cand;
            }
        }
    }
    throw NoSolution("tilde f: no isotropic solution of the linear conditions");
}

Realization generators_D(int n, const FieldElement& alpha, const FieldElement& beta, Field F) {
    check_n(Family::D, n);
    const FieldElement one = F.one(), two = F.from_int(2);
    std::vector<std::string> bad;
    if (((alpha + two) * beta * (beta + one)).is_zero()) bad.push_back("(alpha+2) beta (beta+1) != 0");
    if (!bad.empty()) throw ParameterDegenerate("D parameters violate " + bad[0]);
    FieldElement kappa = require_sqrt(one + beta, "kappa = sqrt(1 + beta)");
    FieldElement lambda;
    if (n % 2) {
        lambda = alpha / (alpha + two);
    } else {
        FieldElement c = one + beta + kappa;
        if (c.is_zero()) throw ParameterDegenerate("D parameters violate 1 + beta + kappa != 0");
        lambda = -(alpha * kappa) / ((alpha + two) * c);
    }
    if (lambda * (two - beta + lambda * beta) == one)
        throw ParameterDegenerate("D parameters violate lambda (2 - beta + lambda beta) != 1");

    const std::size_t dim = 2 * static_cast<std::size_t>(n);
    Realization R = blank(Family::D, n, F, BilinearForm::orthogonal(F, dim));
    std::string src;
    Vector tf = derive_tilde_f(n, beta, kappa, F, &src);
    R.params.alpha = alpha;
    R.params.beta = beta;
    R.params.kappa = kappa;
    R.params.lambda = lambda;
    R.params.tilde_f = tf;
    R.params.tilde_f_source = src;
    DLines L = d_lines(n, beta, F);
    L.v[0].add_scaled(alpha, tf);
    for (int i = 0; i < n; ++i) {
        R.lines.push_back({L.u[i], L.v[i]});
        R.gens.push_back(siegel(R.lines.back(), *R.form));
    }
    return R;
}

Realization generators_B(int n, const FieldElement& gamma, Field F) {
    check_n(Family::B, n);
    const FieldElement one = F.one();
    if ((gamma * (gamma + one)).is_zero()) throw ParameterDegenerate("B parameters violate gamma (gamma+1) != 0");
    const std::size_t k = static_cast<std::size_t>(n - 1), dim = 2 * k + 1;
    Realization R = blank(Family::B, n, F, BilinearForm::orthogonal(F, dim));
    R.params.gamma = gamma;
    Vector g = Vector::unit(F, dim, 2 * k);
    std::vector<SiegelLine> lines;
    lines.push_back({e(F, dim, 1) - e(F, dim, 2), f(F, dim, k, 1) + f(F, dim, k, 2)});
    for (int i = 2; i < n; ++i)
        lines.push_back({e(F, dim, i - 1) + e(F, dim, i), f(F, dim, k, i - 1) - f(F, dim, k, i)});
    lines.push_back({e(F, dim, n - 2) * gamma + f(F, dim, k, n - 2) + e(F, dim, n - 1) * gamma - f(F, dim, k, n - 1),
                     e(F, dim, n - 2) - f(F, dim, k, n - 2) + e(F, dim, n - 1) * (one - gamma) + g});
    for (const auto& l : lines) {
        R.lines.push_back(l);
        R.gens.push_back(siegel(l, *R.form));
    }
    return R;
}

Vector MatrixLieAlgebra::coordinates(const Matrix& m) const {
    auto c = span_.coordinates(m.flatten());
    if (!c) throw DimensionMismatch("matrix lies outside the algebra");
    return *c;
}

Matrix MatrixLieAlgebra::to_matrix(const Vector& c) const {
    Matrix m(field(), N_, N_);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!c[i].is_zero()) m.add_scaled(c[i], basis_[i]);
    return m;
}

MatrixLieAlgebra lie_closure(const std::vector<Matrix>& gens) {
    if (gens.empty()) throw DimensionMismatch("lie_closure: no generators");
    Field F = gens[0].field();
    const std::size_t N = gens[0].rows();
    for (const auto& g : gens)
        if (g.rows() != N || g.cols() != N) throw DimensionMismatch("lie_closure: generator shapes differ");
    EchelonBasis E(F, N * N);
    std::vector<Matrix> elems, fresh;
    for (const auto& g : gens)
        if (E.add(g.flatten())) fresh.push_back(g);
    while (!fresh.empty()) {
        std::vector<Matrix> next;
        for (const auto& a : fresh) {
            for (const auto& b : elems) {
                Matrix c = commutator(a, b);
                if (E.add(c.flatten())) next.push_back(c);
            }
            elems.push_back(a);
        }
        fresh = std::move(next);
    }
    MatrixLieAlgebra A;
    static_cast<LieAlgebra&>(A) = LieAlgebra(F, E.dim());
    A.N_ = N;
    A.span_ = E;
    for (const auto& r : E.rows()) A.basis_.push_back(Matrix::unflatten(r, N, N));
    for (std::size_t i = 0; i < E.dim(); ++i)
        for (std::size_t j = i + 1; j < E.dim(); ++j)
            A.set_bracket(i, j, E.coordinates_unchecked(commutator(A.basis_[i], A.basis_[j]).flatten()));
    return A;
}

Matrix exp_ad_matrix(const Matrix& a, const FieldElement& t, const Matrix& Y) {
    Matrix c1 = commutator(a, Y), c2 = commutator(a, c1);
    if (!commutator(a, c2).is_zero()) throw NotExtremal("exp_ad_matrix: (ad a)^3 Y != 0");
    Matrix out = Y;
    out.add_scaled(t, c1);
    out.add_scaled(t * t / t.field().from_int(2), c2);
    return out;
}

namespace {

bool dependent(const Vector& a, const Vector& b) {
    return rref(Matrix::from_rows(a.field(), {a, b})).rank < 2;
}

}  // namespace

PairKind classify_transvection_pair_geometric(const TransvectionData& t1, const TransvectionData& t2) {
    bool same_centre = dependent(t1.x, t2.x), same_axis = dependent(t1.h, t2.h);
    if (same_centre && same_axis) return PairKind::Proportional;
    if (same_centre || same_axis) return PairKind::Abelian2;
    bool x_in_k = t2.h.dot(t1.x).is_zero(), y_in_h = t1.h.dot(t2.x).is_zero();
    if (x_in_k && y_in_h) return PairKind::Abelian2;
    if (x_in_k || y_in_h) return PairKind::Heisenberg;
    return PairKind::Sl2;
}

PairKind classify_siegel_pair_geometric(const SiegelLine& l1, const SiegelLine& l2, const BilinearForm& B) {
    Field F = l1.u.field();
    std::size_t span = rref(Matrix::from_rows(F, {l1.u, l1.v, l2.u, l2.v})).rank;
    if (span == 2) return PairKind::Proportional;
    if (span == 3) return PairKind::Abelian2;
    Matrix G(F, 2, 2);
    G(0, 0) = B(l1.u, l2.u);
    G(0, 1) = B(l1.u, l2.v);
    G(1, 0) = B(l1.v, l2.u);
    G(1, 1) = B(l1.v, l2.v);
    switch (G.rank()) {
        case 0: return PairKind::Abelian2;
        case 1: return PairKind::Heisenberg;
        default: return PairKind::Sl2;
    }
}

}  // namespace exlie
