#include "acceptance.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "exlie/certify.hpp"
#include "exlie/presentation.hpp"

namespace exlie::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

const Field P = Field::prime(kDefaultPrime);

struct Rng {
    std::mt19937_64 g;
    long long in(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(g); }
    std::size_t below(std::size_t k) { return static_cast<std::size_t>(g() % k); }
};

Vector random_vector(Field F, std::size_t n, Rng& r, long long range) {
    Vector v(F, n);
    for (std::size_t i = 0; i < n; ++i) v[i] = F.from_int(r.in(-range, range));
    return v;
}

// A random element of the exp_ad orbit of a generator.
Vector random_extremal(const LieAlgebra& L, const std::vector<Vector>& g, Rng& r) {
    Vector x = g[r.below(g.size())];
    for (int k = 0; k < 3; ++k) x = exp_ad_apply(L, L.field().from_int(r.in(-9, 9)), g[r.below(g.size())], x);
    return x;
}

struct Case {
    std::string name;
    Family family;
    int n;
    RealizationParams params;
    std::size_t expected;
};

RealizationParams dp(Field F, long long a, long long b) {
    RealizationParams p;
    p.alpha = F.from_int(a);
    p.beta = F.from_int(b);
    return p;
}

RealizationParams bp(Field F, long long g) {
    RealizationParams p;
    p.gamma = F.from_int(g);
    return p;
}

std::vector<Case> realization_cases(Field F) {
    return {{"C6", Family::C, 6, {}, 21},        {"A5", Family::A, 5, {}, 24},
            {"B5(1)", Family::B, 5, bp(F, 1), 36}, {"B6(1)", Family::B, 6, bp(F, 1), 55},
            {"D5(2,3)", Family::D, 5, dp(F, 2, 3), 45}, {"D6(2,3)", Family::D, 6, dp(F, 2, 3), 66}};
}

std::vector<Vector> conjugate(const LieAlgebra& L, std::vector<Vector> g, Rng& r) {
    std::vector<Vector> base = g;
    for (int k = 0; k < 4; ++k) {
        Matrix E = exp_ad(L, L.field().from_int(r.in(1, 9)), base[r.below(base.size())]);
        for (auto& v : g) v = E * v;
    }
    for (auto& v : g) v = v * L.field().from_int(r.in(1, 9));
    return g;
}

// ---------------------------------------------------------------- 1

CriterionResult c1(const Options& opt) {
    CriterionResult res{1, "abstract presentation dimensions", true, ""};
    struct A {
        Family f;
        int n;
        std::size_t dim;
    };
    std::vector<A> cases{{Family::D, 5, 45}, {Family::B, 5, 36}, {Family::A, 5, 24}, {Family::C, 4, 10}, {Family::C, 6, 21}};
    if (!opt.quick) cases.push_back({Family::A, 7, 48});
    for (const auto& c : cases) {
        PresentationInput in;
        in.graph = build_family_graph(c.f, c.n);
        GradedLieAlgebra L = build_L0(in);
        res.pass = res.pass && L.dim() == c.dim;
        res.detail += family_name(c.f) + std::to_string(c.n) + "=" + std::to_string(L.dim()) + " ";
    }
    return res;
}

// ---------------------------------------------------------------- 2, 3, 4

struct Built {
    Case c;
    BuiltRealization B;
};

CriterionResult c2(const std::vector<Built>& built) {
    CriterionResult res{2, "realization dimensions", true, ""};
    for (const auto& b : built) {
        bool ok = b.B.L.dim() == b.c.expected;
        res.pass = res.pass && ok;
        res.detail += b.c.name + "=" + std::to_string(b.B.L.dim()) + (ok ? "" : "(expected " + std::to_string(b.c.expected) + ")") + " ";
    }
    return res;
}

CriterionResult c3(const std::vector<Built>& built) {
    CriterionResult res{3, "graph realization", true, ""};
    for (const auto& b : built) {
        GraphCheck g = graph_realization_check(b.B.L, b.B.gens, build_family_graph(b.c.family, b.c.n));
        res.pass = res.pass && g.ok;
        res.detail += b.c.name + (g.ok ? ":ok " : ":fail ");
    }
    return res;
}

CriterionResult c4(const std::vector<Built>& built, Rng& r) {
    CriterionResult res{4, "catalog basis", true, ""};
    for (const auto& b : built) {
        const int n = b.c.n;
        const LieAlgebra& L = b.B.L;
        EchelonBasis span(L.field(), L.dim());
        for (const auto& e : catalog(b.c.family, n).entries) span.add(evaluate_monomial(L, b.B.gens, e.word));
        int inside = 0;
        for (int t = 0; t < 100; ++t) {
            Monomial w(1 + r.below(2 * n - 3));
            for (auto& i : w) i = 1 + static_cast<int>(r.below(n));
            inside += span.contains(evaluate_monomial(L, b.B.gens, w));
        }
        bool ok = span.dim() == static_cast<std::size_t>(expected_catalog_size(b.c.family, n)) && inside == 100;
        res.pass = res.pass && ok;
        res.detail += b.c.name + ":rank " + std::to_string(span.dim()) + "/" +
                      std::to_string(expected_catalog_size(b.c.family, n)) + ",span " + std::to_string(inside) + "/100 ";
    }
    return res;
}

// ---------------------------------------------------------------- 5

CriterionResult c5(Rng& r) {
    CriterionResult res{5, "Premet and form identities", true, ""};
    // sl5, and o10 from a full-dimensional D(5) parameter pair
    std::vector<std::pair<std::string, BuiltRealization>> algs;
    algs.emplace_back("sl5", build_realization(Family::A, 5, {}, P));
    algs.emplace_back("o10", build_realization(Family::D, 5, dp(P, 4, 8), P));
    for (const auto& [name, B] : algs) {
        int passed = 0;
        for (int t = 0; t < 100; ++t) {
            Vector x = random_extremal(B.L, B.gens, r), z = random_extremal(B.L, B.gens, r);
            Vector y = random_vector(P, B.L.dim(), r, 50);
            try {
                PremetReport rep = check_premet(B.L, x, y, z, true);
                passed += rep.symmetric_checked;
            } catch (const IdentityViolation&) {
            }
        }
        res.pass = res.pass && passed == 100 && B.L.dim() == (name == "sl5" ? 24u : 45u);
        res.detail += name + "(dim " + std::to_string(B.L.dim()) + "):" + std::to_string(passed) + "/100 ";
    }
    return res;
}

// ---------------------------------------------------------------- 6, 7

// Isotropic coordinate lines of the standard split form on F^{2k}: pairs of
// distinct basis vectors other than {e_i, f_i}.
std::vector<std::pair<std::size_t, std::size_t>> coordinate_lines(std::size_t k) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < 2 * k; ++a)
        for (std::size_t b = a + 1; b < 2 * k; ++b)
            if (b != a + k) out.push_back({a, b});
    return out;
}

// A random element of the group generated by Siegel transvections.
Matrix random_orthogonal(const BilinearForm& B, Rng& r) {
    const std::size_t N = B.dim();
    Field F = B.matrix.field();
    auto lines = coordinate_lines(N / 2);
    Matrix g = Matrix::identity(F, N);
    for (int s = 0; s < 12; ++s) {
        auto [a, b] = lines[r.below(lines.size())];
        Matrix T = siegel(SiegelLine{Vector::unit(F, N, a), Vector::unit(F, N, b)}, B) * F.from_int(r.in(-9, 9));
        // exp T = 1 + T + T^2/2
        g = (Matrix::identity(F, N) + T + T * T * F.from_int(2).inv()) * g;
    }
    return g;
}

SiegelLine image(const Matrix& g, const SiegelLine& l) { return {g * l.u, g * l.v}; }

CriterionResult c6(Rng& r) {
    CriterionResult res{6, "pair classification coherence", true, ""};
    // transvection pairs in sl5, biased towards each relative position
    {
        auto kill = [](Vector h, const Vector& x) {
            std::size_t j = x.leading_index();
            h[j] = h[j] - x.dot(h) / x[j];
            return h;
        };
        int agree = 0, counted = 0;
        while (counted < 200) {
            Vector x = random_vector(P, 5, r, 2);
            if (x.is_zero()) continue;
            Vector h = kill(random_vector(P, 5, r, 2), x), y = random_vector(P, 5, r, 2), k;
            switch (counted % 5) {
                case 0: y = x * P.from_int(r.in(1, 5)); k = h * P.from_int(r.in(1, 5)); break;
                case 1: y = x; k = kill(random_vector(P, 5, r, 2), x); break;
                case 2: if (y.is_zero()) continue; k = kill(h, y); break;
                default: if (y.is_zero()) continue; k = kill(random_vector(P, 5, r, 2), y); break;
            }
            if (h.is_zero() || k.is_zero()) continue;
            Matrix a = transvection(x, h), b = transvection(y, k);
            MatrixLieAlgebra L = lie_closure({a, b});
            agree += classify_transvection_pair_geometric({x, h}, {y, k}) ==
                     classify_pair(L, L.coordinates(a), L.coordinates(b)).kind;
            ++counted;
        }
        res.pass = res.pass && agree == 200;
        res.detail += "transvection " + std::to_string(agree) + "/200 ";
    }
    // Siegel pairs in o10
    {
        auto B = BilinearForm::orthogonal(P, 10);
        auto lines = coordinate_lines(5);
        const SiegelLine base{Vector::unit(P, 10, 0), Vector::unit(P, 10, 1)};
        int agree = 0;
        int kinds[4] = {0, 0, 0, 0};
        for (int t = 0; t < 200; ++t) {
            Matrix g = random_orthogonal(B, r);
            SiegelLine l1 = image(g, base), l2;
            if (t % 2 == 0) {
                auto [a, b] = lines[r.below(lines.size())];
                l2 = image(g, SiegelLine{Vector::unit(P, 10, a), Vector::unit(P, 10, b)});
            } else {
                l2 = image(random_orthogonal(B, r), base);
            }
            Matrix a = siegel(l1, B), b = siegel(l2, B);
            MatrixLieAlgebra L = lie_closure({a, b});
            PairKind geo = classify_siegel_pair_geometric(l1, l2, B);
            agree += geo == classify_pair(L, L.coordinates(a), L.coordinates(b)).kind;
            ++kinds[static_cast<int>(geo)];
        }
        res.pass = res.pass && agree == 200;
        res.detail += "siegel " + std::to_string(agree) + "/200 (";
        for (int k = 0; k < 4; ++k) res.detail += pair_kind_name(static_cast<PairKind>(k)) + ":" + std::to_string(kinds[k]) + (k < 3 ? "," : ") ");
    }
    // sp6
    {
        auto S = BilinearForm::symplectic(P, 6);
        int heis = 0;
        for (int t = 0; t < 200; ++t) {
            Vector y1 = random_vector(P, 6, r, 2), y2 = random_vector(P, 6, r, 2);
            if (t % 2) y2 = y1 * P.from_int(r.in(1, 5)) + Vector::unit(P, 6, r.below(6));
            if (y1.is_zero() || y2.is_zero()) {
                --t;
                continue;
            }
            Matrix a = symplectic_transvection(y1, S), b = symplectic_transvection(y2, S);
            MatrixLieAlgebra L = lie_closure({a, b});
            heis += classify_pair(L, L.coordinates(a), L.coordinates(b)).kind == PairKind::Heisenberg;
        }
        res.pass = res.pass && heis == 0;
        res.detail += "sp6 heisenberg " + std::to_string(heis) + "/200 ";
    }
    // the extraspecial line T_{u1 + 2 u3, v1 + 2(1+alpha) v3 + 2(alpha+2) lambda u3} in o10 and o9
    for (auto [name, R] : {std::pair{std::string("o10"), generators_D(5, P.from_int(4), P.from_int(8), P)},
                           std::pair{std::string("o9"), generators_B(5, P.one(), P)}}) {
        MatrixLieAlgebra L = lie_closure(R.gens);
        Matrix m = exp_ad_matrix(R.gens[2], P.from_int(2), R.gens[0]);
        FieldElement a = R.params.alpha ? *R.params.alpha : P.zero();
        FieldElement lam = R.params.lambda ? *R.params.lambda : P.zero();
        const auto& l = R.lines;
        SiegelLine expect{l[0].u + l[2].u * P.from_int(2),
                          l[0].v + l[2].v * (P.from_int(2) * (P.one() + a)) + l[2].u * (P.from_int(2) * (a + P.from_int(2)) * lam)};
        bool ok = m == siegel(expect, *R.form) &&
                  classify_pair(L, L.coordinates(m), L.coordinates(R.gens[1])).kind == PairKind::Heisenberg;
        res.pass = res.pass && ok;
        res.detail += name + (ok ? ":heisenberg " : ":fail ");
    }
    return res;
}

CriterionResult c7(Rng& r) {
    CriterionResult res{7, "exp-action law", true, ""};
    auto B = BilinearForm::orthogonal(P, 10);
    const SiegelLine base{Vector::unit(P, 10, 0), Vector::unit(P, 10, 1)};
    int ok = 0;
    for (int t = 0; t < 100; ++t) {
        SiegelLine l1 = image(random_orthogonal(B, r), base), l2 = image(random_orthogonal(B, r), base);
        Matrix T = siegel(l1, B);
        FieldElement s = P.from_int(r.in(-1000, 1000));
        Matrix lhs = exp_ad_matrix(T, s, siegel(l2, B));
        ok += lhs == siegel(SiegelLine{l2.u + (T * l2.u) * s, l2.v + (T * l2.v) * s}, B);
    }
    res.pass = ok == 100;
    res.detail = std::to_string(ok) + "/100";
    return res;
}

// ---------------------------------------------------------------- 8

CriterionResult c8(Rng& r) {
    CriterionResult res{8, "fixtriangle contract", true, ""};
    BuiltRealization A = build_realization(Family::A, 5, {}, P);
    const LieAlgebra& L = A.L;
    int valid = 0, ok = 0, resampled = 0;
    while (valid < 50) {
        Vector x = random_extremal(L, A.gens, r), y = random_extremal(L, A.gens, r), z = random_extremal(L, A.gens, r);
        FieldElement pi = P.from_int(r.in(1, 20)), rho = P.from_int(r.in(1, 20)), sigma = P.from_int(r.in(1, 20));
        FixtriangleResult out;
        try {
            out = fixtriangle(L, x, y, z, pi, rho, sigma, false);
        } catch (const HypothesisViolated&) {
            continue;
        } catch (const SquareRootUnavailable&) {
            ++resampled;
            continue;
        }
        ++valid;
        auto f = [&](const Vector& a, const Vector& b) { return extremal_form(L, a, b); };
        bool quad = f(out.x, out.y) == pi && f(out.x, out.z) == rho && f(out.y, out.z) == sigma &&
                    f(out.x, L.bracket(out.y, out.z)).is_zero();
        EchelonBasis before = subalgebra_closure(L, {x, y, z}), after = subalgebra_closure(L, {out.x, out.y, out.z});
        ok += quad && before.dim() == after.dim();
    }
    res.pass = ok == 50;
    res.detail = std::to_string(ok) + "/50 (" + std::to_string(resampled) + " resampled for a missing root)";
    BuiltRealization D = build_realization(Family::D, 5, dp(P, 2, 3), P);
    const FieldElement alpha = P.from_int(2);
    try {
        FixtriangleResult t = fixtriangle(D.L, D.gens[0], D.gens[1], D.gens[2], P.from_int(-8), P.one(), P.from_int(2));
        bool s_ok = t.transcript.s == alpha / P.from_int(4);
        res.pass = res.pass && s_ok;
        res.detail += "; D(5;2,3) s=" + t.transcript.s.to_string() + (s_ok ? " = alpha/4" : " != alpha/4");
    } catch (const SquareRootUnavailable&) {
        Field K = P.adjoin_sqrt(P.from_int(2));
        BuiltRealization DK = build_realization(Family::D, 5, dp(K, 2, 3), K);
        FixtriangleResult t = fixtriangle(DK.L, DK.gens[0], DK.gens[1], DK.gens[2], K.from_int(-8), K.one(), K.from_int(2));
        bool s_ok = t.transcript.s == K.from_int(2) / K.from_int(4);
        res.pass = res.pass && s_ok;
        res.detail += "; D(5;2,3) s=" + t.transcript.s.to_string() + (s_ok ? " = alpha/4" : " != alpha/4");
    }
    return res;
}

// ---------------------------------------------------------------- 9

CriterionResult c9(Rng& r) {
    CriterionResult res{9, "matching pipeline", true, ""};
    auto attempt = [&](const std::string& name, Family fam, const LieAlgebra& L1, const std::vector<Vector>& g1,
                       const LieAlgebra& L2, const std::vector<Vector>& g2) {
        try {
            IsomorphismCertificate c = match_algebras(fam, {&L1, g1}, {&L2, g2});
            bool full = c.pairs_verified == L1.dim() * (L1.dim() - 1) / 2;
            res.pass = res.pass && full;
            res.detail += name + ":" + c.route + "," + std::to_string(c.pairs_verified) + " pairs ";
        } catch (const Error& e) {
            res.pass = false;
            res.detail += name + ":FAIL(" + e.what() + ") ";
        }
    };
    {
        BuiltRealization a = build_realization(Family::D, 5, dp(P, 2, 3), P), b = build_realization(Family::D, 5, dp(P, 4, 8), P);
        attempt("D(5;2,3)~D(5;4,8)", Family::D, a.L, a.gens, b.L, b.gens);
    }
    {
        BuiltRealization a = build_realization(Family::B, 6, bp(P, 1), P), b = build_realization(Family::B, 6, bp(P, 2), P);
        attempt("B(6;1)~B(6;2)", Family::B, a.L, a.gens, b.L, b.gens);
    }
    for (auto [name, fam, n] : {std::tuple{std::string("A5"), Family::A, 5}, std::tuple{std::string("C6"), Family::C, 6}}) {
        BuiltRealization a = build_realization(fam, n, {}, P);
        attempt(name + "~conj", fam, a.L, conjugate(a.L, a.gens, r), a.L, conjugate(a.L, a.gens, r));
    }
    return res;
}

// ---------------------------------------------------------------- 10

CriterionResult c10(Rng& r) {
    CriterionResult res{10, "parameter solvers", true, ""};
    for (long long g : {1, 2, 3}) {
        BuiltRealization B = build_realization(Family::B, 6, bp(P, g), P);
        Normalized N = normalize(Family::B, B.L, conjugate(B.L, B.gens, r), P);
        bool ok = solve_param_B(N.psi.values.back(), 6) == N.L.field().from_int(g);
        res.pass = res.pass && ok;
        res.detail += "B(6;" + std::to_string(g) + (ok ? "):ok " : "):fail ");
    }
    for (int n : {5, 6})
        for (auto [a, b] : {std::pair{2, 3}, std::pair{4, 8}}) {
            std::string name = "D(" + std::to_string(n) + ";" + std::to_string(a) + "," + std::to_string(b) + ")";
            try {
                BuiltRealization B = build_realization(Family::D, n, dp(P, a, b), P);
                Normalized N = normalize(Family::D, B.L, conjugate(B.L, B.gens, r), P);
                Field K = N.L.field();
                DSolution s = solve_params_D(N.psi.values.back(), N.psi.values[n - 4], n);
                bool ok = false;
                for (const auto& c : s.candidates) ok = ok || (c.alpha == K.from_int(a) && c.beta == K.from_int(b));
                res.pass = res.pass && ok;
                res.detail += name + (ok ? ":ok " : ":fail ");
            } catch (const Error& e) {
                res.pass = false;
                res.detail += name + ":FAIL(" + e.what() + ") ";
            }
        }
    // odd branch f_long = 8: alpha = 0, beta = -1 - f_short^2/16
    DSolution s = solve_params_D(P.from_int(8), P.from_int(4), 5);
    bool ok = s.branch == "alpha=0" && s.candidates.size() == 1 && s.candidates[0].alpha.is_zero() &&
              s.candidates[0].beta == P.from_int(-2);
    res.pass = res.pass && ok;
    res.detail += std::string("f_long=8 branch:") + (ok ? "ok" : "fail");
    return res;
}

CriterionResult timed(CriterionResult (*fn)(Rng&), Rng& r, double budget) {
    auto t0 = Clock::now();
    CriterionResult res = fn(r);
    double t = std::chrono::duration<double>(Clock::now() - t0).count();
    if (t > budget) {
        res.pass = false;
        res.detail += " [over the " + std::to_string(static_cast<int>(budget)) + " s budget]";
    }
    return res;
}

}  // namespace

std::string format_line(const CriterionResult& r) {
    std::ostringstream os;
    os << "criterion " << r.id << (r.id < 10 ? "  " : " ") << (r.pass ? "PASS" : "FAIL") << "  " << r.title << ": " << r.detail;
    std::string s = os.str();
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s;
}

std::vector<CriterionResult> run_all(const Options& opt, const std::function<void(const CriterionResult&)>& on_result) {
    std::vector<CriterionResult> out;
    auto emit = [&](CriterionResult r) {
        if (on_result) on_result(r);
        out.push_back(std::move(r));
    };
    Rng r{std::mt19937_64(opt.seed)};
    auto guarded = [&](int id, const char* title, auto fn) {
        try {
            emit(fn());
        } catch (const std::exception& e) {
            emit(CriterionResult{id, title, false, std::string("error: ") + e.what()});
        }
    };

    guarded(1, "abstract presentation dimensions", [&] {
        auto t0 = Clock::now();
        CriterionResult res = c1(opt);
        if (std::chrono::duration<double>(Clock::now() - t0).count() > 300) {
            res.pass = false;
            res.detail += " [over the 300 s budget]";
        }
        return res;
    });

    Field Q = Field::rationals();
    std::vector<Built> built;
    std::string build_error;
    auto t0 = Clock::now();
    try {
        for (const auto& c : realization_cases(Q)) built.push_back({c, build_realization(c.family, c.n, c.params, Q)});
    } catch (const std::exception& e) {
        build_error = e.what();
    }
    const double build_time = std::chrono::duration<double>(Clock::now() - t0).count();
    auto need_built = [&](int id, const char* title, auto fn) {
        guarded(id, title, [&] {
            if (!build_error.empty()) return CriterionResult{id, title, false, "error: " + build_error};
            return fn();
        });
    };
    need_built(2, "realization dimensions", [&] {
        CriterionResult res = c2(built);
        if (build_time > 120) {
            res.pass = false;
            res.detail += " [over the 120 s budget]";
        }
        return res;
    });
    need_built(3, "graph realization", [&] { return c3(built); });
    need_built(4, "catalog basis", [&] { return c4(built, r); });
    guarded(5, "Premet and form identities", [&] { return c5(r); });
    guarded(6, "pair classification coherence", [&] { return c6(r); });
    guarded(7, "exp-action law", [&] { return c7(r); });
    guarded(8, "fixtriangle contract", [&] { return c8(r); });
    guarded(9, "matching pipeline", [&] { return timed(c9, r, 300); });
    guarded(10, "parameter solvers", [&] { return c10(r); });
    return out;
}

}  // namespace exlie::acceptance
