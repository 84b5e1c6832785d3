#include <algorithm>
#include <random>

#include "doctest.h"
#include "exlie/certify.hpp"

using namespace exlie;

namespace {

const Field P = Field::prime(kDefaultPrime);

RealizationParams d_params(Field F, long long a, long long b) {
    RealizationParams p;
    p.alpha = F.from_int(a);
    p.beta = F.from_int(b);
    return p;
}

RealizationParams b_params(Field F, long long g) {
    RealizationParams p;
    p.gamma = F.from_int(g);
    return p;
}

// Moves the generators by inner automorphisms and rescales them.
std::vector<Vector> conjugate(const LieAlgebra& L, std::vector<Vector> g) {
    const std::size_t n = g.size();
    std::vector<Vector> base = g;
    for (std::size_t k = 0; k < 4; ++k) {
        Matrix E = exp_ad(L, L.field().from_int(static_cast<long long>(k) + 2), base[k % n]);
        for (auto& v : g) v = E * v;
    }
    for (std::size_t i = 0; i < n; ++i) g[i] = g[i] * L.field().from_int(static_cast<long long>(i) + 2);
    return g;
}

bool contains(const std::vector<FieldElement>& v, const FieldElement& x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

TEST_CASE("polynomial roots") {
    Field Q = Field::rationals();
    // (x - 1)(x + 2)(2x - 3) = 2x^3 - x^2 - 7x + 6
    auto r = polynomial_roots({Q.from_int(6), Q.from_int(-7), Q.from_int(-1), Q.from_int(2)});
    REQUIRE(r.size() == 3);
    CHECK(r[0] == Q.from_int(-2));
    CHECK(r[1] == Q.one());
    CHECK(r[2] == Q.from_rational(mpq_class(3, 2)));
    CHECK(polynomial_roots({Q.from_int(-2), Q.zero(), Q.one()}).empty());
    // repeated root x^2 (x - 5)^2
    auto rr = polynomial_roots({Q.zero(), Q.zero(), Q.from_int(25), Q.from_int(-10), Q.one()});
    CHECK(rr.size() == 2);

    // over GF(101): x^2 + 1 has the roots 10 and 91
    Field G = Field::prime(101);
    auto g = polynomial_roots({G.one(), G.zero(), G.one()});
    REQUIRE(g.size() == 2);
    CHECK(contains(g, G.from_int(10)));
    CHECK(contains(g, G.from_int(91)));
    // a product of four distinct linear factors, checked against brute force
    std::vector<FieldElement> f{G.from_int(1)};
    for (long long a : {3, 17, 50, 99}) {
        std::vector<FieldElement> h(f.size() + 1, G.zero());
        for (std::size_t i = 0; i < f.size(); ++i) {
            h[i + 1] += f[i];
            h[i] -= f[i] * G.from_int(a);
        }
        f = h;
    }
    f[0] += G.from_int(7);  // break the factorization
    auto roots = polynomial_roots(f);
    std::vector<FieldElement> brute;
    for (long long x = 0; x < 101; ++x) {
        FieldElement v = G.zero(), px = G.one();
        for (const auto& c : f) {
            v += c * px;
            px *= G.from_int(x);
        }
        if (v.is_zero()) brute.push_back(G.from_int(x));
    }
    CHECK(roots.size() == brute.size());
    for (const auto& b : brute) CHECK(contains(roots, b));

    Field K = Q.adjoin_sqrt(Q.from_int(2));
    CHECK_THROWS_AS(polynomial_roots({K.sqrt_generator(), K.one()}), NoRootInField);
    auto kr = polynomial_roots({K.from_int(-4), K.zero(), K.one()});
    CHECK(kr.size() == 2);
}

TEST_CASE("psi lengths and graph checks") {
    for (Family fam : {Family::A, Family::B, Family::C, Family::D}) {
        const int n = 6;
        BuiltRealization B = build_realization(fam, n, {}, P);
        PsiVector p = psi(fam, B.L, B.gens);
        CHECK(p.values.size() == p.expected_length());
        CHECK(p.labels.size() == p.values.size());
        GraphCheck gc = graph_realization_check(B.L, B.gens, build_family_graph(fam, n));
        CHECK(gc.ok);
        CHECK_FALSE(gc.witness.has_value());
        CHECK(graph_realization_check(B.R.gens, build_family_graph(fam, n)).ok);
    }
    // a permuted generator list breaks the pattern
    BuiltRealization B = build_realization(Family::C, 6, {}, P);
    std::vector<Vector> g = B.gens;
    std::swap(g[0], g[2]);
    GraphCheck gc = graph_realization_check(B.L, g, build_family_graph(Family::C, 6));
    CHECK_FALSE(gc.pattern_ok);
    REQUIRE(gc.witness.has_value());
    CHECK(gc.witness->first == 1);
    CHECK(long_monomial(5) == Monomial{3, 5, 4, 3, 2});
}

TEST_CASE("B parameter round trip") {
    for (int n : {5, 6})
        for (long long gamma : {1, 2, 3}) {
            BuiltRealization B = build_realization(Family::B, n, b_params(P, gamma), P);
            Normalized N = normalize(Family::B, B.L, conjugate(B.L, B.gens), P);
            const FieldElement f_long = N.psi.values.back();
            CHECK(f_long == P.from_int(n % 2 ? -8 * gamma : 8 * gamma));
            CHECK(solve_param_B(f_long, n) == P.from_int(gamma));
            // the model is already in normal form
            CHECK(N.psi == psi(Family::B, B.L, B.gens));
        }
    CHECK_THROWS_AS(solve_param_B(P.zero(), 6), ConditionViolated);
    CHECK_THROWS_AS(solve_param_B(P.from_int(-8), 6), ConditionViolated);
    CHECK_THROWS_AS(solve_param_B(P.from_int(8), 5), ConditionViolated);
}

TEST_CASE("D parameter round trip") {
    for (int n : {5, 6})
        for (auto [a, b] : {std::pair{2, 3}, std::pair{4, 8}}) {
            BuiltRealization B = build_realization(Family::D, n, d_params(P, a, b), P);
            Normalized N = normalize(Family::D, B.L, conjugate(B.L, B.gens), P);
            Field K = N.L.field();
            const FieldElement f_long = N.psi.values.back(), f_short = N.psi.values[n - 4];
            DSolution s = solve_params_D(f_long, f_short, n);
            bool found = false;
            for (const auto& c : s.candidates) found = found || (c.alpha == K.from_int(a) && c.beta == K.from_int(b));
            CHECK(found);
            if (n % 2) {
                CHECK(f_long == K.from_int(4 * a * (1 + b) + 8));
            } else {
                // f_long (alpha+2)^2 = 8 alpha kappa - 16 (alpha+1), kappa^2 = 1+beta
                FieldElement kappa = (f_long * K.from_int((a + 2) * (a + 2)) + K.from_int(16 * (a + 1))) / K.from_int(8 * a);
                CHECK(kappa * kappa == K.from_int(1 + b));
                CHECK(f_short * f_short * K.from_int((a + 2) * (a + 2)) == K.from_int(-16 * (1 + b)));
            }
        }
}

TEST_CASE("D odd branch f_long = 8") {
    Field Q = Field::rationals();
    DSolution s = solve_params_D(Q.from_int(8), Q.from_int(4), 5);
    CHECK(s.branch == "alpha=0");
    REQUIRE(s.candidates.size() == 1);
    CHECK(s.candidates[0].alpha.is_zero());
    CHECK(s.candidates[0].beta == Q.from_int(-2));
    CHECK_THROWS_AS(solve_params_D(Q.from_int(8), Q.zero(), 5), ConditionViolated);
}

TEST_CASE("normalization is invariant under conjugation") {
    for (Family fam : {Family::A, Family::C, Family::B, Family::D}) {
        BuiltRealization B = build_realization(fam, 6, {}, P);
        Normalized N1 = normalize(fam, B.L, B.gens, P);
        Normalized N2 = normalize(fam, B.L, conjugate(B.L, B.gens), P);
        if (N1.L.field() != N2.L.field()) {
            Field K = N1.L.field().contains(N2.L.field()) ? N1.L.field() : N2.L.field();
            N1 = normalize(fam, B.L, B.gens, K);
            N2 = normalize(fam, B.L, conjugate(B.L, B.gens), K);
        }
        CHECK(N1.psi == N2.psi);
    }
    BuiltRealization C = build_realization(Family::C, 6, {}, P);
    Normalized N = normalize(Family::C, C.L, conjugate(C.L, C.gens), P);
    for (const auto& v : N.psi.values) CHECK(v == P.one());
}

TEST_CASE("matching") {
    SUBCASE("A and C conjugates match directly") {
        for (auto [fam, n] : {std::pair{Family::A, 5}, std::pair{Family::C, 6}}) {
            BuiltRealization B = build_realization(fam, n, {}, P);
            auto cert = match_algebras(fam, {&B.L, B.gens}, {&B.L, conjugate(B.L, B.gens)});
            CHECK(cert.route == "direct");
            CHECK(cert.pairs_verified == B.L.dim() * (B.L.dim() - 1) / 2);
            CHECK(inverse(cert.map).has_value());
        }
    }
    SUBCASE("B and D parameter pairs match through the models") {
        BuiltRealization x = build_realization(Family::B, 6, b_params(P, 1), P);
        BuiltRealization y = build_realization(Family::B, 6, b_params(P, 2), P);
        auto cert = match_algebras(Family::B, {&x.L, x.gens}, {&y.L, y.gens});
        CHECK(cert.route == "via-model");
        CHECK(cert.pairs_verified == 55 * 54 / 2);
        BuiltRealization d1 = build_realization(Family::D, 6, d_params(P, 2, 3), P);
        BuiltRealization d2 = build_realization(Family::D, 6, d_params(P, 4, 8), P);
        auto dc = match_algebras(Family::D, {&d1.L, d1.gens}, {&d2.L, conjugate(d2.L, d2.gens)});
        CHECK(dc.pairs_verified == 66 * 65 / 2);
    }
    SUBCASE("failures") {
        BuiltRealization d1 = build_realization(Family::D, 5, d_params(P, 2, 3), P);
        BuiltRealization d2 = build_realization(Family::D, 5, d_params(P, 4, 8), P);
        CHECK_THROWS_AS(match_algebras(Family::D, {&d1.L, d1.gens}, {&d2.L, d2.gens}), StructureMismatch);
        std::vector<Vector> short_gens(d2.gens.begin(), d2.gens.end() - 1);
        CHECK_THROWS_AS(match_algebras(Family::D, {&d1.L, d1.gens}, {&d2.L, short_gens}), DimensionMismatch);
    }
}

TEST_CASE("certification reports") {
    CertReport r = certify_family(Family::B, 6, b_params(P, 1), P);
    CHECK(r.verdict);
    CHECK(r.dim == 55);
    CHECK(r.catalog_rank == 55);
    CHECK(r.spanning.passed == 100);
    for (const auto& c : r.genericity) CHECK(c.holds);
    CHECK(r.to_json() == certify_family(Family::B, 6, b_params(P, 1), P).to_json());
    const std::string j = r.to_json();
    CHECK(j.find("\"family\"") < j.find("\"params\""));
    CHECK(j.find("\"identities\"") < j.find("\"verdict\""));

    CHECK_THROWS_AS(certify_family(Family::C, 5, {}, P), OddN);
    CHECK_THROWS(certify_family(Family::D, 5, d_params(P, -2, 3), P));

    CertReport d = certify_family(Family::D, 5, d_params(P, 4, 8), P);
    CHECK(d.verdict);
    CertReport bad = certify_family(Family::D, 5, d_params(P, 2, 3), P);
    CHECK_FALSE(bad.verdict);
    CHECK(bad.dim == 36);
}

TEST_CASE("random parameters: full dimension and matching conjugates") {
    std::mt19937_64 rng(41);
    auto draw = [&] { return P.from_int(static_cast<long long>(rng() % 1000000) + 3); };
    int checked = 0;
    for (int t = 0; t < 20; ++t) {
        RealizationParams pb;
        pb.gamma = draw();
        RealizationParams pd = d_params(P, 0, 0);
        pd.alpha = draw();
        pd.beta = draw();
        for (auto [fam, p, dim] : {std::tuple{Family::B, pb, 36u}, std::tuple{Family::D, pd, 45u}}) {
            BuiltRealization B;
            try {
                B = build_realization(fam, 5, p, P);
            } catch (const SquareRootUnavailable&) {
                continue;  // kappa outside GF(p)
            }
            CHECK(B.L.dim() == dim);
            auto cert = match_algebras(fam, {&B.L, B.gens}, {&B.L, conjugate(B.L, B.gens)});
            CHECK(cert.route == "direct");
            CHECK(cert.pairs_verified == dim * (dim - 1) / 2);
            ++checked;
        }
    }
    CHECK(checked >= 30);
}
