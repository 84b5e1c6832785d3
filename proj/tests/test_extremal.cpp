#include <random>

#include "doctest.h"
#include "exlie/extremal.hpp"
#include "exlie/realizations.hpp"

using namespace exlie;

namespace {

// e, h, f with [e,f] = h, [h,e] = 2e, [h,f] = -2f
LieAlgebra sl2(Field F) {
    LieAlgebra L(F, 3);
    L.set_bracket(0, 2, Vector::from_ints(F, {0, 1, 0}));
    L.set_bracket(1, 0, Vector::from_ints(F, {2, 0, 0}));
    L.set_bracket(1, 2, Vector::from_ints(F, {0, 0, -2}));
    return L;
}

// x, y, z with [x,y] = z central
LieAlgebra heisenberg(Field F) {
    LieAlgebra L(F, 3);
    L.set_bracket(0, 1, Vector::from_ints(F, {0, 0, 1}));
    return L;
}

Vector random_vector(Field F, std::size_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<long long> d(-9, 9);
    Vector v(F, n);
    for (std::size_t i = 0; i < n; ++i) v[i] = F.from_int(d(rng));
    return v;
}

}  // namespace

TEST_CASE("extremal elements of sl2") {
    Field Q = Field::rationals();
    LieAlgebra L = sl2(Q);
    Vector e = L.basis_vector(0), h = L.basis_vector(1), f = L.basis_vector(2);
    auto ce = is_extremal(L, e);
    REQUIRE(ce.has_value());
    CHECK_FALSE(ce->trivial);
    // [e,[e,f]] = [e,h] = -2e
    CHECK(extremal_form(L, e, f) == Q.from_int(-2));
    CHECK((*ce)(f) == Q.from_int(-2));
    CHECK((*ce)(h).is_zero());
    CHECK_FALSE(is_extremal(L, h).has_value());
    CHECK_THROWS_AS(is_extremal(L, L.zero()), ZeroElement);
    CHECK_THROWS_AS(extremal_form(L, h, e), NotExtremal);
    // f(x,y) = f(y,x)
    CHECK(extremal_form(L, f, e) == extremal_form(L, e, f));
    auto pc = classify_pair(L, e, f);
    CHECK(pc.kind == PairKind::Sl2);
    CHECK(classify_pair(L, e, e * Q.from_int(3)).kind == PairKind::Proportional);
}

TEST_CASE("Heisenberg pair") {
    Field Q = Field::rationals();
    LieAlgebra L = heisenberg(Q);
    Vector x = L.basis_vector(0), y = L.basis_vector(1), z = L.basis_vector(2);
    CHECK(classify_pair(L, x, y).kind == PairKind::Heisenberg);
    CHECK(classify_pair(L, x, z).kind == PairKind::Abelian2);
    auto cz = is_extremal(L, z);
    REQUIRE(cz.has_value());
    CHECK(cz->trivial);
    CHECK(pair_kind_name(PairKind::Heisenberg) == "heisenberg");
}

TEST_CASE("exp_ad is an automorphism") {
    Field P = Field::prime(kDefaultPrime);
    Realization R = generators_A(4, P);
    MatrixLieAlgebra L = lie_closure(R.gens);
    REQUIRE(L.dim() == 15);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10; ++t) {
        Vector a = L.coordinates(R.gens[t % 4]);
        FieldElement s = P.from_int(1 + t);
        Matrix E = exp_ad(L, s, a);
        Vector u = random_vector(P, L.dim(), rng), v = random_vector(P, L.dim(), rng);
        CHECK(E * L.bracket(u, v) == L.bracket(E * u, E * v));
        CHECK(exp_ad_apply(L, s, a, u) == E * u);
    }
    // h is not extremal in sl2
    Field Q = Field::rationals();
    LieAlgebra S = sl2(Q);
    CHECK_THROWS_AS(exp_ad(S, Q.one(), S.basis_vector(1)), NotExtremal);
}

TEST_CASE("Premet identities in sl4") {
    Field P = Field::prime(kDefaultPrime);
    Realization R = generators_A(4, P);
    MatrixLieAlgebra L = lie_closure(R.gens);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long long> d(-5, 5);
    auto random_extremal = [&] {
        Vector x = L.coordinates(R.gens[rng() % 4]);
        for (int k = 0; k < 3; ++k) x = exp_ad_apply(L, P.from_int(d(rng)), L.coordinates(R.gens[rng() % 4]), x);
        return x;
    };
    for (int t = 0; t < 20; ++t) {
        Vector x = random_extremal(), z = random_extremal();
        Vector y = random_vector(P, L.dim(), rng);
        REQUIRE(is_extremal(L, x).has_value());
        auto rep = check_premet(L, x, y, z, true);
        CHECK(rep.symmetric_checked);
        CHECK(rep.checked >= 5);
    }
}

TEST_CASE("fixtriangle on a triangle of sl4") {
    // Lift to a quadratic extension whenever a scaling has no root.
    Field F = Field::prime(kDefaultPrime);
    for (int lifts = 0;; ++lifts) {
        REQUIRE(lifts < 4);
        Realization R = generators_A(4, F);
        MatrixLieAlgebra L = lie_closure(R.gens);
        Vector x = L.coordinates(R.gens[0]), y = L.coordinates(R.gens[1]), z = L.coordinates(R.gens[2]);
        const FieldElement pi = F.from_int(1), rho = F.from_int(1), sigma = F.from_int(1);
        FixtriangleResult out;
        try {
            out = fixtriangle(L, x, y, z, pi, rho, sigma);
        } catch (const SquareRootUnavailable& e) {
            F = F.adjoin_sqrt(e.radicand());
            continue;
        }
        auto cx = is_extremal(L, out.x);
        auto cy = is_extremal(L, out.y);
        REQUIRE(cx.has_value());
        REQUIRE(cy.has_value());
        CHECK((*cx)(out.y) == pi);
        CHECK((*cx)(out.z) == rho);
        CHECK((*cy)(out.z) == sigma);
        CHECK((*cx)(L.bracket(out.y, out.z)).is_zero());
        // a commuting pair violates the hypotheses
        Vector w = L.coordinates(R.gens[3]);
        CHECK_THROWS_AS(fixtriangle(L, y, w, x, pi, rho, sigma), HypothesisViolated);
        break;
    }
}
