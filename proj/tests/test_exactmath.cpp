#include <random>

#include "doctest.h"
#include "exlie/matrix.hpp"

using namespace exlie;

namespace {

// Rank oracle independent of rref(): Bareiss fraction-free elimination on
// integer matrices.
std::size_t bareiss_rank(std::vector<std::vector<mpz_class>> a) {
    std::size_t R = a.size(), C = R ? a[0].size() : 0, rank = 0;
    mpz_class prev = 1;
    for (std::size_t c = 0; c < C && rank < R; ++c) {
        std::size_t p = rank;
        while (p < R && a[p][c] == 0) ++p;
        if (p == R) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t i = rank + 1; i < R; ++i) {
            for (std::size_t j = c + 1; j < C; ++j)
                a[i][j] = (a[i][j] * a[rank][c] - a[i][c] * a[rank][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

Matrix random_int_matrix(Field F, std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi,
                         std::vector<std::vector<mpz_class>>* ints = nullptr) {
    std::uniform_int_distribution<int> d(lo, hi);
    Matrix m(F, r, c);
    if (ints) ints->assign(r, std::vector<mpz_class>(c));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            int v = d(rng);
            m(i, j) = F.from_int(v);
            if (ints) (*ints)[i][j] = v;
        }
    return m;
}

}  // namespace

TEST_CASE("rational arithmetic") {
    Field Q = Field::rationals();
    CHECK(Q.parse("1/2") + Q.parse("1/3") == Q.parse("5/6"));
    CHECK((Q.parse("-4/6")).to_string() == "-2/3");
    CHECK_THROWS_AS(Q.one() / Q.zero(), DivisionByZero);
    CHECK_THROWS_AS(Q.parse("1/0"), InvalidField);
    CHECK_THROWS_AS(Q.parse("0.5"), InvalidField);
}

TEST_CASE("prime field arithmetic") {
    Field F7 = Field::prime(7);
    CHECK(F7.from_int(3) * F7.from_int(5) == F7.one());
    CHECK(F7.from_int(-1).residue() == 6);
    CHECK(F7.parse("1/2") * F7.from_int(2) == F7.one());
    CHECK_THROWS_AS(Field::prime(2), InvalidField);
    CHECK_THROWS_AS(Field::prime(9), InvalidField);
    CHECK_THROWS_AS(F7.from_int(1) + Field::rationals().one(), DescriptorMismatch);
    CHECK(Field::prime(7) == F7);
}

TEST_CASE("quadratic extension arithmetic") {
    Field Q = Field::rationals();
    Field K = Field::quadratic(Q, Q.from_int(2));
    FieldElement r = K.sqrt_generator();
    CHECK((K.one() + r) * (K.one() - r) == K.from_int(-1));
    CHECK(r * r == K.from_int(2));
    CHECK_THROWS_AS(Field::quadratic(Q, Q.from_int(4)), InvalidField);
    FieldElement x = K.from_int(3) + r * K.from_int(5);
    CHECK(x * x.inv() == K.one());
    CHECK(K.embed(Q.parse("2/3")) * K.from_int(3) == K.from_int(2));
}

TEST_CASE("square roots") {
    Field Q = Field::rationals();
    CHECK(*Q.parse("9/4").sqrt() == Q.parse("3/2"));
    CHECK_FALSE(Q.from_int(2).sqrt().has_value());
    CHECK_FALSE(Q.from_int(-1).sqrt().has_value());

    Field F7 = Field::prime(7);
    // brute-force oracle: smallest residue r with r^2 = 2
    std::uint64_t oracle = 0;
    for (std::uint64_t r = 0; r < 7; ++r)
        if (r * r % 7 == 2) {
            oracle = r;
            break;
        }
    CHECK(F7.from_int(2).sqrt()->residue() == oracle);
    CHECK(oracle == 3);
    CHECK_FALSE(F7.from_int(3).sqrt().has_value());

    // Tonelli-Shanks branch (p = 1 mod 8) against brute force
    Field F17 = Field::prime(17);
    for (int a = 0; a < 17; ++a) {
        int expect = -1;
        for (int r = 0; r < 17; ++r)
            if (r * r % 17 == a) {
                expect = r;
                break;
            }
        auto s = F17.from_int(a).sqrt();
        CHECK(s.has_value() == (expect >= 0));
        if (s) CHECK(static_cast<int>(s->residue()) == expect);
    }

    Field K = Field::quadratic(Q, Q.from_int(2));
    FieldElement r2 = K.sqrt_generator();
    FieldElement a = K.from_int(3) + r2 * K.from_int(2);  // (1 + sqrt2)^2
    auto s = a.sqrt();
    REQUIRE(s.has_value());
    CHECK(*s * *s == a);
    CHECK(K.from_int(2).sqrt().has_value());
    CHECK_FALSE(K.from_int(-1).sqrt().has_value());
    CHECK_FALSE(K.from_int(3).sqrt().has_value());
}

TEST_CASE("towers of quadratic extensions") {
    Field Q = Field::rationals();
    Field K1 = Q.adjoin_sqrt(Q.parse("1/8"));
    CHECK(K1.radicand() == Q.from_int(2));
    Field K2 = K1.adjoin_sqrt(K1.from_int(-2));
    CHECK(K2.depth() == 2);
    auto i = K2.from_int(-1).sqrt();
    REQUIRE(i.has_value());
    CHECK(*i * *i == K2.from_int(-1));
    CHECK(K2.contains(Q));
    CHECK(K2.embed(K1.sqrt_generator()) * K2.embed(K1.sqrt_generator()) == K2.from_int(2));
    CHECK(K2.from_int(5).to_prime_subfield()->rational() == 5);
}

TEST_CASE("field properties on random samples") {
    std::mt19937_64 rng(11);
    Field Q = Field::rationals();
    Field P = Field::prime(kDefaultPrime);
    Field K = Field::quadratic(Q, Q.from_int(-3));
    std::uniform_int_distribution<long long> d(-1000, 1000);
    for (int t = 0; t < 200; ++t) {
        for (Field F : {Q, P, K}) {
            FieldElement a = F.from_int(d(rng)) / F.from_int(d(rng) | 1);
            if (F == K) a += K.sqrt_generator() * K.from_int(d(rng));
            if (!a.is_zero()) CHECK(a * a.inv() == F.one());
            FieldElement sq = a * a;
            auto r = sq.sqrt();
            REQUIRE(r.has_value());
            CHECK(*r * *r == sq);
            CHECK((*r == a || *r == -a));
            auto ra = a.sqrt();
            if (ra) CHECK(*ra * *ra == a);
        }
    }
    CHECK(P.characteristic() % 2 == 1);
}

TEST_CASE("rref examples") {
    Field Q = Field::rationals();
    auto id = rref(Matrix::identity(Q, 3));
    CHECK(id.rank == 3);
    CHECK(id.reduced == Matrix::identity(Q, 3));
    auto z = rref(Matrix(Q, 2, 3));
    CHECK(z.rank == 0);
    CHECK(z.reduced.is_zero());
    auto r = rref(Matrix::from_ints(Q, {{1, 2}, {2, 4}}));
    CHECK(r.rank == 1);
    CHECK(r.reduced == Matrix::from_ints(Q, {{1, 2}, {0, 0}}));
    CHECK(r.pivots == std::vector<std::size_t>{0});
}

TEST_CASE("rref properties") {
    std::mt19937_64 rng(5);
    Field Q = Field::rationals();
    for (int t = 0; t < 40; ++t) {
        std::vector<std::vector<mpz_class>> ints;
        int rows = 1 + t % 5, cols = 1 + (t * 7) % 6;
        Matrix m = random_int_matrix(Q, rng, rows, cols, -2, 2, &ints);
        auto r = rref(m);
        CHECK(r.rank == bareiss_rank(ints));
        CHECK(rref(r.reduced).reduced == r.reduced);
        for (const auto& k : kernel(m)) CHECK((m * k).is_zero());
        CHECK(kernel(m).size() + r.rank == m.cols());
    }
}

TEST_CASE("in_span and kernel examples") {
    Field Q = Field::rationals();
    Vector b1 = Vector::from_ints(Q, {1, 0, 1});
    Vector b2 = Vector::from_ints(Q, {0, 1, 1});
    auto c0 = in_span(Vector(Q, 3), {b1, b2});
    REQUIRE(c0.has_value());
    CHECK(c0->is_zero());
    auto c = in_span(b1 + b2 * Q.from_int(2), {b1, b2});
    REQUIRE(c.has_value());
    CHECK(*c == Vector::from_ints(Q, {1, 2}));
    CHECK_FALSE(in_span(Vector::from_ints(Q, {0, 0, 1}), {b1, b2}).has_value());

    CHECK(kernel(Matrix::identity(Q, 3)).empty());
    CHECK(kernel(Matrix(Q, 2, 3)).size() == 3);
    auto k = kernel(Matrix::from_ints(Q, {{1, 1}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0] == Vector::from_ints(Q, {1, -1}));
}

TEST_CASE("in_span reconstructs exactly") {
    std::mt19937_64 rng(9);
    Field P = Field::prime(kDefaultPrime);
    std::uniform_int_distribution<long long> d(-50, 50);
    for (int t = 0; t < 50; ++t) {
        std::vector<Vector> basis;
        for (int i = 0; i < 3; ++i) {
            Vector v(P, 5);
            for (std::size_t j = 0; j < 5; ++j) v[j] = P.from_int(d(rng));
            basis.push_back(v);
        }
        Vector target(P, 5);
        for (std::size_t j = 0; j < 5; ++j) target[j] = P.from_int(d(rng));
        if (t % 2 == 0) target = basis[0] * P.from_int(3) - basis[2];
        auto c = in_span(target, basis);
        if (c) {
            Vector s(P, 5);
            for (std::size_t i = 0; i < 3; ++i) s.add_scaled((*c)[i], basis[i]);
            CHECK(s == target);
        }
        if (t % 2 == 0) CHECK(c.has_value());
    }
}

TEST_CASE("echelon basis") {
    Field Q = Field::rationals();
    EchelonBasis E(Q, 3);
    CHECK(E.add(Vector::from_ints(Q, {0, 2, 2})));
    CHECK(E.add(Vector::from_ints(Q, {1, 1, 0})));
    CHECK_FALSE(E.add(Vector::from_ints(Q, {1, 3, 2})));
    CHECK(E.dim() == 2);
    Vector v = Vector::from_ints(Q, {2, 5, 3});
    auto c = E.coordinates(v);
    REQUIRE(c.has_value());
    Vector s(Q, 3);
    for (std::size_t k = 0; k < E.dim(); ++k) s.add_scaled((*c)[k], E.rows()[k]);
    CHECK(s == v);
    CHECK_FALSE(E.coordinates(Vector::from_ints(Q, {0, 0, 1})).has_value());
}

TEST_CASE("rationals are stored in lowest terms") {
    Field Q = Field::rationals();
    CHECK(Q.from_rational(mpq_class(-18, 3)) == Q.from_int(-6));
    CHECK(Q.from_rational(mpq_class(4, -8)).to_string() == "-1/2");
}

TEST_CASE("matrix inverse") {
    std::mt19937_64 rng(11);
    for (Field F : {Field::rationals(), Field::prime(101)}) {
        for (int t = 0; t < 10; ++t) {
            std::vector<std::vector<mpz_class>> ints;
            Matrix m = random_int_matrix(F, rng, 5, 5, -4, 4, &ints);
            auto inv = inverse(m);
            if (F.characteristic() == 0) CHECK(inv.has_value() == (bareiss_rank(ints) == 5));
            if (inv) {
                CHECK(m * *inv == Matrix::identity(F, 5));
                CHECK(*inv * m == Matrix::identity(F, 5));
            }
        }
        CHECK_FALSE(inverse(Matrix::from_ints(F, {{1, 2}, {2, 4}})).has_value());
    }
}
