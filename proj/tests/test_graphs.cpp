#include <map>
#include <set>

#include "doctest.h"
#include "exlie/graphs.hpp"

using namespace exlie;

namespace {

std::set<std::pair<int, int>> path(int n) {
    std::set<std::pair<int, int>> e;
    for (int i = 1; i < n; ++i) e.insert({i, i + 1});
    return e;
}

}  // namespace

TEST_CASE("family graphs") {
    CHECK(build_family_graph(Family::C, 4).edges == path(4));

    auto a5 = path(5);
    a5.insert({1, 3});
    CHECK(build_family_graph(Family::A, 5).edges == a5);

    auto b6 = path(6);
    b6.erase({5, 6});
    b6.insert({1, 3});
    b6.insert({4, 6});
    CHECK(build_family_graph(Family::B, 6).edges == b6);

    auto d5 = path(5);
    d5.insert({1, 3});
    d5.insert({3, 5});
    CHECK(build_family_graph(Family::D, 5).edges == d5);

    CHECK_THROWS_AS(build_family_graph(Family::D, 4), BoundsViolation);
    CHECK_THROWS_AS(build_family_graph(Family::A, 3), BoundsViolation);
    CHECK_NOTHROW(build_family_graph(Family::A, 3, false));
    CHECK_THROWS_AS(build_family_graph(Family::C, 1), BoundsViolation);

    for (int n = 5; n <= 10; ++n) {
        SimpleGraph d = build_family_graph(Family::D, n);
        for (Family f : {Family::A, Family::B, Family::C}) CHECK(build_family_graph(f, n).is_subgraph_of(d));
    }
}

TEST_CASE("edge list parsing") {
    SimpleGraph g = SimpleGraph::parse_edges("1-2, 3-2");
    CHECK(g.n == 3);
    CHECK(g.adjacent(2, 3));
    CHECK_FALSE(g.adjacent(1, 3));
    CHECK(g.to_string() == "1-2,2-3");
    CHECK(SimpleGraph::parse_edges("", 4).edges.empty());
    CHECK_THROWS_AS(SimpleGraph::parse_edges("1-1"), BoundsViolation);
    CHECK_THROWS_AS(SimpleGraph::parse_edges("1-x"), BoundsViolation);
    CHECK_THROWS_AS(SimpleGraph::parse_edges("1-5", 4), BoundsViolation);
    CHECK(parse_family("d") == Family::D);
    CHECK_THROWS_AS(parse_family("E"), BoundsViolation);
}

TEST_CASE("arrow expansion") {
    using A = Atom;
    CHECK(expand_arrows({A::range(5, 2, ArrowOp::UpDown)}) == Monomial{5, 6, 4, 5, 3, 4, 2});
    CHECK(expand_arrows({A::range(3, 6, ArrowOp::Up), A::range(4, 1, ArrowOp::UpDown)}) ==
          Monomial{3, 4, 5, 6, 4, 5, 3, 4, 2, 3, 1});
    CHECK(expand_arrows({A::range(4, 4, ArrowOp::Up)}) == Monomial{4});
    CHECK(expand_arrows({A::range(4, 1, ArrowOp::Down)}) == Monomial{4, 3, 2, 1});
    CHECK(expand_arrows({A::range(2, 5, ArrowOp::DownUp)}) == Monomial{2, 1, 3, 2, 4, 3, 5});
    // j down j+1 is empty, leaving only the trailing factor
    CHECK(expand_arrows({A::range(2, 3, ArrowOp::Down), A::index(1)}) == Monomial{1});
    CHECK(expand_arrows({A::range(5, 4, ArrowOp::Up), A::index(2)}) == Monomial{2});
    CHECK_THROWS_AS(expand_arrows({A::range(1, 4, ArrowOp::Down)}), MalformedRange);
    CHECK_THROWS_AS(expand_arrows({A::range(2, 4, ArrowOp::UpDown)}), MalformedRange);
    CHECK_THROWS_AS(expand_arrows({A::range(2, 3, ArrowOp::Down)}), MalformedRange);
}

TEST_CASE("catalog sizes") {
    CHECK(catalog(Family::D, 5).entries.size() == 45);
    CHECK(catalog(Family::B, 5).entries.size() == 36);
    CHECK(catalog(Family::A, 5).entries.size() == 24);
    CHECK(expected_catalog_size(Family::C, 6) == 21);
    CHECK(expected_catalog_size(Family::B, 6) == 55);
    CHECK_THROWS_AS(catalog(Family::B, 4), BoundsViolation);

    // per-class counts for A5
    std::map<std::string, int> classes;
    for (const auto& e : catalog(Family::A, 5).entries) classes[e.label]++;
    CHECK(classes["y1"] == 15);
    CHECK(classes["y3"] == 6);
    CHECK(classes["y7"] == 3);
}

TEST_CASE("catalog structure") {
    for (Family f : {Family::A, Family::B, Family::C, Family::D}) {
        for (int n = family_min_n(f); n <= 10; ++n) {
            CAPTURE(family_name(f));
            CAPTURE(n);
            MonomialCatalog cat = catalog(f, n);
            CHECK(static_cast<long>(cat.entries.size()) == expected_catalog_size(f, n));
            std::set<Monomial> words;
            std::set<int> singles;
            for (const auto& e : cat.entries) {
                words.insert(e.word);
                for (int i : e.word) CHECK((i >= 1 && i <= n));
                if (e.word.size() == 1) singles.insert(e.word[0]);
            }
            CHECK(words.size() == cat.entries.size());
            CHECK(singles.size() == static_cast<std::size_t>(n));
            // dropping the outermost factor stays inside the catalog
            for (const auto& w : words)
                if (w.size() > 1) CHECK(words.count(Monomial(w.begin() + 1, w.end())) == 1);
            CHECK(cat.max_length() <= static_cast<std::size_t>(std::max(2 * n - 3, n)));
        }
    }
}

TEST_CASE("catalog text export") {
    std::string t = catalog(Family::C, 2).to_text();
    CHECK(t == "y1 2 2 : 2\ny1 2 1 : 2 1\ny1 1 1 : 1\n");
    std::string d = catalog(Family::D, 5).to_text();
    CHECK(d.find("y17 - - : 5 4 3 5 2 3 1\n") != std::string::npos);
}
