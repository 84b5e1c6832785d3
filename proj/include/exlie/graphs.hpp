#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "exlie/errors.hpp"

namespace exlie {

enum class Family { A, B, C, D };

std::string family_name(Family f);
Family parse_family(const std::string& s);  // "A".."D", case-insensitive
int family_min_n(Family f);

// Vertices 1..n; an edge joins two generators that do not commute.
struct SimpleGraph {
    int n = 0;
    std::set<std::pair<int, int>> edges;  // stored with first < second

    SimpleGraph() = default;
    explicit SimpleGraph(int n_) : n(n_) {}
    void add_edge(int i, int j);
    bool adjacent(int i, int j) const;
    bool is_subgraph_of(const SimpleGraph& g) const;
    // "1-2,2-3"; n defaults to the largest vertex mentioned.
    static SimpleGraph parse_edges(const std::string& spec, int n = 0);
    std::string to_string() const;
    bool operator==(const SimpleGraph& o) const { return n == o.n && edges == o.edges; }
};

// enforce_bounds = false permits the small graphs (such as A on 3 vertices)
// that realizations are still defined for.
SimpleGraph build_family_graph(Family f, int n, bool enforce_bounds = true);

// (i_k, ..., i_1): the right-nested bracket [x_{i_k}, [..., [x_{i_2}, x_{i_1}]]].
using Monomial = std::vector<int>;

enum class ArrowOp {
    Up,       // i up j       : i, i+1, ..., j
    Down,     // j down i     : j, j-1, ..., i
    UpDown,   // j up-down i  : j, j+1, j-1, j, ..., i+1, i+2, i
    DownUp,   // i down-up j  : i, i-1, i+1, i, ..., j-1, j-2, j
};

struct Atom {
    bool is_range = false;
    int start = 0, end = 0;
    ArrowOp op = ArrowOp::Up;

    static Atom index(int i) { return Atom{false, i, i, ArrowOp::Up}; }
    static Atom range(int s, int e, ArrowOp op) { return Atom{true, s, e, op}; }
};

using MonomialExpr = std::vector<Atom>;

// Ranges that run one step past their end (j down j+1, i up i-1) are empty.
Monomial expand_arrows(const MonomialExpr& expr);

std::string monomial_to_string(const Monomial& m);

struct CatalogEntry {
    std::string label;  // "y1" .. "y17"
    int k = 0, m = 0;   // 0 when the class has no such parameter
    Monomial word;
};

struct MonomialCatalog {
    Family family{};
    int n = 0;
    std::vector<CatalogEntry> entries;

    // "label k m : i_k ... i_1", with '-' for absent parameters
    std::string to_text() const;
    std::size_t max_length() const;
};

MonomialCatalog catalog(Family f, int n);
long expected_catalog_size(Family f, int n);

}  // namespace exlie
