#include "exlie/graphs.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace exlie {

std::string family_name(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::B: return "B";
        case Family::C: return "C";
        default: return "D";
    }
}

Family parse_family(const std::string& s) {
    if (s.size() == 1) switch (std::toupper(static_cast<unsigned char>(s[0]))) {
            case 'A': return Family::A;
            case 'B': return Family::B;
            case 'C': return Family::C;
            case 'D': return Family::D;
        }
    throw BoundsViolation("unknown family '" + s + "'");
}

int family_min_n(Family f) {
    switch (f) {
        case Family::A: return 4;
        case Family::C: return 2;
        default: return 5;
    }
}

void SimpleGraph::add_edge(int i, int j) {
    if (i == j) throw BoundsViolation("loop at vertex " + std::to_string(i));
    if (i < 1 || j < 1 || i > n || j > n)
        throw BoundsViolation("edge " + std::to_string(i) + "-" + std::to_string(j) + " outside 1.." + std::to_string(n));
    edges.insert({std::min(i, j), std::max(i, j)});
}

bool SimpleGraph::adjacent(int i, int j) const { return edges.count({std::min(i, j), std::max(i, j)}) > 0; }

bool SimpleGraph::is_subgraph_of(const SimpleGraph& g) const {
    if (n != g.n) return false;
    return std::includes(g.edges.begin(), g.edges.end(), edges.begin(), edges.end());
}

SimpleGraph SimpleGraph::parse_edges(const std::string& spec, int n) {
    std::vector<std::pair<int, int>> pairs;
    std::stringstream ss(spec);
    std::string item;
    int maxv = 0;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
        if (item.empty()) continue;
        auto dash = item.find('-');
        if (dash == std::string::npos || dash == 0 || dash + 1 == item.size())
            throw BoundsViolation("malformed edge '" + item + "'");
        int a, b;
        try {
            std::size_t pa, pb;
            a = std::stoi(item.substr(0, dash), &pa);
            b = std::stoi(item.substr(dash + 1), &pb);
            if (pa != dash || pb != item.size() - dash - 1) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw BoundsViolation("malformed edge '" + item + "'");
        }
        pairs.push_back({a, b});
        maxv = std::max({maxv, a, b});
    }
    SimpleGraph g(n > 0 ? n : maxv);
    for (auto [a, b] : pairs) g.add_edge(a, b);
    return g;
}

std::string SimpleGraph::to_string() const {
    std::string s;
    for (auto [a, b] : edges) {
        if (!s.empty()) s += ",";
        s += std::to_string(a) + "-" + std::to_string(b);
    }
    return s;
}

SimpleGraph build_family_graph(Family f, int n, bool enforce_bounds) {
    int lo = enforce_bounds ? family_min_n(f) : (f == Family::C ? 2 : 3);
    if (n < lo)
        throw BoundsViolation("family " + family_name(f) + " needs n >= " + std::to_string(lo) + ", got " +
                              std::to_string(n));
    SimpleGraph g(n);
    for (int i = 1; i < n; ++i) g.add_edge(i, i + 1);
    switch (f) {
        case Family::A:
            g.add_edge(1, 3);
            break;
        case Family::B:
            g.edges.erase({n - 1, n});
            g.add_edge(1, 3);
            g.add_edge(n - 2, n);
            break;
        case Family::C:
            break;
        case Family::D:
            g.add_edge(1, 3);
            g.add_edge(n - 2, n);
            break;
    }
    return g;
}

// ---------------------------------------------------------------- arrows

Monomial expand_arrows(const MonomialExpr& expr) {
    Monomial out;
    for (const Atom& a : expr) {
        if (!a.is_range) {
            out.push_back(a.start);
            continue;
        }
        const int s = a.start, e = a.end;
        auto bad = [&] {
            return MalformedRange("range " + std::to_string(s) + ".." + std::to_string(e) + " runs the wrong way");
        };
        switch (a.op) {
            case ArrowOp::Up:
                if (s == e + 1) break;
                if (s > e) throw bad();
                for (int i = s; i <= e; ++i) out.push_back(i);
                break;
            case ArrowOp::Down:
                if (s + 1 == e) break;
                if (s < e) throw bad();
                for (int i = s; i >= e; --i) out.push_back(i);
                break;
            case ArrowOp::UpDown:
                if (s < e) throw bad();
                for (int k = s; k > e; --k) {
                    out.push_back(k);
                    out.push_back(k + 1);
                }
                out.push_back(e);
                break;
            case ArrowOp::DownUp:
                if (s > e) throw bad();
                for (int k = s; k < e; ++k) {
                    out.push_back(k);
                    out.push_back(k - 1);
                }
                out.push_back(e);
                break;
        }
    }
    if (out.empty()) throw MalformedRange("monomial expands to nothing");
    return out;
}

std::string monomial_to_string(const Monomial& m) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(m[i]);
    }
    return s;
}

// ---------------------------------------------------------------- catalogs

namespace {

Atom up(int s, int e) { return Atom::range(s, e, ArrowOp::Up); }
Atom down(int s, int e) { return Atom::range(s, e, ArrowOp::Down); }
Atom updown(int s, int e) { return Atom::range(s, e, ArrowOp::UpDown); }
Atom x(int i) { return Atom::index(i); }

// The D classes; `only` restricts to a subset so that small n never expands
// ranges belonging to classes it does not use.
std::vector<CatalogEntry> d_catalog(int n, const std::set<std::string>& only) {
    std::vector<CatalogEntry> out;
    auto add = [&](const std::string& label, int k, int m, MonomialExpr e) {
        if (only.empty() || only.count(label)) out.push_back(CatalogEntry{label, k, m, expand_arrows(e)});
    };
    for (int k = n; k >= 1; --k)
        for (int m = k; m >= 1; --m) add("y1", k, m, {down(k, m)});
    for (int k = n - 2; k >= 1; --k)
        for (int m = k - 1; m >= 1; --m) add("y2", k, m, {up(k, n - 2), down(n, m)});
    for (int k = n; k >= 3; --k)
        for (int m = k; m >= 3; --m) add("y3", k, m, {down(k, m + 1), updown(m - 1, 1)});
    for (int k = n - 2; k >= 3; --k)
        for (int m = k; m >= 3; --m) add("y4", k, m, {up(k, n - 2), down(n, m + 1), updown(m - 1, 1)});
    for (int m = n - 2; m >= 1; --m) add("y5", 0, m, {x(n), down(n - 2, m)});
    for (int m = n - 2; m >= 1; --m) add("y6", 0, m, {x(n - 1), x(n), down(n - 2, m)});
    for (int k = n; k >= 3; --k) add("y7", k, 0, {down(k, 3), x(1)});
    for (int k = n - 2; k >= 2; --k) add("y8", k, 0, {up(k, n - 2), down(n, 3), x(1)});
    for (int m = n - 2; m >= 3; --m) add("y9", 0, m, {x(n), down(n - 2, m + 1), updown(m - 1, 1)});
    for (int m = n - 2; m >= 3; --m) add("y10", 0, m, {x(n - 1), x(n), down(n - 2, m + 1), updown(m - 1, 1)});
    add("y11", 0, 0, {x(1), up(3, n - 2), down(n, 1)});
    add("y12", 0, 0, {x(1), up(3, n - 2), down(n, 2)});
    add("y13", 0, 0, {x(n), down(n - 2, 3), x(1)});
    add("y14", 0, 0, {x(n - 1), x(n), down(n - 2, 3), x(1)});
    add("y15", 0, 0, {x(n - 2), x(n), updown(n - 3, 1)});
    add("y16", 0, 0, {x(n - 1), x(n - 2), x(n), updown(n - 3, 1)});
    add("y17", 0, 0, {x(n), x(n - 1), x(n - 2), x(n), updown(n - 3, 1)});
    return out;
}

}  // namespace

MonomialCatalog catalog(Family f, int n) {
    if (n < family_min_n(f))
        throw BoundsViolation("catalog for " + family_name(f) + " needs n >= " + std::to_string(family_min_n(f)));
    MonomialCatalog cat{f, n, {}};
    std::set<std::string> only;
    if (f == Family::A) only = {"y1", "y3", "y7"};
    if (f == Family::C) only = {"y1"};
    std::vector<CatalogEntry> d = d_catalog(n, only);
    auto keep = [&](auto pred) {
        for (auto& e : d)
            if (pred(e)) cat.entries.push_back(e);
    };
    switch (f) {
        case Family::D:
            cat.entries = std::move(d);
            break;
        case Family::B:
            // y12 is dropped as a whole class: x1 x_{3 up n-2} x_{n down 2}
            keep([&](const CatalogEntry& e) {
                if (e.label == "y1" && e.k == n && e.m == n - 1) return false;
                if (e.label == "y3" && e.k == n && e.m == n) return false;
                return !(e.label == "y6" || e.label == "y10" || e.label == "y12" || e.label == "y14" ||
                         e.label == "y17");
            });
            break;
        case Family::A:
        case Family::C:
            cat.entries = std::move(d);
            break;
    }
    return cat;
}

long expected_catalog_size(Family f, int n) {
    long N = n;
    switch (f) {
        case Family::D: return 2 * N * N - N;
        case Family::B: return 2 * N * N - 3 * N + 1;
        case Family::A: return N * N - 1;
        default: return N * (N + 1) / 2;
    }
}

std::string MonomialCatalog::to_text() const {
    std::ostringstream os;
    for (const auto& e : entries) {
        os << e.label << ' ' << (e.k ? std::to_string(e.k) : "-") << ' ' << (e.m ? std::to_string(e.m) : "-")
           << " : " << monomial_to_string(e.word) << '\n';
    }
    return os.str();
}

std::size_t MonomialCatalog::max_length() const {
    std::size_t L = 0;
    for (const auto& e : entries) L = std::max(L, e.word.size());
    return L;
}

}  // namespace exlie
