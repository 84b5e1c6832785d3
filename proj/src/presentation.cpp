#include "exlie/presentation.hpp"

#include <random>
#include <sstream>

namespace exlie {

Vector GradedLieAlgebra::generator(int i) const {
    if (i < 1 || i > graph_.n) throw IndexOutOfRange("generator " + std::to_string(i));
    return basis_vector(static_cast<std::size_t>(i - 1));
}

std::vector<Vector> GradedLieAlgebra::generators() const {
    std::vector<Vector> g;
    for (int i = 1; i <= graph_.n; ++i) g.push_back(generator(i));
    return g;
}

std::string GradedLieAlgebra::profile_text() const {
    std::string s = "(";
    for (std::size_t d = 0; d < profile_.size(); ++d) s += (d ? "," : "") + std::to_string(profile_[d]);
    return s + ")";
}

namespace {

// Degree-by-degree construction state. Global basis indices are assigned in
// degree order; generators are 0..n-1.
struct Builder {
    Field F;
    SimpleGraph G;
    int n;
    std::vector<Monomial> labels;
    std::vector<int> degree;
    std::vector<std::pair<int, std::size_t>> witness;  // (generator 0-based, parent) for degree >= 2
    std::vector<std::size_t> offset, size;             // per degree, index 0 unused
    std::vector<std::vector<SparseVector>> gen_image;  // [i][b] = [x_i, e_b]

    std::size_t total() const { return labels.size(); }

    Vector ad_gen(int i, const Vector& w) const {
        Vector out(F, total());
        for (std::size_t b = 0; b < w.size(); ++b) {
            if (w[b].is_zero() || b >= gen_image[i].size()) continue;
            for (const auto& [k, c] : gen_image[i][b]) out[k].add_mul(w[b], c);
        }
        return out;
    }

    // [e_a, w] for known degrees only.
    Vector known_bracket(std::size_t a, const Vector& w) const {
        if (degree[a] == 1) return ad_gen(static_cast<int>(a), w);
        auto [m, parent] = witness[a];
        return ad_gen(m, known_bracket(parent, w)) - known_bracket(parent, ad_gen(m, w));
    }

    // [e_a, w] landing in the degree under construction, as a combination of
    // the formal candidates x_i (x) b with b in degree d.
    void formal_bracket(std::size_t a, const Vector& w, int d, const FieldElement& scale, Vector& cand) const {
        if (degree[a] == 1) {
            add_formal(static_cast<int>(a), w, d, scale, cand);
            return;
        }
        auto [m, parent] = witness[a];
        add_formal(m, known_bracket(parent, w), d, scale, cand);
        formal_bracket(parent, ad_gen(m, w), d, -scale, cand);
    }

    void add_formal(int i, const Vector& w, int d, const FieldElement& scale, Vector& cand) const {
        for (std::size_t b = offset[d]; b < offset[d] + size[d]; ++b)
            if (b < w.size() && !w[b].is_zero()) cand[i * size[d] + (b - offset[d])].add_mul(scale, w[b]);
    }

    Vector sparse_to_vec(const SparseVector& s) const { return to_dense(F, total(), s); }

    // Computes degree d+1 from degree d; returns its dimension.
    std::size_t extend(int d) {
        const std::size_t sd = size[d], cols = static_cast<std::size_t>(n) * sd;
        std::vector<Vector> rel;
        const FieldElement one = F.one();
        auto col = [&](int i, std::size_t b) { return static_cast<std::size_t>(i) * sd + (b - offset[d]); };
        if (d == 1) {
            for (int i = 0; i < n; ++i) rel.push_back(Vector::unit(F, cols, col(i, i)));
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    Vector r(F, cols);
                    r[col(i, j)] = one;
                    r[col(j, i)] = one;
                    rel.push_back(r);
                    if (!G.adjacent(i + 1, j + 1)) rel.push_back(Vector::unit(F, cols, col(i, j)));
                }
        } else {
            const std::size_t lo = offset[d - 1], hi = offset[d - 1] + size[d - 1];
            for (int i = 0; i < n; ++i)
                for (std::size_t c = lo; c < hi; ++c) {
                    Vector r(F, cols);
                    add_formal(i, sparse_to_vec(gen_image[i][c]), d, one, r);
                    rel.push_back(r);
                }
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    Vector eij = sparse_to_vec(gen_image[i][j]);
                    for (std::size_t c = lo; c < hi; ++c) {
                        Vector r(F, cols);
                        add_formal(i, sparse_to_vec(gen_image[j][c]), d, one, r);
                        add_formal(j, sparse_to_vec(gen_image[i][c]), d, -one, r);
                        // - [[x_i, x_j], c] = [c, [x_i, x_j]]
                        if (!eij.is_zero()) formal_bracket(c, eij, d, one, r);
                        rel.push_back(r);
                    }
                }
        }
        RrefResult R = rref(Matrix::from_rows(F, rel.empty() ? std::vector<Vector>{Vector(F, cols)} : rel));
        if (rel.empty()) R.pivots.clear();
        std::vector<long> pivot_row(cols, -1);
        for (std::size_t r = 0; r < R.pivots.size(); ++r) pivot_row[R.pivots[r]] = static_cast<long>(r);

        const std::size_t base = total();
        std::vector<std::size_t> new_index(cols, 0);
        std::size_t added = 0;
        for (std::size_t c = 0; c < cols; ++c) {
            if (pivot_row[c] >= 0) continue;
            int i = static_cast<int>(c / sd);
            std::size_t b = offset[d] + c % sd;
            new_index[c] = base + added++;
            Monomial lab{i + 1};
            lab.insert(lab.end(), labels[b].begin(), labels[b].end());
            labels.push_back(lab);
            degree.push_back(d + 1);
            witness.push_back({i, b});
        }
        offset.push_back(base);
        size.push_back(added);
        for (int i = 0; i < n; ++i) {
            gen_image[i].resize(total());
            for (std::size_t b = offset[d]; b < offset[d] + sd; ++b) {
                std::size_t c = col(i, b);
                SparseVector img;
                if (pivot_row[c] < 0) {
                    img.push_back({new_index[c], one});
                } else {
                    std::size_t r = static_cast<std::size_t>(pivot_row[c]);
                    for (std::size_t f = 0; f < cols; ++f)
                        if (pivot_row[f] < 0 && !R.reduced(r, f).is_zero()) img.push_back({new_index[f], -R.reduced(r, f)});
                }
                gen_image[i][b] = img;
            }
        }
        return added;
    }
};

}  // namespace

GradedLieAlgebra build_L0(const PresentationInput& in) {
    const int n = in.graph.n;
    if (n < 1) throw BoundsViolation("graph has no vertices");
    const int cap = in.degree_cap > 0 ? in.degree_cap : 2 * n - 1;
    if (cap < 2) throw BoundsViolation("degree cap must be at least 2");

    Builder B{in.field, in.graph, n, {}, {}, {}, {0, 0}, {0, static_cast<std::size_t>(n)}, {}};
    for (int i = 1; i <= n; ++i) {
        B.labels.push_back({i});
        B.degree.push_back(1);
        B.witness.push_back({-1, 0});
    }
    B.gen_image.assign(n, std::vector<SparseVector>(n));

    bool truncated = true;
    for (int d = 1; d < cap; ++d)
        if (B.extend(d) == 0) {
            truncated = false;
            break;
        }
    if (truncated && B.size.back() == 0) truncated = false;

    GradedLieAlgebra L;
    static_cast<LieAlgebra&>(L) = LieAlgebra(in.field, B.total());
    L.graph_ = in.graph;
    L.labels_ = B.labels;
    L.degrees_ = B.degree;
    for (std::size_t d = 1; d < B.size.size(); ++d)
        if (B.size[d]) L.profile_.push_back(B.size[d]);
    L.truncated_ = truncated;
    if (truncated && !in.allow_truncation)
        throw TruncatedAtCap("degree cap " + std::to_string(cap) + " reached with profile " + L.profile_text());

    // Full table, rows in degree order: [e_a, e_b] = [x_m, [e_p, e_b]] - [e_p, [x_m, e_b]].
    const std::size_t N = B.total();
    std::vector<std::vector<Vector>> row(N);
    for (std::size_t a = 0; a < N; ++a) {
        row[a].reserve(N);
        for (std::size_t b = 0; b < N; ++b) {
            Vector eb = Vector::unit(in.field, N, b);
            if (B.degree[a] == 1) {
                row[a].push_back(B.ad_gen(static_cast<int>(a), eb));
                continue;
            }
            auto [m, p] = B.witness[a];
            Vector v = B.ad_gen(m, row[p][b]);
            Vector mb = B.ad_gen(m, eb);
            for (std::size_t c = 0; c < N; ++c)
                if (!mb[c].is_zero()) v.add_scaled(-mb[c], row[p][c]);
            row[a].push_back(v);
        }
    }
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = a + 1; b < N; ++b) {
            if (row[a][b] != -row[b][a])
                throw Error("internal: presentation table is not antisymmetric at (" + std::to_string(a) + "," +
                            std::to_string(b) + ")");
            L.set_bracket(a, b, row[a][b]);
        }
    return L;
}

bool IdentityReport::ok() const {
    for (const auto& t : tallies)
        if (t.passed != t.tried) return false;
    return true;
}

IdentityReport check_identities_Q(const GradedLieAlgebra& L, int samples, std::uint64_t seed) {
    const SimpleGraph& G = L.graph();
    const int n = G.n;
    std::mt19937_64 rng(seed);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto x = [&](int i) { return L.generator(i); };
    auto br = [&](const Vector& a, const Vector& b) { return L.bracket(a, b); };
    auto random_t = [&] { return L.basis_vector(static_cast<std::size_t>(pick(0, static_cast<int>(L.dim()) - 1))); };
    auto fail = [](const std::string& what) { throw IdentityViolation(what); };

    IdentityReport rep;
    IdentityReport::Tally q1{"Q1"}, q2{"Q2"}, q4{"Q4"};

    std::vector<std::pair<int, int>> commuting;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (!G.adjacent(i, j)) commuting.push_back({i, j});
    std::vector<int> q2_starts;
    for (int i = 1; i + 2 <= n && i < n - 2; ++i)
        if (!G.adjacent(i, i + 2)) q2_starts.push_back(i);

    for (int s = 0; s < samples; ++s) {
        if (!commuting.empty()) {
            auto [i, j] = commuting[pick(0, static_cast<int>(commuting.size()) - 1)];
            Vector t = random_t();
            ++q1.tried;
            if (br(x(j), br(x(i), t)) != br(x(i), br(x(j), t)))
                fail("Q1 fails for i=" + std::to_string(i) + ", j=" + std::to_string(j));
            ++q1.passed;

            // Q4: x_i applied to a word in generators commuting with x_i
            std::vector<int> J;
            for (int k = 1; k <= n; ++k)
                if (k != i && !G.adjacent(i, k)) J.push_back(k);
            Monomial w{i};
            int len = pick(1, 4);
            for (int q = 0; q < len; ++q) w.push_back(J[pick(0, static_cast<int>(J.size()) - 1)]);
            ++q4.tried;
            if (!evaluate_monomial(L, L.generators(), w).is_zero()) fail("Q4 fails for " + monomial_to_string(w));
            ++q4.passed;
        }
        if (!q2_starts.empty()) {
            int i = q2_starts[pick(0, static_cast<int>(q2_starts.size()) - 1)];
            Vector t = random_t();
            ++q2.tried;
            if (!br(x(i), br(x(i + 1), br(x(i + 2), br(x(i), t)))).is_zero())
                fail("Q2 fails for i=" + std::to_string(i));
            ++q2.passed;
        }
    }
    rep.tallies = {q1, q2, q4};
    return rep;
}

}  // namespace exlie
