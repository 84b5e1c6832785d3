#include "exlie/lie.hpp"

#include <sstream>

namespace exlie {

SparseVector to_sparse(const Vector& v) {
    SparseVector s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) s.push_back({i, v[i]});
    return s;
}

Vector to_dense(Field F, std::size_t n, const SparseVector& s) {
    Vector v(F, n);
    for (const auto& [i, c] : s) v[i] = c;
    return v;
}

LieAlgebra::LieAlgebra(Field F, std::size_t dim) : F_(F), dim_(dim), table_(dim * dim) {}

void LieAlgebra::set_bracket(std::size_t i, std::size_t j, const Vector& v) {
    if (i >= dim_ || j >= dim_ || v.size() != dim_) throw DimensionMismatch("set_bracket outside the basis");
    table_[i * dim_ + j] = to_sparse(v);
    table_[j * dim_ + i] = to_sparse(-v);
}

Vector LieAlgebra::bracket(const Vector& a, const Vector& b) const {
    if (a.size() != dim_ || b.size() != dim_) throw DimensionMismatch("bracket: coordinate length");
    Vector out(F_, dim_);
    SparseVector sa = to_sparse(a), sb = to_sparse(b);
    for (const auto& [i, ca] : sa)
        for (const auto& [j, cb] : sb) {
            const SparseVector& t = table_[i * dim_ + j];
            if (t.empty()) continue;
            FieldElement c = ca * cb;
            for (const auto& [k, ck] : t) out[k].add_mul(c, ck);
        }
    return out;
}

LieAlgebra LieAlgebra::embed(Field K) const {
    LieAlgebra out(K, dim_);
    for (std::size_t i = 0; i < table_.size(); ++i)
        for (const auto& [k, c] : table_[i]) out.table_[i].push_back({k, K.embed(c)});
    return out;
}

Matrix LieAlgebra::ad(const Vector& a) const {
    Matrix m(F_, dim_, dim_);
    SparseVector sa = to_sparse(a);
    for (std::size_t col = 0; col < dim_; ++col)
        for (const auto& [i, ca] : sa)
            for (const auto& [k, ck] : table_[i * dim_ + col]) m(k, col).add_mul(ca, ck);
    return m;
}

std::string LieAlgebra::antisymmetry_failure() const {
    for (std::size_t i = 0; i < dim_; ++i) {
        if (!table_[i * dim_ + i].empty()) return "[e" + std::to_string(i) + ", e" + std::to_string(i) + "] != 0";
        for (std::size_t j = i + 1; j < dim_; ++j) {
            Vector a = to_dense(F_, dim_, table_[i * dim_ + j]);
            Vector b = to_dense(F_, dim_, table_[j * dim_ + i]);
            if (a != -b) return "[e" + std::to_string(i) + ", e" + std::to_string(j) + "] not antisymmetric";
        }
    }
    return {};
}

std::string LieAlgebra::jacobi_failure() const {
    // ad [e_i, e_j] = [ad e_i, ad e_j] is equivalent to Jacobi on all triples
    std::vector<Matrix> ads;
    ads.reserve(dim_);
    for (std::size_t i = 0; i < dim_; ++i) ads.push_back(ad(basis_vector(i)));
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i + 1; j < dim_; ++j) {
            Matrix lhs(F_, dim_, dim_);
            for (const auto& [k, c] : table_[i * dim_ + j]) lhs.add_scaled(c, ads[k]);
            if (lhs != commutator(ads[i], ads[j]))
                return "Jacobi fails for e" + std::to_string(i) + ", e" + std::to_string(j);
        }
    return {};
}

std::string LieAlgebra::structure_constants_text() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i + 1; j < dim_; ++j)
            for (const auto& [k, c] : table_[i * dim_ + j])
                os << i + 1 << ' ' << j + 1 << ' ' << k + 1 << ' ' << c.to_string() << '\n';
    return os.str();
}

EchelonBasis subalgebra_closure(const LieAlgebra& L, const std::vector<Vector>& gens) {
    EchelonBasis E(L.field(), L.dim());
    std::vector<Vector> elems, fresh;
    for (const auto& g : gens)
        if (E.add(g)) fresh.push_back(g);
    while (!fresh.empty()) {
        std::vector<Vector> next;
        for (const auto& a : fresh) {
            for (const auto& b : elems) {
                Vector c = L.bracket(a, b);
                if (E.add(c)) next.push_back(c);
            }
            elems.push_back(a);
        }
        // pairs within the fresh batch are covered because each a is pushed
        // onto elems before later members of the batch see it
        fresh = std::move(next);
    }
    return E;
}

namespace {

template <class T, class Br>
T fold(const std::vector<T>& gens, const Monomial& m, Br br) {
    if (m.empty()) throw IndexOutOfRange("empty monomial");
    for (int i : m)
        if (i < 1 || static_cast<std::size_t>(i) > gens.size())
            throw IndexOutOfRange("monomial index " + std::to_string(i) + " outside 1.." +
                                  std::to_string(gens.size()));
    T acc = gens[m.back() - 1];
    for (std::size_t p = m.size() - 1; p-- > 0;) acc = br(gens[m[p] - 1], acc);
    return acc;
}

}  // namespace

Vector evaluate_monomial(const LieAlgebra& L, const std::vector<Vector>& gens, const Monomial& m) {
    return fold(gens, m, [&](const Vector& a, const Vector& b) { return L.bracket(a, b); });
}

Matrix evaluate_monomial(const std::vector<Matrix>& gens, const Monomial& m) {
    return fold(gens, m, [](const Matrix& a, const Matrix& b) { return commutator(a, b); });
}

}  // namespace exlie
