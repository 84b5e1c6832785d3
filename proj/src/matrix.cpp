#include "exlie/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace exlie {

// ---------------------------------------------------------------- Vector

Vector::Vector(Field F, std::vector<FieldElement> e) : F_(F), e_(std::move(e)) {
    for (const auto& x : e_)
        if (x.field() != F_) throw DescriptorMismatch("vector entry from " + x.field().name());
}

Vector Vector::unit(Field F, std::size_t n, std::size_t i) {
    Vector v(F, n);
    v[i] = F.one();
    return v;
}

Vector Vector::from_ints(Field F, const std::vector<long long>& v) {
    Vector out(F, v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = F.from_int(v[i]);
    return out;
}

void Vector::check(const Vector& o) const {
    if (F_ != o.F_) throw DescriptorMismatch("vectors over different fields");
    if (size() != o.size())
        throw DimensionMismatch("vector sizes " + std::to_string(size()) + " and " + std::to_string(o.size()));
}

bool Vector::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const FieldElement& x) { return x.is_zero(); });
}

std::size_t Vector::leading_index() const {
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (!e_[i].is_zero()) return i;
    return e_.size();
}

Vector Vector::operator+(const Vector& o) const {
    Vector r = *this;
    r += o;
    return r;
}
Vector Vector::operator-(const Vector& o) const {
    Vector r = *this;
    r -= o;
    return r;
}
Vector Vector::operator-() const {
    Vector r = *this;
    for (auto& x : r.e_) x = -x;
    return r;
}
Vector Vector::operator*(const FieldElement& c) const {
    Vector r = *this;
    for (auto& x : r.e_) x *= c;
    return r;
}
Vector& Vector::operator+=(const Vector& o) {
    check(o);
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}
Vector& Vector::operator-=(const Vector& o) {
    check(o);
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
}
void Vector::add_scaled(const FieldElement& c, const Vector& o) {
    check(o);
    if (c.is_zero()) return;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (!o.e_[i].is_zero()) e_[i].add_mul(c, o.e_[i]);
}
bool Vector::operator==(const Vector& o) const { return F_ == o.F_ && e_ == o.e_; }

FieldElement Vector::dot(const Vector& o) const {
    check(o);
    FieldElement s = F_.zero();
    for (std::size_t i = 0; i < e_.size(); ++i) s.add_mul(e_[i], o.e_[i]);
    return s;
}

Vector Vector::embed(Field target) const {
    Vector r(target, size());
    for (std::size_t i = 0; i < size(); ++i) r[i] = target.embed(e_[i]);
    return r;
}

std::string Vector::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (i) s += ", ";
        s += e_[i].to_string();
    }
    return s + ")";
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(Field F, std::size_t rows, std::size_t cols) : F_(F), r_(rows), c_(cols), e_(rows * cols, F.zero()) {}

Matrix Matrix::identity(Field F, std::size_t n) {
    Matrix m(F, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F.one();
    return m;
}

Matrix Matrix::from_ints(Field F, const std::vector<std::vector<long long>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    Matrix m(F, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw DimensionMismatch("ragged matrix literal");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = F.from_int(rows[i][j]);
    }
    return m;
}

Matrix Matrix::from_rows(Field F, const std::vector<Vector>& rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    Matrix m(F, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw DimensionMismatch("rows of unequal length");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::from_columns(Field F, std::size_t nrows, const std::vector<Vector>& cols) {
    Matrix m(F, nrows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != nrows) throw DimensionMismatch("column of wrong length");
        for (std::size_t i = 0; i < nrows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

Matrix Matrix::outer(const Vector& u, const Vector& v) {
    if (u.field() != v.field()) throw DescriptorMismatch("outer product over different fields");
    Matrix m(u.field(), u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i].is_zero()) continue;
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j];
    }
    return m;
}

Matrix Matrix::unflatten(const Vector& v, std::size_t rows, std::size_t cols) {
    if (v.size() != rows * cols) throw DimensionMismatch("cannot reshape vector");
    Matrix m(v.field(), rows, cols);
    m.e_ = v.entries();
    return m;
}

Vector Matrix::row(std::size_t i) const {
    return Vector(F_, std::vector<FieldElement>(e_.begin() + i * c_, e_.begin() + (i + 1) * c_));
}

Vector Matrix::col(std::size_t j) const {
    Vector v(F_, r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Matrix::check_same_shape(const Matrix& o) const {
    if (F_ != o.F_) throw DescriptorMismatch("matrices over different fields");
    if (r_ != o.r_ || c_ != o.c_) throw DimensionMismatch("matrix shapes differ");
}

Matrix Matrix::operator+(const Matrix& o) const {
    Matrix r = *this;
    r += o;
    return r;
}
Matrix Matrix::operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
    return r;
}
Matrix Matrix::operator-() const {
    Matrix r = *this;
    for (auto& x : r.e_) x = -x;
    return r;
}
Matrix& Matrix::operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}
void Matrix::add_scaled(const FieldElement& c, const Matrix& o) {
    check_same_shape(o);
    if (c.is_zero()) return;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (!o.e_[i].is_zero()) e_[i].add_mul(c, o.e_[i]);
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (F_ != o.F_) throw DescriptorMismatch("matrices over different fields");
    if (c_ != o.r_) throw DimensionMismatch("inner dimensions differ");
    Matrix r(F_, r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const FieldElement& a = (*this)(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < o.c_; ++j) {
                const FieldElement& b = o(k, j);
                if (!b.is_zero()) r(i, j).add_mul(a, b);
            }
        }
    return r;
}

Matrix Matrix::operator*(const FieldElement& c) const {
    Matrix r = *this;
    for (auto& x : r.e_) x *= c;
    return r;
}

Vector Matrix::operator*(const Vector& v) const {
    if (F_ != v.field()) throw DescriptorMismatch("matrix and vector over different fields");
    if (c_ != v.size()) throw DimensionMismatch("matrix-vector size mismatch");
    Vector r(F_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j)
            if (!v[j].is_zero()) r[i].add_mul((*this)(i, j), v[j]);
    return r;
}

bool Matrix::operator==(const Matrix& o) const { return F_ == o.F_ && r_ == o.r_ && c_ == o.c_ && e_ == o.e_; }

Matrix Matrix::transpose() const {
    Matrix t(F_, c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

FieldElement Matrix::trace() const {
    if (r_ != c_) throw DimensionMismatch("trace of a non-square matrix");
    FieldElement s = F_.zero();
    for (std::size_t i = 0; i < r_; ++i) s += (*this)(i, i);
    return s;
}

bool Matrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const FieldElement& x) { return x.is_zero(); });
}

std::size_t Matrix::rank() const { return rref(*this).rank; }

Matrix Matrix::embed(Field target) const {
    Matrix m(target, r_, c_);
    for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = target.embed(e_[i]);
    return m;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < r_; ++i) {
        for (std::size_t j = 0; j < c_; ++j) {
            if (j) os << ' ';
            os << (*this)(i, j).to_string();
        }
        os << '\n';
    }
    return os.str();
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

// ---------------------------------------------------------------- elimination

RrefResult rref(const Matrix& m) {
    RrefResult out{m, {}, 0};
    Matrix& a = out.reduced;
    const std::size_t R = a.rows(), C = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t piv = R;
        for (std::size_t i = r; i < R; ++i)
            if (!a(i, c).is_zero()) {
                piv = i;
                break;
            }
        if (piv == R) continue;
        if (piv != r)
            for (std::size_t j = 0; j < C; ++j) std::swap(a(piv, j), a(r, j));
        FieldElement inv = a(r, c).inv();
        for (std::size_t j = c; j < C; ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            FieldElement f = a(i, c);
            for (std::size_t j = c; j < C; ++j)
                if (!a(r, j).is_zero()) a(i, j).sub_mul(f, a(r, j));
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    return out;
}

std::optional<AffineSolution> solve(const Matrix& m, const Vector& b) {
    if (b.size() != m.rows()) throw DimensionMismatch("right-hand side has wrong length");
    const std::size_t C = m.cols();
    Matrix aug(m.field(), m.rows(), C + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < C; ++j) aug(i, j) = m(i, j);
        aug(i, C) = b[i];
    }
    RrefResult rr = rref(aug);
    if (!rr.pivots.empty() && rr.pivots.back() == C) return std::nullopt;
    AffineSolution sol{Vector(m.field(), C), {}};
    std::vector<bool> is_pivot(C, false);
    for (std::size_t k = 0; k < rr.pivots.size(); ++k) {
        is_pivot[rr.pivots[k]] = true;
        sol.particular[rr.pivots[k]] = rr.reduced(k, C);
    }
    for (std::size_t f = 0; f < C; ++f) {
        if (is_pivot[f]) continue;
        Vector k(m.field(), C);
        k[f] = m.field().one();
        for (std::size_t r = 0; r < rr.pivots.size(); ++r) k[rr.pivots[r]] = -rr.reduced(r, f);
        sol.homogeneous.push_back(std::move(k));
    }
    return sol;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    Matrix aug(m.field(), n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = m.field().one();
    }
    RrefResult rr = rref(aug);
    if (rr.rank < n || rr.pivots[n - 1] != n - 1) return std::nullopt;
    Matrix out(m.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = rr.reduced(i, n + j);
    return out;
}

std::vector<Vector> kernel(const Matrix& m) {
    std::vector<Vector> ks = solve(m, Vector(m.field(), m.rows()))->homogeneous;
    // scale so the leading entry is 1
    for (auto& k : ks) k = k * k[k.leading_index()].inv();
    return ks;
}

std::optional<Vector> in_span(const Vector& v, const std::vector<Vector>& basis) {
    Field F = v.field();
    for (const auto& b : basis)
        if (b.size() != v.size()) throw DimensionMismatch("basis vector of wrong length");
    if (basis.empty()) {
        if (v.is_zero()) return Vector(F, 0);
        return std::nullopt;
    }
    auto sol = solve(Matrix::from_columns(F, v.size(), basis), v);
    if (!sol) return std::nullopt;
    return sol->particular;
}

// ---------------------------------------------------------------- EchelonBasis

Vector EchelonBasis::reduce(const Vector& v) const {
    if (v.size() != n_) throw DimensionMismatch("vector outside the ambient space");
    Vector w = v;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const FieldElement c = w[pivots_[k]];
        if (!c.is_zero()) w.add_scaled(-c, rows_[k]);
    }
    return w;
}

bool EchelonBasis::add(const Vector& v) {
    Vector w = reduce(v);
    std::size_t lead = w.leading_index();
    if (lead == n_) return false;
    w = w * w[lead].inv();
    for (auto& r : rows_) {
        const FieldElement c = r[lead];
        if (!c.is_zero()) r.add_scaled(-c, w);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, lead);
    rows_.insert(rows_.begin() + pos, std::move(w));
    return true;
}

std::optional<Vector> EchelonBasis::coordinates(const Vector& v) const {
    if (!reduce(v).is_zero()) return std::nullopt;
    return coordinates_unchecked(v);
}

Vector EchelonBasis::coordinates_unchecked(const Vector& v) const {
    Vector c(F_, rows_.size());
    for (std::size_t k = 0; k < rows_.size(); ++k) c[k] = v[pivots_[k]];
    return c;
}

}  // namespace exlie
