#include "exlie/field.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <ostream>
#include <regex>

namespace exlie {

namespace {

struct Registry {
    std::mutex m;
    std::deque<FieldDescriptor> store;
    std::map<std::string, const FieldDescriptor*> by_name;
};

Registry& registry() {
    static Registry r;
    return r;
}

const FieldDescriptor* intern(FieldDescriptor d) {
    Registry& r = registry();
    std::lock_guard<std::mutex> lock(r.m);
    auto it = r.by_name.find(d.name);
    if (it != r.by_name.end()) return it->second;
    r.store.push_back(std::move(d));
    const FieldDescriptor* ptr = &r.store.back();
    r.by_name.emplace(ptr->name, ptr);
    return ptr;
}

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 addmod(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    return s >= p ? s - p : s;
}
u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + (p - b); }
u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((u128)a * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) {
    __int128 t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        __int128 q = r / nr;
        __int128 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0) t += p;
    return static_cast<u64>(t);
}

// Tonelli-Shanks; a must be a nonzero quadratic residue.
u64 tonelli_shanks(u64 a, u64 p) {
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        u64 b = c;
        for (u64 j = 0; j + 1 < m - i; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

bool is_residue(u64 a, u64 p) { return a == 0 || powmod(a, (p - 1) / 2, p) == 1; }

mpz_class squarefree_part(const mpz_class& n) {
    mpz_class m = abs(n), out = 1;
    for (unsigned long q = 2; q < 1000000 && q * q <= m; ++q) {
        int e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), q)) {
            m /= q;
            ++e;
        }
        if (e & 1) out *= q;
    }
    out *= m;
    return sgn(n) < 0 ? mpz_class(-out) : out;
}

}  // namespace

// ---------------------------------------------------------------- Field

Field Field::rationals() {
    static const FieldDescriptor* q = [] {
        FieldDescriptor d;
        d.kind = FieldKind::Rationals;
        d.name = "Q";
        return intern(std::move(d));
    }();
    return Field(q);
}

Field Field::prime(std::uint64_t p) {
    if (p == 2) throw InvalidField("characteristic 2 is not supported");
    if (p < 3 || p >= (1ULL << 62)) throw InvalidField("prime out of range: " + std::to_string(p));
    mpz_class z(std::to_string(p));
    if (mpz_probab_prime_p(z.get_mpz_t(), 40) == 0)
        throw InvalidField("not a prime: " + std::to_string(p));
    FieldDescriptor d;
    d.kind = FieldKind::PrimeField;
    d.p = p;
    d.name = "GF(" + std::to_string(p) + ")";
    return Field(intern(std::move(d)));
}

Field Field::quadratic(const Field& base, const FieldElement& d) {
    if (!base.valid() || d.field() != base) throw DescriptorMismatch("radicand not in base field");
    if (d.is_square()) throw InvalidField("radicand " + d.to_string() + " is a square in " + base.name());
    FieldDescriptor fd;
    fd.kind = FieldKind::QuadraticExtension;
    fd.p = base.characteristic();
    fd.base = base.d_;
    fd.d = d;
    fd.depth = base.depth() + 1;
    fd.name = base.name() + "[sqrt(" + d.to_string() + ")]";
    return Field(intern(std::move(fd)));
}

Field Field::adjoin_sqrt(const FieldElement& d) const {
    if (d.field() != *this) throw DescriptorMismatch("radicand not in field");
    if (d.is_square()) throw InvalidField("radicand " + d.to_string() + " is already a square");
    switch (kind()) {
        case FieldKind::Rationals: {
            const mpq_class& q = d.rational();
            mpz_class n = q.get_num() * q.get_den();
            return quadratic(*this, from_mpz(squarefree_part(n)));
        }
        case FieldKind::PrimeField: {
            u64 k = 2;
            while (is_residue(k % d_->p, d_->p)) ++k;
            return quadratic(*this, from_int(static_cast<long long>(k)));
        }
        default:
            return quadratic(*this, d);
    }
}

FieldKind Field::kind() const { return d_->kind; }
std::uint64_t Field::characteristic() const { return d_->p; }
Field Field::base() const {
    if (d_->kind != FieldKind::QuadraticExtension) throw InvalidField(name() + " has no base field");
    return Field(d_->base);
}
Field Field::prime_subfield() const {
    const FieldDescriptor* f = d_;
    while (f->kind == FieldKind::QuadraticExtension) f = f->base;
    return Field(f);
}
const FieldElement& Field::radicand() const {
    if (d_->kind != FieldKind::QuadraticExtension) throw InvalidField(name() + " has no radicand");
    return d_->d;
}
int Field::depth() const { return d_->depth; }
const std::string& Field::name() const { return d_->name; }

FieldElement Field::zero() const { return from_int(0); }
FieldElement Field::one() const { return from_int(1); }

FieldElement Field::from_int(long long v) const {
    switch (d_->kind) {
        case FieldKind::Rationals:
            return FieldElement(d_, mpq_class(static_cast<long>(v)));
        case FieldKind::PrimeField: {
            long long p = static_cast<long long>(d_->p);
            long long r = v % p;
            if (r < 0) r += p;
            return FieldElement(d_, static_cast<u64>(r));
        }
        default: {
            Field b(d_->base);
            return FieldElement::make_pair(d_, b.from_int(v), b.zero());
        }
    }
}

FieldElement Field::from_mpz(const mpz_class& v) const {
    switch (d_->kind) {
        case FieldKind::Rationals:
            return FieldElement(d_, mpq_class(v));
        case FieldKind::PrimeField: {
            mpz_class r;
            mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), d_->p);
            return FieldElement(d_, static_cast<u64>(r.get_ui()));
        }
        default: {
            Field b(d_->base);
            return FieldElement::make_pair(d_, b.from_mpz(v), b.zero());
        }
    }
}

FieldElement Field::from_rational(const mpq_class& q) const {
    if (d_->kind == FieldKind::Rationals) {
        mpq_class c(q);
        if (c.get_den() == 0) throw DivisionByZero("zero denominator");
        c.canonicalize();
        return FieldElement(d_, c);
    }
    FieldElement den = from_mpz(q.get_den());
    if (den.is_zero()) throw DivisionByZero("denominator vanishes in " + name());
    return from_mpz(q.get_num()) / den;
}

FieldElement Field::parse(const std::string& literal) const {
    static const std::regex re(R"(^\s*([+-]?)(\d+)(?:/(\d+))?\s*$)");
    std::smatch m;
    if (!std::regex_match(literal, m, re)) throw InvalidField("not a rational literal: '" + literal + "'");
    mpz_class num(m[2].str()), den(m[3].matched ? m[3].str() : std::string("1"));
    if (den == 0) throw InvalidField("zero denominator in '" + literal + "'");
    if (m[1].str() == "-") num = -num;
    mpq_class q(num, den);
    q.canonicalize();
    return from_rational(q);
}

FieldElement Field::sqrt_generator() const {
    Field b = base();
    return FieldElement::make_pair(d_, b.zero(), b.one());
}

bool Field::contains(const Field& sub) const {
    for (const FieldDescriptor* f = d_; f; f = f->base)
        if (f == sub.d_) return true;
    return false;
}

FieldElement Field::embed(const FieldElement& x) const {
    if (x.F_ == d_) return x;
    if (d_->kind != FieldKind::QuadraticExtension || !contains(x.field()))
        throw DescriptorMismatch("cannot embed " + x.field().name() + " into " + name());
    Field b(d_->base);
    return FieldElement::make_pair(d_, b.embed(x), b.zero());
}

// ---------------------------------------------------------------- FieldElement

FieldElement FieldElement::make_pair(const FieldDescriptor* F, FieldElement a, FieldElement b) {
    return FieldElement(F, std::make_shared<const Pair>(std::move(a), std::move(b)));
}

void FieldElement::require_valid() const {
    if (!F_) throw DescriptorMismatch("uninitialised field element");
}

void FieldElement::check_same(const FieldElement& o) const {
    require_valid();
    if (F_ != o.F_)
        throw DescriptorMismatch("operands from " + field().name() + " and " +
                                 (o.F_ ? o.field().name() : std::string("<none>")));
}

bool FieldElement::is_zero() const {
    require_valid();
    switch (F_->kind) {
        case FieldKind::Rationals: return sgn(std::get<mpq_class>(v_)) == 0;
        case FieldKind::PrimeField: return std::get<u64>(v_) == 0;
        default: {
            const auto& pr = *std::get<std::shared_ptr<const Pair>>(v_);
            return pr.first.is_zero() && pr.second.is_zero();
        }
    }
}

bool FieldElement::is_one() const { return *this == field().one(); }

FieldElement FieldElement::operator+(const FieldElement& o) const {
    FieldElement r = *this;
    r += o;
    return r;
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
    FieldElement r = *this;
    r -= o;
    return r;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same(o);
    switch (F_->kind) {
        case FieldKind::Rationals:
            return FieldElement(F_, mpq_class(std::get<mpq_class>(v_) * std::get<mpq_class>(o.v_)));
        case FieldKind::PrimeField:
            return FieldElement(F_, mulmod(std::get<u64>(v_), std::get<u64>(o.v_), F_->p));
        default: {
            const auto& x = *std::get<std::shared_ptr<const Pair>>(v_);
            const auto& y = *std::get<std::shared_ptr<const Pair>>(o.v_);
            FieldElement re = x.first * y.first;
            re.add_mul(F_->d, x.second * y.second);
            FieldElement im = x.first * y.second;
            im.add_mul(x.second, y.first);
            return make_pair(F_, std::move(re), std::move(im));
        }
    }
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inv(); }

FieldElement FieldElement::operator-() const {
    require_valid();
    switch (F_->kind) {
        case FieldKind::Rationals: return FieldElement(F_, mpq_class(-std::get<mpq_class>(v_)));
        case FieldKind::PrimeField: {
            u64 a = std::get<u64>(v_);
            return FieldElement(F_, a == 0 ? a : F_->p - a);
        }
        default: {
            const auto& x = *std::get<std::shared_ptr<const Pair>>(v_);
            return make_pair(F_, -x.first, -x.second);
        }
    }
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    check_same(o);
    switch (F_->kind) {
        case FieldKind::Rationals: std::get<mpq_class>(v_) += std::get<mpq_class>(o.v_); break;
        case FieldKind::PrimeField: {
            u64& a = std::get<u64>(v_);
            a = addmod(a, std::get<u64>(o.v_), F_->p);
            break;
        }
        default: {
            const auto& x = *std::get<std::shared_ptr<const Pair>>(v_);
            const auto& y = *std::get<std::shared_ptr<const Pair>>(o.v_);
            *this = make_pair(F_, x.first + y.first, x.second + y.second);
        }
    }
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    check_same(o);
    switch (F_->kind) {
        case FieldKind::Rationals: std::get<mpq_class>(v_) -= std::get<mpq_class>(o.v_); break;
        case FieldKind::PrimeField: {
            u64& a = std::get<u64>(v_);
            a = submod(a, std::get<u64>(o.v_), F_->p);
            break;
        }
        default: {
            const auto& x = *std::get<std::shared_ptr<const Pair>>(v_);
            const auto& y = *std::get<std::shared_ptr<const Pair>>(o.v_);
            *this = make_pair(F_, x.first - y.first, x.second - y.second);
        }
    }
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    check_same(o);
    switch (F_->kind) {
        case FieldKind::Rationals: std::get<mpq_class>(v_) *= std::get<mpq_class>(o.v_); break;
        case FieldKind::PrimeField: {
            u64& a = std::get<u64>(v_);
            a = mulmod(a, std::get<u64>(o.v_), F_->p);
            break;
        }
        default: *this = *this * o;
    }
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
    *this *= o.inv();
    return *this;
}

void FieldElement::sub_mul(const FieldElement& a, const FieldElement& b) {
    check_same(a);
    check_same(b);
    switch (F_->kind) {
        case FieldKind::Rationals: {
            mpq_class t = std::get<mpq_class>(a.v_) * std::get<mpq_class>(b.v_);
            std::get<mpq_class>(v_) -= t;
            break;
        }
        case FieldKind::PrimeField: {
            u64& x = std::get<u64>(v_);
            x = submod(x, mulmod(std::get<u64>(a.v_), std::get<u64>(b.v_), F_->p), F_->p);
            break;
        }
        default: *this -= a * b;
    }
}

void FieldElement::add_mul(const FieldElement& a, const FieldElement& b) {
    check_same(a);
    check_same(b);
    switch (F_->kind) {
        case FieldKind::Rationals: {
            mpq_class t = std::get<mpq_class>(a.v_) * std::get<mpq_class>(b.v_);
            std::get<mpq_class>(v_) += t;
            break;
        }
        case FieldKind::PrimeField: {
            u64& x = std::get<u64>(v_);
            x = addmod(x, mulmod(std::get<u64>(a.v_), std::get<u64>(b.v_), F_->p), F_->p);
            break;
        }
        default: *this += a * b;
    }
}

bool FieldElement::operator==(const FieldElement& o) const {
    if (F_ != o.F_) return false;
    if (!F_) return true;
    switch (F_->kind) {
        case FieldKind::Rationals: return std::get<mpq_class>(v_) == std::get<mpq_class>(o.v_);
        case FieldKind::PrimeField: return std::get<u64>(v_) == std::get<u64>(o.v_);
        default: {
            const auto& x = *std::get<std::shared_ptr<const Pair>>(v_);
            const auto& y = *std::get<std::shared_ptr<const Pair>>(o.v_);
            return x.first == y.first && x.second == y.second;
        }
    }
}

FieldElement FieldElement::inv() const {
    require_valid();
    if (is_zero()) throw DivisionByZero("inverse of zero in " + field().name());
    switch (F_->kind) {
        case FieldKind::Rationals: return FieldElement(F_, mpq_class(1 / std::get<mpq_class>(v_)));
        case FieldKind::PrimeField: return FieldElement(F_, invmod(std::get<u64>(v_), F_->p));
        default: {
            const auto& x = *std::get<std::shared_ptr<const Pair>>(v_);
            FieldElement norm = x.first * x.first;
            norm.sub_mul(F_->d, x.second * x.second);
            FieldElement ni = norm.inv();
            return make_pair(F_, x.first * ni, -(x.second * ni));
        }
    }
}

FieldElement FieldElement::pow(long long e) const {
    require_valid();
    FieldElement base = e < 0 ? inv() : *this;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    FieldElement r = field().one();
    while (k) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

std::optional<FieldElement> FieldElement::sqrt() const {
    require_valid();
    switch (F_->kind) {
        case FieldKind::Rationals: {
            const mpq_class& q = std::get<mpq_class>(v_);
            if (sgn(q) < 0) return std::nullopt;
            if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
                return std::nullopt;
            mpz_class a, b;
            mpz_sqrt(a.get_mpz_t(), q.get_num_mpz_t());
            mpz_sqrt(b.get_mpz_t(), q.get_den_mpz_t());
            return FieldElement(F_, mpq_class(a, b));
        }
        case FieldKind::PrimeField: {
            u64 a = std::get<u64>(v_), p = F_->p;
            if (a == 0) return *this;
            if (!is_residue(a, p)) return std::nullopt;
            u64 r = tonelli_shanks(a, p);
            return FieldElement(F_, std::min(r, p - r));
        }
        default: {
            const auto& x = *std::get<std::shared_ptr<const Pair>>(v_);
            const FieldElement& a = x.first;
            const FieldElement& b = x.second;
            Field base(F_->base);
            auto pick = [&](FieldElement r) {
                FieldElement n = -r;
                return r.preferred_sign() ? r : n;
            };
            if (b.is_zero()) {
                if (auto r = a.sqrt()) return pick(make_pair(F_, *r, base.zero()));
                if (auto s = (a / F_->d).sqrt()) return pick(make_pair(F_, base.zero(), *s));
                return std::nullopt;
            }
            FieldElement norm = a * a;
            norm.sub_mul(F_->d, b * b);
            auto n = norm.sqrt();
            if (!n) return std::nullopt;
            FieldElement half = base.from_int(2).inv();
            for (int sign : {1, -1}) {
                FieldElement x2 = (sign > 0 ? a + *n : a - *n) * half;
                if (x2.is_zero()) continue;
                if (auto xr = x2.sqrt()) {
                    FieldElement y = b / (base.from_int(2) * *xr);
                    return pick(make_pair(F_, *xr, y));
                }
            }
            return std::nullopt;
        }
    }
}

bool FieldElement::preferred_sign() const {
    require_valid();
    switch (F_->kind) {
        case FieldKind::Rationals: return sgn(std::get<mpq_class>(v_)) >= 0;
        case FieldKind::PrimeField: {
            u64 a = std::get<u64>(v_);
            return a <= F_->p - a || a == 0;
        }
        default: {
            const auto& x = *std::get<std::shared_ptr<const Pair>>(v_);
            return !x.first.is_zero() ? x.first.preferred_sign() : x.second.preferred_sign();
        }
    }
}

const mpq_class& FieldElement::rational() const {
    require_valid();
    if (F_->kind != FieldKind::Rationals) throw DescriptorMismatch("not a rational: " + to_string());
    return std::get<mpq_class>(v_);
}

std::uint64_t FieldElement::residue() const {
    require_valid();
    if (F_->kind != FieldKind::PrimeField) throw DescriptorMismatch("not a residue: " + to_string());
    return std::get<u64>(v_);
}

const FieldElement& FieldElement::re() const {
    require_valid();
    if (F_->kind != FieldKind::QuadraticExtension) throw DescriptorMismatch("not in an extension");
    return std::get<std::shared_ptr<const Pair>>(v_)->first;
}

const FieldElement& FieldElement::im() const {
    require_valid();
    if (F_->kind != FieldKind::QuadraticExtension) throw DescriptorMismatch("not in an extension");
    return std::get<std::shared_ptr<const Pair>>(v_)->second;
}

std::optional<FieldElement> FieldElement::descend() const {
    require_valid();
    if (F_->kind != FieldKind::QuadraticExtension) return std::nullopt;
    if (!im().is_zero()) return std::nullopt;
    return re();
}

std::optional<FieldElement> FieldElement::to_prime_subfield() const {
    FieldElement x = *this;
    while (x.F_->kind == FieldKind::QuadraticExtension) {
        auto d = x.descend();
        if (!d) return std::nullopt;
        x = *d;
    }
    return x;
}

std::string FieldElement::to_string() const {
    if (!F_) return "<unset>";
    switch (F_->kind) {
        case FieldKind::Rationals: return std::get<mpq_class>(v_).get_str();
        case FieldKind::PrimeField: return std::to_string(std::get<u64>(v_));
        default: {
            if (auto d = descend()) return d->to_string();
            const auto& x = *std::get<std::shared_ptr<const Pair>>(v_);
            return "(" + x.first.to_string() + ")+(" + x.second.to_string() + ")*sqrt(" +
                   F_->d.to_string() + ")";
        }
    }
}

std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.to_string(); }

FieldElement require_sqrt(const FieldElement& a, const std::string& context) {
    if (auto r = a.sqrt()) return *r;
    throw SquareRootUnavailable(context + ": " + a.to_string() + " is not a square in " + a.field().name() +
                                    " (retry over a quadratic extension)",
                                a);
}

}  // namespace exlie
