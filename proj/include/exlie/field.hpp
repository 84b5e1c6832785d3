#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "exlie/errors.hpp"

namespace exlie {

class FieldElement;
struct FieldDescriptor;

enum class FieldKind { Rationals, PrimeField, QuadraticExtension };

// Handle to an interned, immutable field descriptor. Two handles compare equal
// iff they denote the same field.
class Field {
public:
    Field() = default;
    static Field rationals();
    static Field prime(std::uint64_t p);
    // Adjoins a square root of d, which must be a non-square of the base.
    static Field quadratic(const Field& base, const FieldElement& d);

    // Like quadratic(), but over Q and GF(p) the radicand is first replaced by a
    // canonical representative of its square class.
    Field adjoin_sqrt(const FieldElement& d) const;

    FieldKind kind() const;
    std::uint64_t characteristic() const;  // 0 for Q
    Field base() const;                    // quadratic extensions only
    Field prime_subfield() const;          // Q or GF(p) at the bottom of the tower
    const FieldElement& radicand() const;  // quadratic extensions only
    int depth() const;
    const std::string& name() const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(long long v) const;
    FieldElement from_mpz(const mpz_class& v) const;
    FieldElement from_rational(const mpq_class& q) const;
    // "p", "-p", "p/q" with optional sign; throws InvalidField on junk.
    FieldElement parse(const std::string& literal) const;
    FieldElement sqrt_generator() const;  // the adjoined root

    bool contains(const Field& sub) const;  // sub lies on this field's tower
    FieldElement embed(const FieldElement& x) const;

    bool valid() const { return d_ != nullptr; }
    const FieldDescriptor* raw() const { return d_; }
    bool operator==(const Field& o) const { return d_ == o.d_; }
    bool operator!=(const Field& o) const { return d_ != o.d_; }

private:
    explicit Field(const FieldDescriptor* d) : d_(d) {}
    const FieldDescriptor* d_ = nullptr;
    friend class FieldElement;
};

class FieldElement {
public:
    FieldElement() = default;

    Field field() const { return Field(F_); }
    bool valid() const { return F_ != nullptr; }

    bool is_zero() const;
    bool is_one() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);
    // this -= a*b, the inner step of elimination
    void sub_mul(const FieldElement& a, const FieldElement& b);
    void add_mul(const FieldElement& a, const FieldElement& b);

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    FieldElement inv() const;
    FieldElement pow(long long e) const;
    std::optional<FieldElement> sqrt() const;
    bool is_square() const { return sqrt().has_value(); }

    // Of {x, -x}, true for the one sqrt() returns: x >= 0 over Q, the smaller
    // residue over GF(p), decided by the first nonzero coordinate otherwise.
    bool preferred_sign() const;

    // Coordinates
    const mpq_class& rational() const;
    std::uint64_t residue() const;
    const FieldElement& re() const;  // a in a + b sqrt(d)
    const FieldElement& im() const;  // b
    // Returns the element as a member of the base field when it lies there.
    std::optional<FieldElement> descend() const;
    // Descends the whole tower if possible.
    std::optional<FieldElement> to_prime_subfield() const;

    std::string to_string() const;

private:
    using Pair = std::pair<FieldElement, FieldElement>;
    using Rep = std::variant<std::uint64_t, mpq_class, std::shared_ptr<const Pair>>;

    FieldElement(const FieldDescriptor* F, Rep v) : F_(F), v_(std::move(v)) {}
    static FieldElement make_pair(const FieldDescriptor* F, FieldElement a, FieldElement b);
    void check_same(const FieldElement& o) const;
    void require_valid() const;

    const FieldDescriptor* F_ = nullptr;
    Rep v_;

    friend class Field;
    friend struct FieldDescriptor;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

struct FieldDescriptor {
    FieldKind kind{};
    std::uint64_t p = 0;
    const FieldDescriptor* base = nullptr;
    FieldElement d;  // radicand, element of base
    int depth = 0;
    std::string name;
};

class SquareRootUnavailable : public Error {
public:
    SquareRootUnavailable(const std::string& msg, FieldElement radicand)
        : Error(msg), radicand_(std::move(radicand)) {}
    const FieldElement& radicand() const { return radicand_; }
private:
    FieldElement radicand_;
};

// The default test prime.
inline constexpr std::uint64_t kDefaultPrime = 2147483629ULL;

// Square root or SquareRootUnavailable.
FieldElement require_sqrt(const FieldElement& a, const std::string& context);

}  // namespace exlie
