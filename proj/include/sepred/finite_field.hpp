#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace sepred {

/// Canonical element index: the polynomial sum c_i x^i encoded as sum c_i p^i.
using Elem = std::uint32_t;

inline constexpr std::uint64_t kDefaultFieldLimit = 1u << 20;

/// GF(p^e) with the Conway polynomial as modulus. Immutable once built;
/// share it through FieldPtr.
class Field {
public:
    /// Builds GF(p^e). Extension fields need an entry in the embedded Conway
    /// table (all p^e <= 512); prime fields only need p prime.
    static std::shared_ptr<const Field> make(std::uint32_t p, std::uint32_t e,
                                             std::uint64_t limit = kDefaultFieldLimit);

    /// Prime-power factorization of q followed by make(p, e).
    static std::shared_ptr<const Field> of_order(std::uint64_t q);

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t degree() const { return e_; }
    std::uint32_t order() const { return q_; }
    bool is_binary() const { return q_ == 2; }

    /// Modulus coefficients, constant term first (monic, length e+1).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    /// Throws InvalidArgument on zero.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t exponent) const;

    /// Multiplicative order of a nonzero element.
    std::uint64_t element_order(Elem a) const;

    bool operator==(const Field& o) const { return p_ == o.p_ && e_ == o.e_; }

    std::string name() const;

private:
    Field(std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus);

    Elem poly_mul(Elem a, Elem b) const;
    Elem digit_add(Elem a, Elem b, bool subtract) const;

    std::uint32_t p_;
    std::uint32_t e_;
    std::uint32_t q_;
    std::vector<std::uint32_t> modulus_;
    bool tables_ = false;
    std::vector<std::uint16_t> add_table_;
    std::vector<std::uint16_t> mul_table_;
    std::vector<std::uint16_t> neg_table_;
    std::vector<std::uint16_t> inv_table_;
};

using FieldPtr = std::shared_ptr<const Field>;

bool is_prime(std::uint64_t n);

/// Conway polynomial (constant term first) for GF(p^e), e >= 2, from the
/// embedded table; empty if (p, e) is not covered.
std::vector<std::uint32_t> conway_polynomial(std::uint32_t p, std::uint32_t e);

/// True if the monic polynomial (constant term first) is irreducible over GF(p).
/// Brute force over monic factors of degree <= deg/2; meant for small degrees.
bool is_irreducible_mod_p(const std::vector<std::uint32_t>& poly, std::uint32_t p);

/// Field element bound to its field. Arithmetic checks that both operands
/// share a field and throws InvalidArgument otherwise.
class FieldElement {
public:
    FieldElement(FieldPtr field, Elem value);

    const FieldPtr& field() const { return field_; }
    Elem value() const { return value_; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inverse() const;

    bool operator==(const FieldElement& o) const {
        return *field_ == *o.field_ && value_ == o.value_;
    }

private:
    const Field& same_field(const FieldElement& o) const;

    FieldPtr field_;
    Elem value_;
};

}  // namespace sepred
