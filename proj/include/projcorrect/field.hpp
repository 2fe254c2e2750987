#pragma once

// Finite fields GF(p^k) for small q, with table-driven arithmetic.
//
// Elements are identified with their integer code: the coefficients of the
// residue polynomial read little-endian in base p.  All tables are built once
// per Field and shared between copies, so a Field is cheap to pass by value.

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "projcorrect/errors.hpp"

namespace projcorrect {

/// Largest field order supported (tables are q*q).
inline constexpr int kMaxFieldOrder = 128;

struct FieldSpec {
    int p = 2;
    int k = 1;
    std::vector<int> modulus{0, 1};  // k+1 coefficients, little-endian, monic

    int order() const;

    /// Throws PreconditionError unless p is prime, the modulus is monic of
    /// degree k with coefficients in [0, p), irreducible, and q <= 128.
    void validate() const;

    /// Built-in moduli for p in {2,3,5,7} and k <= 3 (plus GF(8), GF(16),
    /// GF(32), GF(64) and GF(128) over F_2).
    static FieldSpec standard(int p, int k);

    /// Looks up the standard modulus for q = p^k.
    static FieldSpec for_order(int q);

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Integer code of a field element, in [0, q).
struct Elem {
    std::uint32_t code = 0;

    friend constexpr auto operator<=>(Elem, Elem) = default;
};

/// The automorphism x -> x^(p^exponent).
struct Frobenius {
    int exponent = 0;

    friend constexpr bool operator==(Frobenius, Frobenius) = default;
};

bool is_prime(int value);

/// Exhaustive irreducibility test for a monic polynomial over F_p.
bool is_irreducible(int p, std::span<const int> monic_coeffs);

class Field {
public:
    explicit Field(FieldSpec spec);
    Field() : Field(FieldSpec{}) {}

    const FieldSpec& spec() const { return tables_->spec; }
    int p() const { return tables_->spec.p; }
    int k() const { return tables_->spec.k; }
    int q() const { return tables_->q; }

    Elem zero() const { return Elem{0}; }
    Elem one() const { return Elem{1}; }

    Elem add(Elem a, Elem b) const { return Elem{tables_->add[index(a, b)]}; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const { return Elem{tables_->mul[index(a, b)]}; }
    Elem neg(Elem a) const { return Elem{tables_->neg[a.code]}; }

    /// Throws PreconditionError for zero.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem frobenius(Frobenius j, Elem a) const;
    Frobenius compose(Frobenius a, Frobenius b) const { return Frobenius{(a.exponent + b.exponent) % k()}; }

    /// Elements in increasing code order.
    std::vector<Elem> elements() const;

    Elem from_code(std::int64_t code) const;
    Elem from_coeffs(std::span<const int> coeffs) const;
    std::vector<int> coeffs(Elem a) const;

    /// The prime-field element n mod p.
    Elem from_int(std::int64_t n) const;

    std::string to_string(Elem a) const;

    friend bool operator==(const Field& a, const Field& b) {
        return a.tables_ == b.tables_ || a.spec() == b.spec();
    }

private:
    struct Tables {
        FieldSpec spec;
        int q = 0;
        std::vector<std::uint32_t> add;
        std::vector<std::uint32_t> mul;
        std::vector<std::uint32_t> neg;
        std::vector<std::uint32_t> inv;
        std::vector<std::vector<std::uint32_t>> frob;  // frob[j][a] = a^(p^j)
    };

    std::size_t index(Elem a, Elem b) const { return static_cast<std::size_t>(a.code) * tables_->q + b.code; }

    std::shared_ptr<const Tables> tables_;
};

/// An element bundled with its field.  Mixing elements of different fields
/// throws PreconditionError.
class FieldElement {
public:
    FieldElement(Field field, Elem value) : field_(std::move(field)), value_(value) {}

    const Field& field() const { return field_; }
    Elem value() const { return value_; }
    std::uint32_t code() const { return value_.code; }
    std::vector<int> coeffs() const { return field_.coeffs(value_); }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.field_ == b.field_ && a.value_ == b.value_;
    }

private:
    Field field_;
    Elem value_;
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement inv(const FieldElement& a);
FieldElement frobenius_apply(Frobenius j, const FieldElement& a);
std::vector<FieldElement> enumerate_elements(const FieldSpec& spec);

}  // namespace projcorrect
