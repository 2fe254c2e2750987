#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "projcorrect/field.hpp"

using namespace projcorrect;

namespace {

// Schoolbook polynomial arithmetic on coefficient vectors, reduced by the
// monic modulus; independent of the table-driven implementation.
struct Poly {
    int p;
    std::vector<int> modulus;

    std::vector<int> decode(std::uint32_t code) const {
        std::vector<int> c(modulus.size() - 1);
        for (auto& x : c) {
            x = static_cast<int>(code % p);
            code /= p;
        }
        return c;
    }
    std::uint32_t encode(const std::vector<int>& c) const {
        std::uint32_t code = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            code = code * p + static_cast<std::uint32_t>(*it);
        }
        return code;
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        auto x = decode(a);
        const auto y = decode(b);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = (x[i] + y[i]) % p;
        }
        return encode(x);
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        const auto x = decode(a);
        const auto y = decode(b);
        const std::size_t k = x.size();
        std::vector<int> prod(2 * k, 0);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        for (std::size_t d = 2 * k - 1; d >= k; --d) {
            const int c = prod[d];
            if (c == 0) {
                continue;
            }
            for (std::size_t i = 0; i <= k; ++i) {
                prod[d - k + i] = ((prod[d - k + i] - c * modulus[i]) % p + p) % p;
            }
        }
        prod.resize(k);
        return encode(prod);
    }
};

std::vector<FieldSpec> small_fields() {
    return {FieldSpec::for_order(2), FieldSpec::for_order(3), FieldSpec::for_order(4), FieldSpec::for_order(5),
            FieldSpec::for_order(7), FieldSpec::for_order(8), FieldSpec::for_order(9), FieldSpec::for_order(16)};
}

}  // namespace

TEST_CASE("small examples") {
    const Field f2(FieldSpec::for_order(2));
    const Field f5(FieldSpec::for_order(5));
    const Field f4(FieldSpec::for_order(4));
    CHECK(f2.add(Elem{1}, Elem{1}) == Elem{0});
    CHECK(f5.add(Elem{2}, Elem{4}) == Elem{1});
    CHECK(f5.mul(Elem{2}, Elem{3}) == Elem{1});
    CHECK(f5.inv(Elem{2}) == Elem{3});
    // GF(4) mod x^2+x+1: x is code 2, x+1 is code 3.
    CHECK(f4.spec().modulus == std::vector<int>{1, 1, 1});
    CHECK(f4.add(Elem{2}, Elem{3}) == Elem{1});
    CHECK(f4.mul(Elem{2}, Elem{2}) == Elem{3});
    CHECK(f4.inv(Elem{2}) == Elem{3});
    CHECK(f4.frobenius(Frobenius{1}, Elem{2}) == Elem{3});
    CHECK(FieldSpec::for_order(9).modulus == std::vector<int>{1, 0, 1});
}

TEST_CASE("multiplication matches schoolbook polynomial arithmetic") {
    for (const auto& spec : small_fields()) {
        CAPTURE(spec.order());
        const Field f(spec);
        const Poly ref{spec.p, spec.modulus};
        for (const Elem a : f.elements()) {
            for (const Elem b : f.elements()) {
                REQUIRE(f.add(a, b).code == ref.add(a.code, b.code));
                REQUIRE(f.mul(a, b).code == ref.mul(a.code, b.code));
            }
        }
    }
}

TEST_CASE("field axioms hold exhaustively for q <= 16") {
    for (const auto& spec : small_fields()) {
        CAPTURE(spec.order());
        const Field f(spec);
        const auto all = f.elements();
        for (const Elem a : all) {
            CHECK(f.add(a, f.zero()) == a);
            CHECK(f.mul(a, f.one()) == a);
            CHECK(f.add(a, f.neg(a)) == f.zero());
            if (a.code != 0) {
                CHECK(f.mul(a, f.inv(a)) == f.one());
            }
            for (const Elem b : all) {
                REQUIRE(f.add(a, b) == f.add(b, a));
                REQUIRE(f.mul(a, b) == f.mul(b, a));
                for (const Elem c : all) {
                    REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
                    REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                    REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("Frobenius powers are automorphisms and cycle with period k") {
    for (const auto& spec : small_fields()) {
        CAPTURE(spec.order());
        const Field f(spec);
        const auto all = f.elements();
        for (int j = 0; j < f.k(); ++j) {
            const Frobenius s{j};
            std::set<std::uint32_t> image;
            for (const Elem a : all) {
                Elem power = f.one();  // a^(p^j) by repeated multiplication
                for (int e = 0, reps = static_cast<int>(std::pow(spec.p, j)); e < reps; ++e) {
                    power = f.mul(power, a);
                }
                CHECK(f.frobenius(s, a) == power);
                image.insert(f.frobenius(s, a).code);
                for (const Elem b : all) {
                    REQUIRE(f.frobenius(s, f.add(a, b)) == f.add(f.frobenius(s, a), f.frobenius(s, b)));
                    REQUIRE(f.frobenius(s, f.mul(a, b)) == f.mul(f.frobenius(s, a), f.frobenius(s, b)));
                }
            }
            CHECK(image.size() == all.size());
        }
        for (const Elem a : all) {
            Elem x = a;
            for (int j = 0; j < f.k(); ++j) {
                x = f.frobenius(Frobenius{1}, x);
            }
            CHECK(x == a);
            CHECK(f.frobenius(Frobenius{0}, a) == a);
        }
        CHECK(f.compose(Frobenius{f.k() - 1}, Frobenius{1}) == Frobenius{0});
    }
}

TEST_CASE("enumeration and codes") {
    CHECK(enumerate_elements(FieldSpec::for_order(3)).size() == 3);
    const auto gf4 = enumerate_elements(FieldSpec::for_order(4));
    REQUIRE(gf4.size() == 4);
    for (std::uint32_t i = 0; i < 4; ++i) {
        CHECK(gf4[i].code() == i);
    }
    CHECK(gf4[2].coeffs() == std::vector<int>{0, 1});
    const Field f9(FieldSpec::for_order(9));
    for (const Elem a : f9.elements()) {
        CHECK(f9.from_coeffs(f9.coeffs(a)) == a);
    }
    CHECK(f9.from_int(-1) == Elem{2});
}

TEST_CASE("element wrapper and mismatched fields") {
    const auto gf4 = enumerate_elements(FieldSpec::for_order(4));
    const auto gf5 = enumerate_elements(FieldSpec::for_order(5));
    CHECK(mul(gf4[2], gf4[2]) == gf4[3]);
    CHECK(add(gf4[2], gf4[3]) == gf4[1]);
    CHECK(inv(gf4[1]) == gf4[1]);
    CHECK(frobenius_apply(Frobenius{1}, gf4[2]) == gf4[3]);
    CHECK_THROWS_AS(add(gf4[1], gf5[1]), PreconditionError);
    CHECK_THROWS_AS(mul(gf4[1], gf5[1]), PreconditionError);
    CHECK_THROWS_AS(inv(gf4[0]), PreconditionError);
}

TEST_CASE("invalid field descriptions are rejected") {
    CHECK_THROWS_AS(Field(FieldSpec{4, 1, {0, 1}}), PreconditionError);         // 4 is not prime
    CHECK_THROWS_AS(Field(FieldSpec{2, 2, {1, 0, 1}}), PreconditionError);      // (x+1)^2
    CHECK_THROWS_AS(Field(FieldSpec{3, 2, {1, 0, 2}}), PreconditionError);      // not monic
    CHECK_THROWS_AS(Field(FieldSpec{3, 2, {1, 0}}), PreconditionError);         // wrong length
    CHECK_THROWS_AS(FieldSpec::for_order(6), PreconditionError);
    CHECK_THROWS_AS(FieldSpec::for_order(256), PreconditionError);
    const std::vector<int> x2_plus_1{1, 0, 1};
    CHECK(is_irreducible(3, x2_plus_1));
    CHECK_FALSE(is_irreducible(5, x2_plus_1));  // 2^2 = -1 mod 5
    const Field f7(FieldSpec::for_order(7));
    CHECK_THROWS_AS(f7.inv(Elem{0}), PreconditionError);
    CHECK_THROWS_AS(f7.from_code(7), PreconditionError);
}
