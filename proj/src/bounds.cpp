#include "projcorrect/bounds.hpp"

#include <cctype>

#include "projcorrect/errors.hpp"

namespace projcorrect {

namespace {

BigInt power(int base, int exponent) {
    BigInt out = 1;
    for (int i = 0; i < exponent; ++i) {
        out *= base;
    }
    return out;
}

void check_arguments(int q, int n, const Rational& eps) {
    require(q >= 2 && is_prime_power(q), "q must be a prime power >= 2");
    require(n >= 1 && n <= 256, "n must lie in [1, 256]");
    require(eps >= 0 && eps <= 1, "eps must lie in [0, 1]");
}

// 2 q^2 (q+1)^2 / denominator
Rational collision_term(int q, const BigInt& denominator) {
    const BigInt qq = q;
    return Rational(2 * qq * qq * (qq + 1) * (qq + 1), denominator);
}

bool parse_integer(const std::string& text, BigInt& out) {
    if (text.empty()) {
        return false;
    }
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) {
        return false;
    }
    for (std::size_t i = start; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            return false;
        }
    }
    out = BigInt(text);
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    BigInt num;
    BigInt den = 1;
    const bool ok = slash == std::string::npos
                        ? parse_integer(text, num)
                        : parse_integer(text.substr(0, slash), num) && parse_integer(text.substr(slash + 1), den);
    require(ok, "malformed rational '" + text + "'");
    require(den != 0, "zero denominator in '" + text + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

bool is_prime_power(int q) {
    if (q < 2) {
        return false;
    }
    int p = 2;
    while (q % p != 0) {
        ++p;
    }
    while (q % p == 0) {
        q /= p;
    }
    return q == 1;
}

Rational compute_A(int q, int n, const Rational& eps) {
    check_arguments(q, n, eps);
    const BigInt Q = power(q, n + 1);
    const Rational shrink(Q - q, Q - 1);
    const Rational base = eps + Rational(BigInt(q - 1), Q - 1);
    return 2 * base / (shrink * shrink) - Rational(BigInt((q - 1) * (q - 1)), Q - 1);
}

Rational compute_B(int q, int n, const Rational& eps) {
    const Rational a = compute_A(q, n, eps);
    const BigInt Q = power(q, n + 1);
    const Rational c = collision_term(q, Q - q);
    const Rational inner = 2 * eps + 2 * a + c;
    return 2 * (q - 1) * Rational(Q - 1, Q - q) * inner + 2 * a + c;
}

BoundReport hypotheses(int q, int n, const Rational& eps) {
    BoundReport r;
    r.q = q;
    r.n = n;
    r.eps = eps;
    r.A = compute_A(q, n, eps);
    r.B = compute_B(q, n, eps);
    const BigInt Q = power(q, n + 1);
    const Rational half(1, 2);
    r.hyp1_strict = r.A + collision_term(q, Q - q) < half;
    r.hyp1_theorem = r.A + collision_term(q, Q - 1) < half;
    // q^(3-n) as an exact rational
    const Rational tail = n <= 3 ? Rational(power(q, 3 - n)) : Rational(BigInt(1), power(q, n - 3));
    r.hyp2 = 9 * r.B + tail < 1;
    r.guaranteed_agreement = 1 - 2 * eps - 2 * r.A - collision_term(q, Q - q);
    return r;
}

Rational max_eps(int q, int n) {
    constexpr std::int64_t kDenominator = 1'000'000;
    const auto holds = [&](std::int64_t k) {
        const BoundReport r = hypotheses(q, n, Rational(k, kDenominator));
        return r.hyp1_strict && r.hyp2;
    };
    if (!holds(0)) {
        return Rational(0);
    }
    // Both predicates only get harder as eps grows.
    std::int64_t lo = 0;
    std::int64_t hi = kDenominator;
    if (holds(hi)) {
        return Rational(1);
    }
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (holds(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return Rational(lo, kDenominator);
}

}  // namespace projcorrect
