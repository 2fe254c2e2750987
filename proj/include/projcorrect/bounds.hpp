#pragma once

// Exact evaluation of the error-budget functions A(q,n,eps), B(q,n,eps) and
// of the two hypotheses under which majority correction provably recovers a
// line-preserving map.

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "projcorrect/errors.hpp"

namespace projcorrect {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "NUM/DEN" or "NUM".  Throws PreconditionError on malformed input
/// or a zero denominator.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

bool is_prime_power(int q);

/// A(q,n,eps) = 2(eps + (q-1)/(Q-1)) * ((Q-q)/(Q-1))^-2 - (q-1)^2/(Q-1),
/// with Q = q^(n+1).
Rational compute_A(int q, int n, const Rational& eps);

/// B(q,n,eps) = 2(q-1) (Q-1)/(Q-q) (2eps + 2A + C) + 2A + C,
/// with C = 2 q^2 (q+1)^2 / (Q-q).
Rational compute_B(int q, int n, const Rational& eps);

struct BoundReport {
    int q = 0;
    int n = 0;
    Rational eps;
    Rational A;
    Rational B;
    bool hyp1_strict = false;   // A + 2q^2(q+1)^2/(Q-q) < 1/2
    bool hyp1_theorem = false;  // A + 2q^2(q+1)^2/(Q-1) < 1/2
    bool hyp2 = false;          // 9B + q^(3-n) < 1
    Rational guaranteed_agreement;  // 1 - 2eps - 2A - 2q^2(q+1)^2/(Q-q)

    /// n > 3 and both strict hypotheses hold.
    bool guarantee_applicable() const { return n > 3 && hyp1_strict && hyp2; }
};

BoundReport hypotheses(int q, int n, const Rational& eps);

/// Largest eps = k/10^6 for which hyp1_strict and hyp2 both hold; 0 when
/// they fail already at eps = 0.
Rational max_eps(int q, int n);

}  // namespace projcorrect
