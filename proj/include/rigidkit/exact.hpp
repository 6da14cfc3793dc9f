#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

namespace rigidkit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntMatrix = std::vector<std::vector<BigInt>>;
using RationalMatrix = std::vector<std::vector<Rational>>;
using RationalVector = std::vector<Rational>;

// Fraction-free (Bareiss) elimination; exact for any integer matrix.
int exact_rank(IntMatrix m);
int exact_rank(const RationalMatrix& m);

struct ExactSolution {
    RationalVector x;   // one solution (free variables set to zero)
    int nullity = 0;    // dimension of the solution set's direction space
};

// Solves A x = b over the rationals. nullopt when inconsistent.
std::optional<ExactSolution> exact_solve(const RationalMatrix& a, const RationalVector& b);

// sgn(x)|x|^(q-1) for integer q >= 2.
BigInt signed_power(const BigInt& x, int qMinusOne);
Rational signed_power(const Rational& x, int qMinusOne);

std::string to_string(const Rational& r);  // "num/den", or "num" when den = 1
Rational parse_rational(const std::string& s);

}  // namespace rigidkit
