#pragma once

#include <string>

#include "rigidkit/exact.hpp"

namespace rigidkit {

// Dimension d and exponent q of the norm on R^d. q is kept exactly as parsed.
class NormSpec {
public:
    NormSpec() = default;
    NormSpec(int d, Rational q);
    NormSpec(int d, int q) : NormSpec(d, Rational(q)) {}

    // Accepts "d=2,q=3", "q=5/2,d=3", "d=3,q=2.5".
    static NormSpec parse(const std::string& text);

    int d() const { return d_; }
    double q() const { return qd_; }
    const Rational& q_exact() const { return q_; }
    bool euclidean() const { return q_ == 2; }
    bool integer_q() const { return boost::multiprecision::denominator(q_) == 1; }
    int q_int() const;  // only valid when integer_q()

    int trivial_dim_generic() const { return euclidean() ? d_ * (d_ + 1) / 2 : d_; }
    // Count governing generic rigidity in the plane: (2,3) Euclidean, (2,2) otherwise.
    int laman_l() const { return euclidean() ? 3 : 2; }

    std::string q_string() const { return to_string(q_); }
    std::string str() const { return "d=" + std::to_string(d_) + ",q=" + q_string(); }

private:
    int d_ = 2;
    Rational q_ = 2;
    double qd_ = 2.0;
};

}  // namespace rigidkit
