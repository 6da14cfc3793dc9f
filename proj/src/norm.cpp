#include "rigidkit/norm.hpp"

#include <cctype>
#include <sstream>

#include "rigidkit/errors.hpp"

namespace rigidkit {

NormSpec::NormSpec(int d, Rational q) : d_(d), q_(std::move(q)) {
    if (d_ < 2) throw InputError("norm dimension must be at least 2");
    if (q_ <= 1) throw InputError("norm exponent must exceed 1");
    qd_ = static_cast<double>(q_);
}

int NormSpec::q_int() const {
    if (!integer_q()) throw InputError("exponent " + q_string() + " is not an integer");
    return static_cast<int>(boost::multiprecision::numerator(q_));
}

namespace {

Rational parse_decimal_or_rational(const std::string& s) {
    if (s.find('/') != std::string::npos) return parse_rational(s);
    auto dot = s.find('.');
    if (dot == std::string::npos) return parse_rational(s);
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (frac.empty() || whole.empty() || whole == "-" || whole == "+") throw InputError("malformed exponent '" + s + "'");
    BigInt den = 1;
    for (char ch : frac) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) throw InputError("malformed exponent '" + s + "'");
        den *= 10;
    }
    bool neg = whole[0] == '-';
    Rational w = parse_rational(whole);
    Rational f(BigInt(frac), den);
    return neg ? Rational(w - f) : Rational(w + f);
}

}  // namespace

NormSpec NormSpec::parse(const std::string& text) {
    int d = -1;
    std::string q;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos) throw InputError("malformed norm '" + text + "'");
        std::string key = part.substr(0, eq);
        std::string val = part.substr(eq + 1);
        if (key == "d") {
            if (val.empty() || val.find_first_not_of("0123456789") != std::string::npos)
                throw InputError("malformed dimension in norm '" + text + "'");
            d = std::stoi(val);
        } else if (key == "q") {
            q = val;
        } else {
            throw InputError("unknown norm key '" + key + "'");
        }
    }
    if (d < 2) throw InputError("norm needs d >= 2");
    if (q.empty()) throw InputError("norm needs q");
    return NormSpec(d, parse_decimal_or_rational(q));
}

}  // namespace rigidkit
