#include "rigidkit/exact.hpp"

#include <cctype>
#include <utility>

#include "rigidkit/errors.hpp"

namespace rigidkit {

int exact_rank(IntMatrix m) {
    const std::size_t rows = m.size();
    if (rows == 0) return 0;
    const std::size_t cols = m[0].size();
    BigInt prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

int exact_rank(const RationalMatrix& m) {
    // Clearing denominators row by row keeps the rank.
    IntMatrix im;
    im.reserve(m.size());
    for (const auto& row : m) {
        BigInt l = 1;
        for (const auto& x : row) {
            BigInt d = boost::multiprecision::denominator(x);
            l = l / boost::multiprecision::gcd(l, d) * d;
        }
        std::vector<BigInt> out;
        out.reserve(row.size());
        for (const auto& x : row) out.push_back(boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x)));
        im.push_back(std::move(out));
    }
    return exact_rank(std::move(im));
}

std::optional<ExactSolution> exact_solve(const RationalMatrix& a, const RationalVector& b) {
    const std::size_t rows = a.size();
    if (b.size() != rows) throw InputError("exact_solve: dimension mismatch");
    const std::size_t cols = rows ? a[0].size() : 0;
    RationalMatrix m = a;
    for (std::size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);
    std::vector<std::size_t> pivotCol;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        Rational inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j <= cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivotCol.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (m[i][cols] != 0) return std::nullopt;
    ExactSolution s;
    s.x.assign(cols, Rational(0));
    for (std::size_t i = 0; i < r; ++i) s.x[pivotCol[i]] = m[i][cols];
    s.nullity = static_cast<int>(cols - r);
    return s;
}

BigInt signed_power(const BigInt& x, int qMinusOne) {
    BigInt ax = x < 0 ? BigInt(-x) : x;
    BigInt p = boost::multiprecision::pow(ax, static_cast<unsigned>(qMinusOne));
    return x < 0 ? BigInt(-p) : p;
}

Rational signed_power(const Rational& x, int qMinusOne) {
    Rational ax = x < 0 ? Rational(-x) : x;
    Rational p = 1;
    for (int i = 0; i < qMinusOne; ++i) p *= ax;
    return x < 0 ? Rational(-p) : p;
}

std::string to_string(const Rational& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    auto parse_int = [&](const std::string& t) {
        if (t.empty()) throw InputError("malformed rational '" + s + "'");
        std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (start == t.size()) throw InputError("malformed rational '" + s + "'");
        for (std::size_t i = start; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) throw InputError("malformed rational '" + s + "'");
        return BigInt(t[0] == '+' ? t.substr(1) : t);
    };
    if (slash == std::string::npos) return Rational(parse_int(s));
    BigInt den = parse_int(s.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in '" + s + "'");
    return Rational(parse_int(s.substr(0, slash)), den);
}

}  // namespace rigidkit
