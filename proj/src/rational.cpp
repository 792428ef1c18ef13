#include "g2mono/rational.hpp"

#include "g2mono/errors.hpp"

#include <cctype>

namespace g2mono {

namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_int(const std::string& s) {
    if (s.empty()) throw UsageError("empty integer in rational literal");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw UsageError("bad integer '" + s + "'");
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            throw UsageError("bad integer '" + s + "'");
    std::size_t nz = s.find_first_not_of('0', i);
    cpp_int v = nz == std::string::npos ? cpp_int(0) : cpp_int(s.substr(nz));
    return s[0] == '-' ? cpp_int(-v) : v;
}

cpp_int pow10(long n) {
    cpp_int p = 1;
    for (long k = 0; k < n; ++k) p *= 10;
    return p;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw UsageError("empty rational literal");

    if (auto slash = t.find('/'); slash != std::string::npos) {
        cpp_int num = parse_int(t.substr(0, slash));
        cpp_int den = parse_int(t.substr(slash + 1));
        if (den == 0) throw UsageError("zero denominator in '" + text + "'");
        return Rational(num, den);
    }

    long exponent = 0;
    if (auto e = t.find_first_of("eE"); e != std::string::npos) {
        exponent = static_cast<long>(parse_int(t.substr(e + 1)));
        t = t.substr(0, e);
    }
    bool negative = false;
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
        negative = t[0] == '-';
        t = t.substr(1);
    }
    std::string digits;
    long frac = 0;
    if (auto dot = t.find('.'); dot != std::string::npos) {
        digits = t.substr(0, dot) + t.substr(dot + 1);
        frac = static_cast<long>(t.size() - dot - 1);
    } else {
        digits = t;
    }
    if (digits.empty()) throw UsageError("bad rational literal '" + text + "'");
    cpp_int mant = parse_int(digits);
    if (negative) mant = -mant;
    long shift = exponent - frac;
    if (shift >= 0) return Rational(mant * pow10(shift));
    return Rational(mant, pow10(-shift));
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_string(const Rational& q) {
    auto n = boost::multiprecision::numerator(q);
    auto d = boost::multiprecision::denominator(q);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

}  // namespace g2mono
