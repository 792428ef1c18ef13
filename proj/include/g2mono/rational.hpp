#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace g2mono {

using Rational = boost::multiprecision::cpp_rational;

// Accepts "p", "p/q", or a finite decimal such as "-0.25" or "1e-3".
Rational parse_rational(const std::string& text);

double to_double(const Rational& q);

std::string to_string(const Rational& q);

}  // namespace g2mono
