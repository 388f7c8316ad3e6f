// Exact rationals for the parameter gates, backed by GMP.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace sqg {

using Rational = mpq_class;

// Parses "5/4", "1.001", "-0.25", "3" into an exact rational.
inline Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational r;
        if (r.set_str(s, 10) != 0) throw std::invalid_argument("parse_rational: bad fraction " + text);
        r.canonicalize();
        if (r.get_den() == 0) throw std::invalid_argument("parse_rational: zero denominator " + text);
        return r;
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        Rational r;
        if (r.set_str(s, 10) != 0) throw std::invalid_argument("parse_rational: bad integer " + text);
        return r;
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (frac_len == 0) throw std::invalid_argument("parse_rational: trailing dot " + text);
    bool neg = false;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
        neg = digits[0] == '-';
        digits = digits.substr(1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("parse_rational: bad decimal " + text);
    mpz_class num(digits, 10);
    mpz_class den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational r(num, den);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

inline std::string to_string(const Rational& r) {
    return r.get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace sqg
