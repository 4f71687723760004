#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aqrm {

// Canonical (reduced, positive denominator) arbitrary-precision rational.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
    if (den == 0)
        throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0)
        throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p", "p/q", and plain decimals such as "-0.35" or "1.5e-2" (parsed exactly).
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start])))
        ++start;
    s = s.substr(start);
    if (s.empty())
        throw std::invalid_argument("empty rational literal");

    auto is_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i == t.size())
            return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                return false;
        return true;
    };
    auto to_int = [](std::string t) {
        if (!t.empty() && t[0] == '+')
            t.erase(0, 1);
        return Integer(t, 10);
    };

    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string a = s.substr(0, slash), b = s.substr(slash + 1);
        if (!is_int(a) || !is_int(b))
            throw std::invalid_argument("malformed rational: " + s);
        return make_rational(to_int(a), to_int(b));
    }

    std::string mant = s;
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        std::string ex = s.substr(e + 1);
        if (!is_int(ex))
            throw std::invalid_argument("malformed exponent: " + s);
        exp10 = std::stol(ex);
        mant = s.substr(0, e);
    }
    std::string digits = mant;
    if (auto dot = mant.find('.'); dot != std::string::npos) {
        std::string frac = mant.substr(dot + 1);
        digits = mant.substr(0, dot) + frac;
        exp10 -= static_cast<long>(frac.size());
        if (digits == "" || digits == "-" || digits == "+")
            throw std::invalid_argument("malformed decimal: " + s);
    }
    if (!is_int(digits))
        throw std::invalid_argument("malformed number: " + s);
    Integer num = to_int(digits);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    return exp10 < 0 ? make_rational(num, scale) : make_rational(num * scale, Integer(1));
}

inline std::string to_string(const Rational& r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Nearest double (get_d truncates toward zero).
inline double to_double(const Rational& r)
{
    double d = r.get_d();
    if (!std::isfinite(d))
        return d;
    double up = std::nextafter(d, r > 0 ? HUGE_VAL : -HUGE_VAL);
    if (!std::isfinite(up))
        return d;
    Rational ed(d), eu(up);
    return abs(Rational(eu - r)) < abs(Rational(r - ed)) ? up : d;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Rational factorial(unsigned n)
{
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

inline Rational binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n)
        return Rational(0);
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

// Exact dyadic-or-better conversion of a finite double.
inline Rational from_double(double v)
{
    if (!std::isfinite(v))
        throw std::domain_error("non-finite value has no rational form");
    Rational r(v);
    return r;
}

} // namespace aqrm
