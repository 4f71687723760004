#pragma once

#include "aqrm/rational.hpp"

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aqrm {

// Dense univariate polynomial over Q, ascending powers.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
    UniPoly(std::initializer_list<Rational> c) : c_(c) { trim(); }
    static UniPoly constant(const Rational& a) { return UniPoly(std::vector<Rational>{a}); }
    static UniPoly monomial(const Rational& a, std::size_t deg)
    {
        std::vector<Rational> c(deg + 1);
        c[deg] = a;
        return UniPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    // -1 for the zero polynomial
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const Rational& leading() const
    {
        if (c_.empty())
            throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    Rational operator()(const Rational& x) const
    {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }
    double eval(double x) const
    {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * x + it->get_d();
        return acc;
    }
    int sign_at(const Rational& x) const { return sgn((*this)(x)); }

    UniPoly derivative() const
    {
        std::vector<Rational> d;
        for (std::size_t i = 1; i < c_.size(); ++i)
            d.push_back(c_[i] * static_cast<long>(i));
        return UniPoly(std::move(d));
    }

    UniPoly& operator+=(const UniPoly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] += o.c_[i];
        trim();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    UniPoly& operator*=(const Rational& a)
    {
        for (auto& v : c_)
            v *= a;
        trim();
        return *this;
    }
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator-(UniPoly a)
    {
        for (auto& v : a.c_)
            v = -v;
        return a;
    }
    friend UniPoly operator*(UniPoly a, const Rational& s) { return a *= s; }
    friend UniPoly operator*(const Rational& s, UniPoly a) { return a *= s; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        return UniPoly(std::move(r));
    }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    // Euclidean division over Q.
    friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b)
    {
        if (b.is_zero())
            throw std::domain_error("polynomial division by zero");
        std::vector<Rational> rem = a.c_;
        int db = b.degree();
        if (a.degree() < db)
            return {UniPoly(), a};
        std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
        for (int k = a.degree(); k >= db; --k) {
            Rational t = rem[static_cast<std::size_t>(k)] / b.c_.back();
            q[static_cast<std::size_t>(k - db)] = t;
            if (t == 0)
                continue;
            for (int j = 0; j <= db; ++j)
                rem[static_cast<std::size_t>(k - db + j)] -= t * b.c_[static_cast<std::size_t>(j)];
        }
        rem.resize(static_cast<std::size_t>(db));
        return {UniPoly(std::move(q)), UniPoly(std::move(rem))};
    }
    friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return divmod(a, b).second; }
    friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return divmod(a, b).first; }

    UniPoly monic() const
    {
        if (is_zero())
            return *this;
        return *this * (Rational(1) / leading());
    }

    // Scale by a positive rational so the coefficients are coprime integers.
    // Preserves sign, so it is safe inside Sturm sequences.
    UniPoly primitive() const
    {
        if (is_zero())
            return *this;
        Integer l(1), g(0);
        for (const auto& v : c_)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
        std::vector<Rational> r;
        r.reserve(c_.size());
        for (const auto& v : c_) {
            Rational w = v * Rational(l);
            r.push_back(w);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w.get_num().get_mpz_t());
        }
        for (auto& v : r)
            v /= Rational(g);
        return UniPoly(std::move(r));
    }

    std::string str(const std::string& var = "x") const
    {
        if (is_zero())
            return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            const Rational& a = c_[static_cast<std::size_t>(i)];
            if (a == 0)
                continue;
            Rational m = abs(a);
            out += out.empty() ? (a < 0 ? "-" : "") : (a < 0 ? " - " : " + ");
            bool unit = (m == 1) && i > 0;
            if (!unit)
                out += m.get_str();
            if (i > 0) {
                if (!unit)
                    out += "*";
                out += var;
                if (i > 1)
                    out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }
    std::vector<Rational> c_;
};

inline UniPoly gcd(UniPoly a, UniPoly b)
{
    while (!b.is_zero()) {
        UniPoly r = (a % b).primitive();
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline UniPoly square_free_part(const UniPoly& p)
{
    if (p.degree() <= 0)
        return p;
    UniPoly g = gcd(p, p.derivative());
    return (p / g).primitive();
}

// Yun's algorithm: p = lc * prod_i f_i^i with f_i square-free and pairwise coprime.
// Entry i-1 holds f_i (possibly constant 1).
inline std::vector<UniPoly> square_free_decomposition(const UniPoly& p)
{
    std::vector<UniPoly> out;
    if (p.degree() <= 0)
        return out;
    UniPoly a = p.monic();
    UniPoly b = a.derivative();
    UniPoly c = gcd(a, b);
    UniPoly w = a / c;
    UniPoly y = b / c;
    UniPoly z = y - w.derivative();
    while (w.degree() > 0) {
        UniPoly f = gcd(w, z);
        out.push_back(f);
        w = w / f;
        y = z / f;
        z = y - w.derivative();
    }
    while (!out.empty() && out.back().degree() <= 0)
        out.pop_back();
    return out;
}

} // namespace aqrm
