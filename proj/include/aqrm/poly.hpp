#pragma once

#include "aqrm/rational.hpp"
#include "aqrm/roots.hpp"
#include "aqrm/unipoly.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aqrm {

struct Monomial {
    int i = 0; // power of x
    int j = 0; // power of y
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded lexicographic, x before y.
struct GradedLex {
    bool operator()(const Monomial& a, const Monomial& b) const
    {
        int da = a.i + a.j, db = b.i + b.j;
        if (da != db)
            return da > db;
        return a.i > b.i;
    }
};

class BivarPoly {
public:
    using Terms = std::map<Monomial, Rational, GradedLex>;

    BivarPoly() = default;
    BivarPoly(const Rational& c) { add_term(0, 0, c); }
    BivarPoly(long c) : BivarPoly(Rational(c)) {}

    static BivarPoly x() { return term(1, 0, Rational(1)); }
    static BivarPoly y() { return term(0, 1, Rational(1)); }
    static BivarPoly term(int i, int j, const Rational& c)
    {
        BivarPoly p;
        p.add_term(i, j, c);
        return p;
    }

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    Rational coeff(int i, int j) const
    {
        auto it = t_.find({i, j});
        return it == t_.end() ? Rational(0) : it->second;
    }
    int total_degree() const { return t_.empty() ? -1 : t_.begin()->first.i + t_.begin()->first.j; }
    int degree_x() const
    {
        int d = -1;
        for (const auto& [m, c] : t_)
            d = std::max(d, m.i);
        return d;
    }
    int degree_y() const
    {
        int d = -1;
        for (const auto& [m, c] : t_)
            d = std::max(d, m.j);
        return d;
    }

    void add_term(int i, int j, const Rational& c)
    {
        if (i < 0 || j < 0)
            throw std::invalid_argument("negative exponent");
        if (c == 0)
            return;
        auto [it, fresh] = t_.try_emplace({i, j}, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0)
                t_.erase(it);
        }
    }

    BivarPoly& operator+=(const BivarPoly& o)
    {
        for (const auto& [m, c] : o.t_)
            add_term(m.i, m.j, c);
        return *this;
    }
    BivarPoly& operator-=(const BivarPoly& o)
    {
        for (const auto& [m, c] : o.t_)
            add_term(m.i, m.j, -c);
        return *this;
    }
    BivarPoly& operator*=(const Rational& s)
    {
        if (s == 0) {
            t_.clear();
            return *this;
        }
        for (auto& [m, c] : t_)
            c *= s;
        return *this;
    }
    friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
    friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
    friend BivarPoly operator-(BivarPoly a) { return a *= Rational(-1); }
    friend BivarPoly operator*(BivarPoly a, const Rational& s) { return a *= s; }
    friend BivarPoly operator*(const Rational& s, BivarPoly a) { return a *= s; }
    friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b)
    {
        BivarPoly r;
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_)
                r.add_term(ma.i + mb.i, ma.j + mb.j, ca * cb);
        return r;
    }
    BivarPoly& operator*=(const BivarPoly& o) { return *this = *this * o; }
    friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.t_ == b.t_; }

    Rational operator()(const Rational& x, const Rational& y) const
    {
        Rational acc(0);
        for (const auto& [m, c] : t_) {
            Rational v = c;
            for (int k = 0; k < m.i; ++k)
                v *= x;
            for (int k = 0; k < m.j; ++k)
                v *= y;
            acc += v;
        }
        return acc;
    }
    double eval(double x, double y) const
    {
        // Horner in x over coefficient polynomials in y
        auto cx = slices_x();
        double acc = 0.0;
        for (auto it = cx.rbegin(); it != cx.rend(); ++it)
            acc = acc * x + it->eval(y);
        return acc;
    }
    // Sum of |terms|, a natural scale for judging cancellation in eval.
    double eval_abs(double x, double y) const
    {
        double s = 0.0;
        for (const auto& [m, c] : t_)
            s += std::abs(c.get_d() * std::pow(x, m.i) * std::pow(y, m.j));
        return s;
    }

    // Coefficients of x^0, x^1, ... as polynomials in y.
    std::vector<UniPoly> slices_x() const
    {
        std::vector<std::vector<Rational>> c(static_cast<std::size_t>(degree_x() + 1));
        for (const auto& [m, v] : t_) {
            auto& row = c[static_cast<std::size_t>(m.i)];
            if (row.size() <= static_cast<std::size_t>(m.j))
                row.resize(static_cast<std::size_t>(m.j) + 1);
            row[static_cast<std::size_t>(m.j)] = v;
        }
        std::vector<UniPoly> out;
        out.reserve(c.size());
        for (auto& row : c)
            out.emplace_back(std::move(row));
        return out;
    }
    UniPoly at_y(const Rational& y) const
    {
        std::vector<Rational> c(static_cast<std::size_t>(std::max(0, degree_x() + 1)));
        for (const auto& [m, v] : t_) {
            Rational w = v;
            for (int k = 0; k < m.j; ++k)
                w *= y;
            c[static_cast<std::size_t>(m.i)] += w;
        }
        return UniPoly(std::move(c));
    }
    UniPoly at_x(const Rational& x) const
    {
        std::vector<Rational> c(static_cast<std::size_t>(std::max(0, degree_y() + 1)));
        for (const auto& [m, v] : t_) {
            Rational w = v;
            for (int k = 0; k < m.i; ++k)
                w *= x;
            c[static_cast<std::size_t>(m.j)] += w;
        }
        return UniPoly(std::move(c));
    }

    bool has_integer_coefficients() const
    {
        for (const auto& [m, c] : t_)
            if (c.get_den() != 1)
                return false;
        return true;
    }

    // "2*x^2 + 3*x*y + y^2 - 16*x - 5*y + 4"
    std::string str() const
    {
        if (t_.empty())
            return "0";
        std::string out;
        for (const auto& [m, c] : t_) {
            Rational a = abs(c);
            out += out.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
            std::string mono;
            auto pw = [](const char* v, int e) { return e == 1 ? std::string(v) : std::string(v) + "^" + std::to_string(e); };
            if (m.i > 0)
                mono = pw("x", m.i);
            if (m.j > 0)
                mono += (mono.empty() ? "" : "*") + pw("y", m.j);
            if (mono.empty())
                out += a.get_str();
            else if (a == 1)
                out += mono;
            else
                out += a.get_str() + "*" + mono;
        }
        return out;
    }

    nlohmann::json to_json() const
    {
        std::vector<std::pair<Monomial, Rational>> v(t_.begin(), t_.end());
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
            return a.first.i != b.first.i ? a.first.i < b.first.i : a.first.j < b.first.j;
        });
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [m, c] : v)
            arr.push_back({m.i, m.j, to_string(c)});
        return {{"terms", arr}};
    }
    static BivarPoly from_json(const nlohmann::json& j)
    {
        BivarPoly p;
        for (const auto& t : j.at("terms"))
            p.add_term(t.at(0).get<int>(), t.at(1).get<int>(), parse_rational(t.at(2).get<std::string>()));
        return p;
    }

private:
    Terms t_;
};

struct DivisionResult {
    BivarPoly quotient;
    BivarPoly remainder;
    bool exact = false;
};

// Division in (Q[y])[x]: the divisor's leading x-coefficient must divide each step's leading coefficient in Q[y].
inline DivisionResult divide(const BivarPoly& num, const BivarPoly& den)
{
    if (den.is_zero())
        throw std::domain_error("division by the zero polynomial");
    auto to_bivar = [](const UniPoly& u, int xpow) {
        BivarPoly p;
        for (int j = 0; j <= u.degree(); ++j)
            p.add_term(xpow, j, u.coeff(static_cast<std::size_t>(j)));
        return p;
    };
    const int dd = den.degree_x();
    const UniPoly lead = den.slices_x().back();
    DivisionResult r;
    BivarPoly rem = num;
    while (!rem.is_zero() && rem.degree_x() >= dd) {
        int dr = rem.degree_x();
        UniPoly lr = rem.slices_x().back();
        auto [q, rr] = divmod(lr, lead);
        if (!rr.is_zero()) {
            r.quotient = std::move(r.quotient);
            r.remainder = rem;
            r.exact = false;
            return r;
        }
        BivarPoly step = to_bivar(q, dr - dd);
        r.quotient += step;
        rem -= step * den;
    }
    r.remainder = rem;
    r.exact = rem.is_zero();
    return r;
}

struct RecurrenceConstants {
    int N = 0;
    Rational eps;
    int k = 0;

    // c_k = k(k + 2 eps)
    Rational c() const { return c_at(k); }
    Rational c_at(long kk) const { return Rational(kk) * (Rational(kk) + 2 * eps); }
    // lambda_k = k(k-1)(N-k+1)
    Rational lambda() const { return lambda_at(k); }
    Rational lambda_at(long kk) const { return Rational(kk * (kk - 1) * (N - kk + 1)); }
};

// P_k^(N,eps) by the defining three-term recurrence.
inline std::vector<BivarPoly> constraint_poly_sequence(int N, const Rational& eps, int k_max)
{
    if (k_max < 0)
        return {};
    std::vector<BivarPoly> P;
    P.reserve(static_cast<std::size_t>(k_max) + 1);
    P.emplace_back(1);
    if (k_max == 0)
        return P;
    P.push_back(BivarPoly::x() + BivarPoly::y() - BivarPoly(1 + 2 * eps));
    const BivarPoly x = BivarPoly::x(), y = BivarPoly::y();
    for (int k = 2; k <= k_max; ++k) {
        RecurrenceConstants rc{N, eps, k};
        BivarPoly a = Rational(k) * x + y - BivarPoly(rc.c());
        BivarPoly next = a * P[static_cast<std::size_t>(k - 1)]
                         - (rc.lambda() * x) * P[static_cast<std::size_t>(k - 2)];
        P.push_back(std::move(next));
    }
    return P;
}

inline BivarPoly constraint_poly(int N, const Rational& eps, int k)
{
    if (k < 0)
        throw std::invalid_argument("k must be nonnegative");
    return constraint_poly_sequence(N, eps, k).back();
}

// Floating evaluation of P_k^(N,eps)(x,y) for real eps, straight from the recurrence.
template <class Real>
Real constraint_value(int N, Real eps, int k, Real x, Real y)
{
    Real pm = 1, p = x + y - 1 - 2 * eps;
    if (k == 0)
        return pm;
    for (int j = 2; j <= k; ++j) {
        Real a = Real(j) * x + y - Real(j) * (Real(j) + 2 * eps);
        Real next = a * p - Real(j) * Real(j - 1) * Real(N - j + 1) * x * pm;
        pm = p;
        p = next;
    }
    return p;
}

// I y + D x + C as a tridiagonal matrix over Q[x,y].
inline TridiagMatrix<BivarPoly> constraint_matrix(int N, const Rational& eps)
{
    TridiagMatrix<BivarPoly> m;
    RecurrenceConstants rc{N, eps, 0};
    for (int i = 1; i <= N; ++i) {
        Rational ci = -Rational(i) * (Rational(2 * (N - i) + 1) + 2 * eps);
        m.diag.push_back(BivarPoly::y() + Rational(i) * BivarPoly::x() + BivarPoly(ci));
        if (i < N) {
            m.upper.emplace_back(1);
            m.lower.emplace_back(Rational(i * (i + 1)) * rc.c_at(N - i));
        }
    }
    return m;
}

inline BivarPoly constraint_poly_det(int N, const Rational& eps)
{
    if (N <= 0)
        return BivarPoly(1);
    return continuant(constraint_matrix(N, eps), BivarPoly(1));
}

// Same continuant with symmetric off-diagonals sqrt(b_i c_i); only the products are materialized.
inline TridiagMatrix<BivarPoly> constraint_matrix_symmetric_products(int N, const Rational& eps)
{
    TridiagMatrix<BivarPoly> m = constraint_matrix(N, eps);
    for (std::size_t i = 0; i < m.upper.size(); ++i) {
        BivarPoly prod = m.upper[i] * m.lower[i];
        m.upper[i] = BivarPoly(1);
        m.lower[i] = prod;
    }
    return m;
}

// M_ell^(N)(x) as a float tridiagonal matrix.
inline TridiagMatrix<double> a_matrix(int N, int ell, double x)
{
    TridiagMatrix<double> m;
    for (int i = 1; i <= ell; ++i) {
        m.diag.push_back((N + i) * (x - ell + 2 * i - 1));
        if (i < ell) {
            m.upper.push_back(N + i);
            m.lower.push_back(static_cast<double>(N + i + 1) * (-static_cast<double>(i) * (ell - i)));
        }
    }
    return m;
}

// A_N^ell = det(I y + M_ell^(N)(x)) over Q[x,y].
inline BivarPoly a_poly(int N, int ell)
{
    if (ell < 0 || N < 0)
        throw std::invalid_argument("N and ell must be nonnegative");
    if (ell == 0)
        return BivarPoly(1);
    TridiagMatrix<BivarPoly> m;
    const BivarPoly x = BivarPoly::x(), y = BivarPoly::y();
    for (int i = 1; i <= ell; ++i) {
        m.diag.push_back(y + Rational(N + i) * (x + BivarPoly(Rational(2 * i - 1 - ell))));
        if (i < ell) {
            m.upper.emplace_back(N + i);
            m.lower.emplace_back(Rational(N + i + 1) * Rational(-static_cast<long>(i) * (ell - i)));
        }
    }
    return continuant(m, BivarPoly(1));
}

struct DivisibilityResult {
    BivarPoly quotient;
    bool exact = false;
};

class FalsifiedTheorem : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline DivisibilityResult verify_divisibility(int N, int ell)
{
    BivarPoly num = constraint_poly(N + ell, make_rational(-ell, 2), N + ell);
    BivarPoly den = constraint_poly(N, make_rational(ell, 2), N);
    DivisionResult d = divide(num, den);
    if (!d.exact)
        throw FalsifiedTheorem("P_{N+l} is not divisible by P_N at N=" + std::to_string(N) + ", l=" +
                               std::to_string(ell));
    return {d.quotient, true};
}

inline BivarPoly q_poly(int N, const Rational& eps, int k)
{
    if (k < 0 || k > N)
        throw std::invalid_argument("q_poly requires 0 <= k <= N");
    const BivarPoly x = BivarPoly::x(), y = BivarPoly::y();
    BivarPoly qm(1);
    if (k == 0)
        return qm;
    BivarPoly q = x + y - BivarPoly(Rational(2 * N - 1) + 2 * eps);
    for (int j = 2; j <= k; ++j) {
        Rational shift = Rational(j) * (Rational(2 * (N + 1 - j) - 1) + 2 * eps);
        Rational b = Rational(j * (j - 1) * (N + 1 - j)) * (Rational(N + 1 - j) + 2 * eps);
        BivarPoly next = (Rational(j) * x + y - BivarPoly(shift)) * q - b * qm;
        qm = std::move(q);
        q = std::move(next);
    }
    return q;
}

// Generalized Laguerre L_k^(alpha) by its standard recurrence.
inline UniPoly laguerre(int k, const Rational& alpha)
{
    UniPoly lm = UniPoly::constant(1);
    if (k == 0)
        return lm;
    UniPoly l{1 + alpha, Rational(-1)};
    for (int n = 1; n < k; ++n) {
        UniPoly a{Rational(2 * n + 1) + alpha, Rational(-1)};
        UniPoly next = (a * l - (Rational(n) + alpha) * lm) * make_rational(1, n + 1);
        lm = std::move(l);
        l = std::move(next);
    }
    return l;
}

// (1/k!) P_k^(k,eps)(x,0) == (-1)^k k! L_k^(2 eps)(x)
inline bool laguerre_check(int k, const Rational& eps)
{
    UniPoly lhs = constraint_poly(k, eps, k).at_y(0) * (Rational(1) / factorial(static_cast<unsigned>(k)));
    Rational sign = (k % 2 == 0) ? Rational(1) : Rational(-1);
    UniPoly rhs = laguerre(k, 2 * eps) * (sign * factorial(static_cast<unsigned>(k)));
    return lhs == rhs;
}

inline Rational tilde_scale(int k)
{
    return Rational(1) / (factorial(static_cast<unsigned>(k)) * factorial(static_cast<unsigned>(k + 1)));
}

inline std::vector<BivarPoly> normalized_sequence(int N, const Rational& eps, int k_max)
{
    auto P = constraint_poly_sequence(N, eps, k_max);
    for (int k = 0; k <= k_max; ++k)
        P[static_cast<std::size_t>(k)] *= tilde_scale(k);
    return P;
}

// tilde P_k^(N+l,-l/2) == sum_i C(l, k-i) tilde P_i^(N,l/2) for all k <= k_max.
inline bool generating_identity_check(int N, int ell, int k_max)
{
    auto lhs = normalized_sequence(N + ell, make_rational(-ell, 2), k_max);
    auto rhs = normalized_sequence(N, make_rational(ell, 2), k_max);
    for (int k = 0; k <= k_max; ++k) {
        BivarPoly s;
        for (int i = 0; i <= k; ++i)
            s += binomial(ell, k - i) * rhs[static_cast<std::size_t>(i)];
        if (!(s == lhs[static_cast<std::size_t>(k)]))
            return false;
    }
    return true;
}

// Coefficient form of the confluent Heun equation satisfied by z(t) = sum tilde P_k t^k:
//   t(1+t) z'' + (2 - (x-3-2eps) t - x t^2) z' - (x+y-1-2eps - (N-1) x t) z = 0.
// Returns the coefficient of t^m of the left side, computed from the sequence.
inline BivarPoly ode_residual_coefficient(const std::vector<BivarPoly>& Pt, int N, const Rational& eps, int m)
{
    auto at = [&](int k) -> BivarPoly { return (k < 0 || k >= static_cast<int>(Pt.size())) ? BivarPoly() : Pt[static_cast<std::size_t>(k)]; };
    const BivarPoly x = BivarPoly::x(), y = BivarPoly::y();
    BivarPoly r;
    // t z'' -> (m+1) m P_{m+1};  t^2 z'' -> m(m-1) P_m
    r += Rational((m + 1) * m) * at(m + 1);
    r += Rational(m * (m - 1)) * at(m);
    // 2 z' -> 2(m+1) P_{m+1}
    r += Rational(2 * (m + 1)) * at(m + 1);
    // -(x-3-2eps) t z' -> -(x-3-2eps) m P_m
    r -= (x - BivarPoly(3 + 2 * eps)) * (Rational(m) * at(m));
    // -x t^2 z' -> -x (m-1) P_{m-1}
    r -= x * (Rational(m - 1) * at(m - 1));
    // -(x+y-1-2eps) z + (N-1) x t z
    r -= (x + y - BivarPoly(1 + 2 * eps)) * at(m);
    r += Rational(N - 1) * x * at(m - 1);
    return r;
}

// Checks the normalized recurrence for 2 <= k <= k_max and the ODE coefficients it encodes.
inline bool ode_coefficient_check(int N, const Rational& eps, int k_max)
{
    if (k_max < 2)
        throw std::invalid_argument("k_max must be at least 2");
    auto Pt = normalized_sequence(N, eps, k_max);
    const BivarPoly x = BivarPoly::x(), y = BivarPoly::y();
    if (!(Pt[0] == BivarPoly(1)) || !(Pt[1] == (x + y - BivarPoly(1 + 2 * eps)) * make_rational(1, 2)))
        return false;
    for (int k = 2; k <= k_max; ++k) {
        Rational kk(k), den(k * (k + 1));
        BivarPoly rhs = (kk * x + y - BivarPoly(kk * kk + 2 * kk * eps)) * (Rational(1) / den) * Pt[static_cast<std::size_t>(k - 1)]
                        - (Rational(N - k + 1) / den) * x * Pt[static_cast<std::size_t>(k - 2)];
        if (!(rhs == Pt[static_cast<std::size_t>(k)]))
            return false;
    }
    // coefficient of t^m only involves P_{m-1}, P_m, P_{m+1}
    for (int m = 0; m + 1 <= k_max; ++m)
        if (!ode_residual_coefficient(Pt, N, eps, m).is_zero())
            return false;
    return true;
}

// a_i^(N)(y) with P_N(x,y) = sum_i a_i(y) x^i; always N+1 entries.
inline std::vector<UniPoly> coefficient_slices(int N, const Rational& eps)
{
    auto s = constraint_poly(N, eps, N).slices_x();
    s.resize(static_cast<std::size_t>(N) + 1);
    return s;
}

// Rational matrices for the eigen-matrix identities A E = E D and U E = E C.
using RatMatrix = std::vector<std::vector<Rational>>;

inline RatMatrix rat_zero(int n) { return RatMatrix(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n))); }

inline RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b)
{
    int n = static_cast<int>(a.size());
    RatMatrix r = rat_zero(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (a[i][k] == 0)
                continue;
            for (int j = 0; j < n; ++j)
                r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

inline RatMatrix tridiag_dense(const TridiagMatrix<Rational>& t)
{
    int n = static_cast<int>(t.size());
    RatMatrix r = rat_zero(n);
    for (int i = 0; i < n; ++i) {
        r[i][i] = t.diag[static_cast<std::size_t>(i)];
        if (i + 1 < n) {
            r[i][i + 1] = t.upper[static_cast<std::size_t>(i)];
            r[i + 1][i] = t.lower[static_cast<std::size_t>(i)];
        }
    }
    return r;
}

// A_k^(N) = Tridiag(i; 0; lambda_{i+1})
inline TridiagMatrix<Rational> shift_matrix_A(int N, int k)
{
    TridiagMatrix<Rational> m;
    RecurrenceConstants rc{N, 0, 0};
    for (int i = 1; i <= k; ++i) {
        m.diag.emplace_back(i);
        if (i < k) {
            m.upper.emplace_back(0);
            m.lower.push_back(rc.lambda_at(i + 1));
        }
    }
    return m;
}

// U_k^(eps) = Tridiag(-c_i; 1; 0)
inline TridiagMatrix<Rational> shift_matrix_U(const Rational& eps, int k)
{
    TridiagMatrix<Rational> m;
    RecurrenceConstants rc{0, eps, 0};
    for (int i = 1; i <= k; ++i) {
        m.diag.push_back(-rc.c_at(i));
        if (i < k) {
            m.upper.emplace_back(1);
            m.lower.emplace_back(0);
        }
    }
    return m;
}

// C_N^(N,eps) = Tridiag(-i(2(N-i)+1+2eps); 1; i(i+1) c_{N-i})
inline TridiagMatrix<Rational> shift_matrix_C(int N, const Rational& eps)
{
    TridiagMatrix<Rational> m;
    RecurrenceConstants rc{N, eps, 0};
    for (int i = 1; i <= N; ++i) {
        m.diag.push_back(-Rational(i) * (Rational(2 * (N - i) + 1) + 2 * eps));
        if (i < N) {
            m.upper.emplace_back(1);
            m.lower.push_back(Rational(i * (i + 1)) * rc.c_at(N - i));
        }
    }
    return m;
}

// (E)_{ij} = (-1)^{i-j} C(i,j) (i-1)!(N-j)! / ((j-1)!(N-i)!), lower triangular.
inline RatMatrix eigen_matrix_E(int N, int k)
{
    RatMatrix e = rat_zero(k);
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= i; ++j) {
            Rational v = binomial(i, j) * factorial(static_cast<unsigned>(i - 1)) *
                         factorial(static_cast<unsigned>(N - j)) /
                         (factorial(static_cast<unsigned>(j - 1)) * factorial(static_cast<unsigned>(N - i)));
            e[i - 1][j - 1] = ((i - j) % 2 == 0) ? v : Rational(-v);
        }
    return e;
}

} // namespace aqrm
