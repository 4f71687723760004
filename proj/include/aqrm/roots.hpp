#pragma once

#include "aqrm/rational.hpp"
#include "aqrm/unipoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace aqrm {

template <class R>
struct TridiagMatrix {
    std::vector<R> diag;
    std::vector<R> upper;
    std::vector<R> lower;

    std::size_t size() const { return diag.size(); }
    void validate() const
    {
        std::size_t n = diag.size();
        std::size_t off = n == 0 ? 0 : n - 1;
        if (upper.size() != off || lower.size() != off)
            throw std::invalid_argument("tridiagonal matrix with inconsistent band lengths");
    }
};

// det via J_n = a_n J_{n-1} - b_{n-1} c_{n-1} J_{n-2}; only the products b_i c_i enter.
template <class R>
R continuant(const TridiagMatrix<R>& m, R one = R(1))
{
    m.validate();
    if (m.size() == 0)
        return one;
    R prev = one;
    R cur = m.diag[0];
    for (std::size_t n = 1; n < m.size(); ++n) {
        R next = m.diag[n] * cur - m.upper[n - 1] * m.lower[n - 1] * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

struct RootInterval {
    Rational lo;
    Rational hi;
    int multiplicity_hint = 1;
};

namespace detail {

inline std::vector<UniPoly> sturm_chain(const UniPoly& p)
{
    std::vector<UniPoly> s;
    s.push_back(p.primitive());
    if (p.degree() < 1)
        return s;
    s.push_back(p.derivative().primitive());
    while (true) {
        UniPoly r = -(s[s.size() - 2] % s.back());
        if (r.is_zero())
            break;
        s.push_back(r.primitive());
    }
    return s;
}

inline int sign_changes(const std::vector<int>& signs)
{
    int changes = 0, last = 0;
    for (int v : signs) {
        if (v == 0)
            continue;
        if (last != 0 && v != last)
            ++changes;
        last = v;
    }
    return changes;
}

inline int variations_at(const std::vector<UniPoly>& chain, const Rational& x)
{
    std::vector<int> s;
    s.reserve(chain.size());
    for (const auto& q : chain)
        s.push_back(q.sign_at(x));
    return sign_changes(s);
}

// +1 for +inf, -1 for -inf
inline int variations_at_infinity(const std::vector<UniPoly>& chain, int side)
{
    std::vector<int> s;
    for (const auto& q : chain) {
        int lc = sgn(q.leading());
        if (side < 0 && q.degree() % 2 == 1)
            lc = -lc;
        s.push_back(lc);
    }
    return sign_changes(s);
}

// Cauchy bound: every real root lies strictly inside (-B, B).
inline Rational cauchy_bound(const UniPoly& p)
{
    Rational m(0);
    for (int i = 0; i < p.degree(); ++i)
        m = std::max(m, Rational(abs(p.coeff(static_cast<std::size_t>(i)) / p.leading())));
    return m + 1;
}

inline void isolate_in(const std::vector<UniPoly>& chain, Rational lo, Rational hi, int vlo, int vhi,
                       std::vector<RootInterval>& out)
{
    int count = vlo - vhi;
    if (count <= 0)
        return;
    if (count == 1) {
        out.push_back({lo, hi, 1});
        return;
    }
    Rational mid = (lo + hi) / 2;
    int vmid = variations_at(chain, mid);
    isolate_in(chain, lo, mid, vlo, vmid, out);
    isolate_in(chain, mid, hi, vmid, vhi, out);
}

} // namespace detail

// Number of distinct real roots of p in the half-open interval (a, b].
inline int count_roots_in(const UniPoly& p, const Rational& a, const Rational& b)
{
    if (p.is_zero())
        throw std::domain_error("root count of the zero polynomial");
    auto chain = detail::sturm_chain(square_free_part(p));
    return detail::variations_at(chain, a) - detail::variations_at(chain, b);
}

// Distinct real roots in (a, +inf); pass nullopt for the whole line.
inline int count_roots_above(const UniPoly& p, const std::optional<Rational>& a)
{
    if (p.is_zero())
        throw std::domain_error("root count of the zero polynomial");
    auto chain = detail::sturm_chain(square_free_part(p));
    int left = a ? detail::variations_at(chain, *a) : detail::variations_at_infinity(chain, -1);
    return left - detail::variations_at_infinity(chain, +1);
}

inline int count_real_roots(const UniPoly& p) { return count_roots_above(p, std::nullopt); }

// Isolating intervals (lo, hi] for each distinct real root, in increasing order.
inline std::vector<RootInterval> isolate_real_roots(const UniPoly& p)
{
    if (p.is_zero())
        throw std::domain_error("cannot isolate roots of the zero polynomial");
    std::vector<RootInterval> out;
    if (p.degree() < 1)
        return out;

    auto factors = square_free_decomposition(p);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].degree() < 1)
            continue;
        auto chain = detail::sturm_chain(factors[i]);
        Rational b = detail::cauchy_bound(factors[i]);
        std::vector<RootInterval> part;
        detail::isolate_in(chain, -b, b, detail::variations_at(chain, -b), detail::variations_at(chain, b),
                           part);
        for (auto& iv : part) {
            iv.multiplicity_hint = static_cast<int>(i) + 1;
            out.push_back(iv);
        }
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });

    // Roots of different square-free factors are distinct, but their intervals may overlap.
    if (factors.size() > 1) {
        auto owner = [&](const RootInterval& iv) -> const UniPoly& {
            return factors[static_cast<std::size_t>(iv.multiplicity_hint - 1)];
        };
        auto shrink = [&](RootInterval& iv) {
            const UniPoly& f = owner(iv);
            if (f.sign_at(iv.hi) == 0) {
                Rational w = (iv.hi - iv.lo) / 2;
                iv.lo = iv.hi - w;
                if (f.sign_at(iv.lo) == 0)
                    iv.lo = iv.hi - w / 2;
                return;
            }
            Rational mid = (iv.lo + iv.hi) / 2;
            if (count_roots_in(f, iv.lo, mid) == 1)
                iv.hi = mid;
            else
                iv.lo = mid;
        };
        bool again = true;
        while (again) {
            again = false;
            for (std::size_t k = 0; k + 1 < out.size(); ++k) {
                if (out[k].hi > out[k + 1].lo) {
                    shrink(out[k]);
                    shrink(out[k + 1]);
                    again = true;
                }
            }
            std::sort(out.begin(), out.end(),
                      [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
        }
    }
    return out;
}

// Bisection on an isolating interval; the result is within tol of the root.
inline RootInterval refine_interval(const UniPoly& p, RootInterval iv, const Rational& tol)
{
    UniPoly q = square_free_part(p);
    if (q.sign_at(iv.hi) == 0)
        return {iv.hi, iv.hi, iv.multiplicity_hint};
    int shi = q.sign_at(iv.hi);
    while (iv.hi - iv.lo > tol) {
        Rational mid = (iv.lo + iv.hi) / 2;
        int sm = q.sign_at(mid);
        if (sm == 0)
            return {mid, mid, iv.multiplicity_hint};
        if (sm == shi)
            iv.hi = mid;
        else
            iv.lo = mid;
    }
    return iv;
}

inline Rational refine_root(const UniPoly& p, const RootInterval& iv, const Rational& tol)
{
    RootInterval r = refine_interval(p, iv, tol);
    return (r.lo + r.hi) / 2;
}

// Eigenvalues of the symmetric tridiagonal matrix by Sturm-count bisection.
inline std::vector<double> sym_tridiag_eigenvalues(const std::vector<double>& diag, const std::vector<double>& offdiag,
                                                   double tol = 1e-12)
{
    std::size_t n = diag.size();
    if (n == 0)
        return {};
    if (offdiag.size() + 1 != n)
        throw std::invalid_argument("offdiag must have length n-1");

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double r = (i > 0 ? std::abs(offdiag[i - 1]) : 0.0) + (i + 1 < n ? std::abs(offdiag[i]) : 0.0);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    double pad = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    lo -= pad;
    hi += pad;

    std::vector<double> b2(offdiag.size());
    for (std::size_t i = 0; i < offdiag.size(); ++i)
        b2[i] = offdiag[i] * offdiag[i];

    // number of eigenvalues strictly below t
    auto count_below = [&](double t) {
        int cnt = 0;
        double q = diag[0] - t;
        const double tiny = std::numeric_limits<double>::min() * 1e3;
        if (q < 0)
            ++cnt;
        for (std::size_t i = 1; i < n; ++i) {
            if (q == 0)
                q = tiny;
            q = diag[i] - t - b2[i - 1] / q;
            if (q < 0)
                ++cnt;
        }
        return cnt;
    };

    std::vector<double> ev(n);
    for (std::size_t k = 0; k < n; ++k) {
        double a = lo, b = hi;
        while (b - a > tol && b - a > 4 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b))) {
            double mid = 0.5 * (a + b);
            if (count_below(mid) > static_cast<int>(k))
                b = mid;
            else
                a = mid;
        }
        ev[k] = 0.5 * (a + b);
    }
    return ev;
}

// Symmetrizes via b'_i = c'_i = sqrt(b_i c_i); refuses negative products.
inline std::vector<double> tridiag_eigenvalues(const TridiagMatrix<double>& m, double tol = 1e-12)
{
    m.validate();
    std::vector<double> off(m.upper.size());
    for (std::size_t i = 0; i < off.size(); ++i) {
        double p = m.upper[i] * m.lower[i];
        if (p < 0)
            throw std::domain_error("tridiagonal matrix is not symmetrizable (negative off-diagonal product)");
        off[i] = std::sqrt(p);
    }
    return sym_tridiag_eigenvalues(m.diag, off, tol);
}

} // namespace aqrm
