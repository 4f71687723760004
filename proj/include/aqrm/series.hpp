#pragma once

#include "aqrm/poly.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aqrm {

template <class Real>
struct ModelParamsT {
    Real g = 1;
    Real delta = 1;
    Real eps = 0;

    void validate() const
    {
        if (!(g > 0))
            throw std::invalid_argument("coupling g must be positive");
        if (!(delta > 0))
            throw std::invalid_argument("delta must be positive");
    }
};
using ModelParams = ModelParamsT<double>;

struct SeriesConfig {
    double tol = 1e-14;
    int max_terms = 2000;
    int consecutive_small = 8;
    double pole_guard = 1e-8;

    void validate() const
    {
        if (!(tol > 0) || consecutive_small < 1)
            throw std::invalid_argument("invalid series tolerance");
        if (max_terms < 32)
            throw std::invalid_argument("max_terms must be at least 32");
    }
};

enum class Branch { plus, minus };

inline int sign_of(Branch b) { return b == Branch::plus ? 1 : -1; }

class PoleEncountered : public std::domain_error {
public:
    explicit PoleEncountered(int index)
        : std::domain_error("series coefficient hits a pole at n = " + std::to_string(index)), n(index)
    {
    }
    int n;
};

class NonConvergent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class WrongPoleOrder : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

template <class Real>
struct SeriesStateT {
    std::vector<Real> coeffs;
    Real sum_R = 0;
    Real sum_Rbar = 0;
    int truncation_order = 0;
    bool converged = false;
};
using SeriesState = SeriesStateT<double>;

namespace detail {

// Tracks the "consecutive small terms" stopping rule for one or more running sums.
template <class Real>
class TailMonitor {
public:
    TailMonitor(const SeriesConfig& cfg) : tol_(static_cast<Real>(cfg.tol)), need_(cfg.consecutive_small) {}
    // Feed (term, partial sum) pairs for one index; returns true once the streak is long enough.
    bool step(std::initializer_list<std::pair<Real, Real>> pairs)
    {
        bool small = true;
        for (const auto& [t, s] : pairs) {
            using std::abs;
            if (abs(t) > tol_ * abs(s))
                small = false;
        }
        streak_ = small ? streak_ + 1 : 0;
        return streak_ >= need_;
    }

private:
    Real tol_;
    int need_;
    int streak_ = 0;
};

template <class Real>
Real pole_distance(Real x, int n, int s, Real eps)
{
    // x - n + s*eps, the denominator appearing in f_n^{s}
    return x - Real(n) + Real(s) * eps;
}

} // namespace detail

// f_n^{±}(x) = 2g + (1/2g)(n - x ± eps + Δ²/(x - n ± eps))
template <class Real>
Real f_coefficient(int n, Real x, const ModelParamsT<Real>& p, Branch b)
{
    int s = sign_of(b);
    Real d = detail::pole_distance(x, n, s, p.eps);
    return 2 * p.g + (Real(n) - x + Real(s) * p.eps + p.delta * p.delta / d) / (2 * p.g);
}

// K_0..K_{n_max} without any convergence test (used for the polynomial bridge).
template <class Real>
std::vector<Real> k_coefficients_upto(Real x, const ModelParamsT<Real>& p, Branch b, int n_max,
                                      double pole_guard = 1e-8)
{
    std::vector<Real> K{Real(1)};
    int s = sign_of(b);
    Real km = 0;
    for (int n = 1; n <= n_max; ++n) {
        using std::abs;
        if (abs(detail::pole_distance(x, n - 1, s, p.eps)) < Real(pole_guard))
            throw PoleEncountered(n - 1);
        Real next = (f_coefficient(n - 1, x, p, b) * K.back() - km) / Real(n);
        km = K.back();
        K.push_back(next);
    }
    return K;
}

template <class Real>
SeriesStateT<Real> k_coefficients(Real x, const ModelParamsT<Real>& p, Branch b, const SeriesConfig& cfg = {})
{
    p.validate();
    cfg.validate();
    using std::abs;
    int s = sign_of(b);
    SeriesStateT<Real> st;
    st.coeffs.push_back(1);
    Real d0 = detail::pole_distance(x, 0, s, p.eps);
    if (abs(d0) < Real(cfg.pole_guard))
        throw PoleEncountered(0);
    st.sum_R = 1;
    st.sum_Rbar = 1 / d0;
    detail::TailMonitor<Real> mon(cfg);
    Real km = 0, gn = 1;
    for (int n = 1; n < cfg.max_terms; ++n) {
        Real dprev = detail::pole_distance(x, n - 1, s, p.eps);
        if (abs(dprev) < Real(cfg.pole_guard))
            throw PoleEncountered(n - 1);
        Real kn = (f_coefficient(n - 1, x, p, b) * st.coeffs.back() - km) / Real(n);
        km = st.coeffs.back();
        st.coeffs.push_back(kn);
        gn *= p.g;
        Real dn = detail::pole_distance(x, n, s, p.eps);
        if (abs(dn) < Real(cfg.pole_guard))
            throw PoleEncountered(n);
        Real t = kn * gn, tb = t / dn;
        st.sum_R += t;
        st.sum_Rbar += tb;
        st.truncation_order = n;
        if (mon.step({{t, st.sum_R}, {tb, st.sum_Rbar}})) {
            st.converged = true;
            break;
        }
    }
    if (!st.converged)
        throw NonConvergent("K-series did not converge within max_terms");
    return st;
}

// G_eps(x) = Δ² R̄⁺ R̄⁻ − R⁺ R⁻
template <class Real>
Real g_function(Real x, const ModelParamsT<Real>& p, const SeriesConfig& cfg = {})
{
    auto sp = k_coefficients(x, p, Branch::plus, cfg);
    auto sm = k_coefficients(x, p, Branch::minus, cfg);
    return p.delta * p.delta * sp.sum_Rbar * sm.sum_Rbar - sp.sum_R * sm.sum_R;
}

// G_± = Σ K_n (1 ∓ Δ/(x−n)) gⁿ for eps = 0.
template <class Real>
std::pair<Real, Real> g_factors_symmetric(Real x, const ModelParamsT<Real>& p, const SeriesConfig& cfg = {})
{
    ModelParamsT<Real> q = p;
    q.eps = 0;
    auto st = k_coefficients(x, q, Branch::plus, cfg);
    return {st.sum_R - p.delta * st.sum_Rbar, st.sum_R + p.delta * st.sum_Rbar};
}

inline double sinpi(double z)
{
    double r = z - 2.0 * std::round(z / 2.0); // r in [-1, 1]
    if (r == 0.0 || std::abs(r) == 1.0)
        return 0.0;
    if (r > 0.5)
        r = 1.0 - r;
    else if (r < -0.5)
        r = -1.0 - r;
    return std::sin(std::numbers::pi * r);
}

// 1/Γ(z) via Lanczos (g = 7, 9 terms) with reflection; exact zeros at the poles of Γ.
inline double reciprocal_gamma(double z)
{
    if (z <= 0 && z == std::floor(z))
        return 0.0;
    static constexpr std::array<double, 9> c{0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                             771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                             -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z < 0.5)
        return sinpi(z) * (1.0 / reciprocal_gamma(1.0 - z)) / std::numbers::pi;
    double w = z - 1.0;
    double a = c[0];
    double t = w + 7.5;
    for (int i = 1; i < 9; ++i)
        a += c[static_cast<std::size_t>(i)] / (w + i);
    // Γ(z) = sqrt(2π) t^{w+0.5} e^{-t} a; evaluated in logs to avoid overflow of t^{w+0.5}
    double lg = 0.5 * std::log(2 * std::numbers::pi) + (w + 0.5) * std::log(t) - t + std::log(a);
    return std::exp(-lg);
}

// ---- Frobenius solutions at the exceptional point x = N + eps ----

enum class FrobeniusKind { phi1_plus, phi1_minus, phi2_plus, phi2_minus };

template <class Real>
struct FrobeniusSolutionT {
    FrobeniusKind kind = FrobeniusKind::phi1_minus;
    int N = 0;
    std::vector<Real> coeffs;
    Real value_at_half = 0;
    int truncation_order = 0;
};
using FrobeniusSolution = FrobeniusSolutionT<double>;

namespace detail {

// If v is (numerically) a nonnegative integer, return it.
template <class Real>
std::optional<int> as_nonneg_integer(Real v, Real rel = Real(1e-12))
{
    using std::abs;
    using std::round;
    Real r = round(v);
    if (r < 0 || abs(v - r) > rel * (1 + abs(v)))
        return std::nullopt;
    return static_cast<int>(r);
}

// Coefficients K̄_n with the recurrence
//   (n+1) K̄_{n+1} = (n - N + 4g² + shift + Δ²/(pole - n)) K̄_n - 4g² K̄_{n-1}
// started from K̄_start = 1 (all earlier zero). The two weighted sums at y = 1/2 are
//   plain = Σ K̄_n 2^{-n},   weighted = Σ K̄_n w(n) 2^{-n}
template <class Real>
struct KbarRun {
    std::vector<Real> coeffs;
    Real plain = 0;
    Real weighted = 0;
    int order = 0;
};

template <class Real, class Weight>
KbarRun<Real> kbar_run(int N, Real pole, Real shift, int start, const ModelParamsT<Real>& p, const SeriesConfig& cfg,
                       Weight weight)
{
    using std::abs;
    using std::ldexp;
    const Real g4 = 4 * p.g * p.g, d2 = p.delta * p.delta;
    KbarRun<Real> r;
    r.coeffs.assign(static_cast<std::size_t>(start) + 1, Real(0));
    r.coeffs.back() = 1;
    Real half_n = ldexp(Real(1), -start);
    r.plain = half_n;
    r.weighted = weight(start) * half_n;
    TailMonitor<Real> mon(cfg);
    bool done = false;
    for (int n = start; n < start + cfg.max_terms; ++n) {
        Real den = pole - Real(n);
        if (abs(den) < Real(cfg.pole_guard))
            throw PoleEncountered(n);
        Real kn = r.coeffs[static_cast<std::size_t>(n)];
        Real kprev = n >= 1 ? r.coeffs[static_cast<std::size_t>(n - 1)] : Real(0);
        Real next = ((Real(n - N) + g4 + shift + d2 / den) * kn - g4 * kprev) / Real(n + 1);
        r.coeffs.push_back(next);
        half_n /= 2;
        Real t = next * half_n, tw = weight(n + 1) * t;
        r.plain += t;
        r.weighted += tw;
        r.order = n + 1;
        if (mon.step({{t, r.plain}, {tw, r.weighted}})) {
            done = true;
            break;
        }
    }
    if (!done)
        throw NonConvergent("Frobenius series did not converge within max_terms");
    return r;
}

} // namespace detail

template <class Real>
FrobeniusSolutionT<Real> frobenius_solution(FrobeniusKind kind, int N, const ModelParamsT<Real>& p,
                                            const SeriesConfig& cfg = {})
{
    p.validate();
    cfg.validate();
    if (N < 0)
        throw std::invalid_argument("N must be nonnegative");
    FrobeniusSolutionT<Real> out;
    out.kind = kind;
    out.N = N;
    using std::ldexp;
    if (kind == FrobeniusKind::phi1_plus || kind == FrobeniusKind::phi1_minus) {
        // pole at n = N is never reached since the run starts at N+1
        auto run = detail::kbar_run<Real>(N, Real(N), -2 * p.eps, N + 1, p, cfg,
                                          [N](int n) { return Real(1) / Real(n - N); });
        out.coeffs = std::move(run.coeffs);
        out.truncation_order = run.order;
        if (kind == FrobeniusKind::phi1_minus)
            out.value_at_half = run.plain;
        else
            out.value_at_half = Real(N + 1) / p.delta * ldexp(Real(1), -N) - p.delta * run.weighted;
        return out;
    }
    Real M = Real(N) + 2 * p.eps;
    if (auto Mi = detail::as_nonneg_integer(M)) {
        int m = *Mi;
        auto run = detail::kbar_run<Real>(N, Real(m), Real(0), m + 1, p, cfg,
                                          [m](int n) { return Real(1) / Real(n - m); });
        out.coeffs = std::move(run.coeffs);
        out.truncation_order = run.order;
        if (kind == FrobeniusKind::phi2_minus)
            out.value_at_half = run.plain;
        else
            out.value_at_half = Real(m + 1) / p.delta * ldexp(Real(1), -m) - p.delta * run.weighted;
        return out;
    }
    auto run = detail::kbar_run<Real>(N, M, Real(0), 0, p, cfg, [M](int n) { return Real(1) / (M - Real(n)); });
    out.coeffs = std::move(run.coeffs);
    out.truncation_order = run.order;
    out.value_at_half = kind == FrobeniusKind::phi2_minus ? run.plain : p.delta * run.weighted;
    return out;
}

// The four matching values R̄^(N,-), R̄^(N,+), R^(N,-), R^(N,+) at y = 1/2.
template <class Real>
struct ExceptionalValues {
    Real Rbar_minus = 0;
    Real Rbar_plus = 0;
    Real R_minus = 0;
    Real R_plus = 0;
};

template <class Real>
ExceptionalValues<Real> exceptional_values(int N, const ModelParamsT<Real>& p, const SeriesConfig& cfg = {})
{
    ExceptionalValues<Real> v;
    v.Rbar_minus = frobenius_solution(FrobeniusKind::phi1_plus, N, p, cfg).value_at_half;
    v.R_minus = frobenius_solution(FrobeniusKind::phi1_minus, N, p, cfg).value_at_half;
    v.Rbar_plus = frobenius_solution(FrobeniusKind::phi2_plus, N, p, cfg).value_at_half;
    v.R_plus = frobenius_solution(FrobeniusKind::phi2_minus, N, p, cfg).value_at_half;
    return v;
}

// sign = plus: T_eps^(N); sign = minus: T_{-eps}^(N).
template <class Real>
Real t_function(int N, const ModelParamsT<Real>& p, Branch sign, const SeriesConfig& cfg = {})
{
    ModelParamsT<Real> q = p;
    if (sign == Branch::minus)
        q.eps = -p.eps;
    auto v = exceptional_values(N, q, cfg);
    return v.Rbar_plus * v.Rbar_minus - v.R_plus * v.R_minus;
}

template <class Real>
Real c_factor(int N)
{
    Real f = 1;
    for (int k = 2; k <= N; ++k)
        f *= Real(k);
    return 1 / (f * f * Real(N + 1));
}

// 2eps in Z and x0 - |eps| a nonnegative integer: the pole at x0 can be of order two.
template <class Real>
bool is_double_pole_point(Real x0, Real eps)
{
    using std::abs;
    auto ell = detail::as_nonneg_integer(2 * abs(eps));
    if (!ell)
        return false;
    return detail::as_nonneg_integer(x0 - abs(eps)).has_value();
}

template <class Real>
Real residue_simple(int N, const ModelParamsT<Real>& p, Branch sign, const SeriesConfig& cfg = {})
{
    p.validate();
    Real e = sign == Branch::plus ? p.eps : -p.eps;
    if (is_double_pole_point(Real(N) + e, p.eps))
        throw WrongPoleOrder("x = N ± eps is a (possibly) double pole; use double_pole_coefficients");
    Real x = 4 * p.g * p.g, y = p.delta * p.delta;
    ModelParamsT<Real> q = p;
    q.eps = e;
    return c_factor<Real>(N) * y * constraint_value<Real>(N, e, N, x, y) * t_function(N, q, Branch::plus, cfg);
}

// ---- Laurent expansion at an exceptional point, computed from the K recurrences ----

template <class Real>
struct Dual {
    Real v = 0;
    Real d = 0;
    friend Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
    friend Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
    friend Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
    friend Dual operator*(Real s, Dual a) { return {s * a.v, s * a.d}; }
    friend Dual operator/(Dual a, Dual b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }
    friend Dual operator/(Dual a, Real s) { return {a.v / s, a.d / s}; }
};

// a(x) + r(x)/(x - x0), each part carried with its first derivative at x0.
template <class Real>
struct Laurent1 {
    Dual<Real> a;
    Dual<Real> r;
    Real residue() const { return r.v; }
    Real regular() const { return a.v + r.d; }
};

template <class Real>
struct LaurentSums {
    Laurent1<Real> R;
    Laurent1<Real> Rbar;
    // sums of the analytic parts' values only (what the s_n / r_n recurrences produce)
    Real R_values = 0;
    Real Rbar_values_skip = 0;
    int pole_index = -1;
    int order = 0;
};

// Expands R^{sign}(x), R̄^{sign}(x) at x = x0. pole_index is the n with x0 = n ∓ eps (or -1).
template <class Real>
LaurentSums<Real> laurent_sums(Real x0, int pole_index, const ModelParamsT<Real>& p, Branch b,
                               const SeriesConfig& cfg = {})
{
    using D = Dual<Real>;
    using std::abs;
    const int s = sign_of(b);
    const Real twog = 2 * p.g, c = p.delta * p.delta / twog;
    const D X{x0, 1};
    auto f_regular = [&](int n) {
        D base = D{twog, 0} + D{Real(n) + Real(s) * p.eps, 0} / twog - X / twog;
        if (n == pole_index)
            return base;
        D den = X - D{Real(n) - Real(s) * p.eps, 0};
        return base + D{c, 0} / den;
    };

    LaurentSums<Real> out;
    out.pole_index = pole_index;
    Laurent1<Real> km{}, k{{1, 0}, {0, 0}};
    Real gn = 1;
    auto accumulate = [&](int n, const Laurent1<Real>& kk) {
        Laurent1<Real> t{gn * kk.a, gn * kk.r};
        out.R.a = out.R.a + t.a;
        out.R.r = out.R.r + t.r;
        out.R_values += t.a.v;
        Laurent1<Real> tb;
        if (n == pole_index) {
            tb.a = {0, 0};
            tb.r = t.a;
        } else {
            D h = D{1, 0} / (X - D{Real(n) - Real(s) * p.eps, 0});
            tb.a = t.a * h;
            tb.r = t.r * h;
            out.Rbar_values_skip += tb.a.v;
        }
        out.Rbar.a = out.Rbar.a + tb.a;
        out.Rbar.r = out.Rbar.r + tb.r;
        return std::array<Real, 4>{abs(t.a.v) + abs(t.r.v) + abs(t.r.d), abs(out.R.a.v) + abs(out.R.r.v) + abs(out.R.r.d),
                                   abs(tb.a.v) + abs(tb.r.v) + abs(tb.r.d),
                                   abs(out.Rbar.a.v) + abs(out.Rbar.r.v) + abs(out.Rbar.r.d)};
    };
    accumulate(0, k);
    detail::TailMonitor<Real> mon(cfg);
    bool done = false;
    for (int n = 1; n < cfg.max_terms; ++n) {
        Laurent1<Real> next;
        D f = f_regular(n - 1);
        next.a = f * k.a;
        next.r = f * k.r;
        if (n - 1 == pole_index) {
            if (k.r.v != 0 || k.r.d != 0)
                throw std::logic_error("second pole step in a single K-series");
            next.r = next.r + c * k.a;
        }
        next.a = (next.a - km.a) / Real(n);
        next.r = (next.r - km.r) / Real(n);
        km = k;
        k = next;
        gn *= p.g;
        auto m = accumulate(n, k);
        out.order = n;
        if (n > pole_index + 1 && mon.step({{m[0], m[1]}, {m[2], m[3]}})) {
            done = true;
            break;
        }
    }
    if (!done)
        throw NonConvergent("Laurent K-series did not converge within max_terms");
    return out;
}

template <class Real>
struct PoleCoefficients {
    Real A = 0; // coefficient of (x-x0)^{-2}
    Real B = 0; // coefficient of (x-x0)^{-1}
};

namespace detail {

template <class Real>
int pole_index_for(Real x0, Real eps, Branch b)
{
    // f^{+} is singular where x = n - eps, f^{-} where x = n + eps
    Real n = b == Branch::plus ? x0 + eps : x0 - eps;
    auto k = as_nonneg_integer(n);
    return k ? *k : -1;
}

} // namespace detail

// Laurent coefficients of G at any x0 from the series themselves (no closed forms).
template <class Real>
PoleCoefficients<Real> laurent_g(Real x0, const ModelParamsT<Real>& p, const SeriesConfig& cfg = {})
{
    auto lp = laurent_sums(x0, detail::pole_index_for(x0, p.eps, Branch::plus), p, Branch::plus, cfg);
    auto lm = laurent_sums(x0, detail::pole_index_for(x0, p.eps, Branch::minus), p, Branch::minus, cfg);
    Real d2 = p.delta * p.delta;
    PoleCoefficients<Real> pc;
    pc.A = d2 * lp.Rbar.residue() * lm.Rbar.residue() - lp.R.residue() * lm.R.residue();
    pc.B = d2 * (lp.Rbar.residue() * lm.Rbar.regular() + lm.Rbar.residue() * lp.Rbar.regular()) -
           (lp.R.residue() * lm.R.regular() + lm.R.residue() * lp.R.regular());
    return pc;
}

template <class Real>
struct QFunctions {
    Real Qm = 0;
    Real Qbarm = 0;
    Real Qp = 0;
    Real Qbarp = 0;
};

namespace detail {

template <class Real>
void require_half_integer(int N, int ell, const ModelParamsT<Real>& p)
{
    using std::abs;
    if (N < 0 || ell < 0)
        throw std::invalid_argument("N and ell must be nonnegative");
    if (abs(p.eps - Real(ell) / 2) > Real(1e-12))
        throw std::invalid_argument("this operation requires eps = ell/2");
}

} // namespace detail

// Regular parts at x0 = N + ell/2 of R^∓ and R̄^∓, i.e. Q = R - Res/(x - x0) evaluated at x0.
template <class Real>
QFunctions<Real> q_functions(int N, int ell, const ModelParamsT<Real>& p, const SeriesConfig& cfg = {})
{
    p.validate();
    detail::require_half_integer(N, ell, p);
    ModelParamsT<Real> q = p;
    q.eps = Real(ell) / 2;
    Real x0 = Real(N) + q.eps;
    auto lm = laurent_sums(x0, N, q, Branch::minus, cfg);
    auto lp = laurent_sums(x0, N + ell, q, Branch::plus, cfg);
    return {lm.R.regular(), lm.Rbar.regular(), lp.R.regular(), lp.Rbar.regular()};
}

// The s_n / r_n sums: the recurrence with the pole term dropped at the singular step,
// and the singular index omitted from the barred sum.
template <class Real>
QFunctions<Real> q_function_recurrence_sums(int N, int ell, const ModelParamsT<Real>& p, const SeriesConfig& cfg = {})
{
    p.validate();
    detail::require_half_integer(N, ell, p);
    ModelParamsT<Real> q = p;
    q.eps = Real(ell) / 2;
    Real x0 = Real(N) + q.eps;
    auto lm = laurent_sums(x0, N, q, Branch::minus, cfg);
    auto lp = laurent_sums(x0, N + ell, q, Branch::plus, cfg);
    return {lm.R_values, lm.Rbar_values_skip, lp.R_values, lp.Rbar_values_skip};
}

// B^N_ell = (1/C(N)) (R̄^(N,+) Δ Q̄⁻ − R^(N,+) Q⁻)
template <class Real>
Real b_function(int N, int ell, const ModelParamsT<Real>& p, const SeriesConfig& cfg = {})
{
    auto Q = q_functions(N, ell, p, cfg);
    ModelParamsT<Real> q = p;
    q.eps = Real(ell) / 2;
    auto v = exceptional_values(N, q, cfg);
    return (v.Rbar_plus * p.delta * Q.Qbarm - v.R_plus * Q.Qm) / c_factor<Real>(N);
}

// B^{N+ell}_{-ell} = (1/C(N+ell)) (R̄^(N,-) Δ Q̄⁺ − R^(N,-) Q⁺)
template <class Real>
Real b_function_conjugate(int N, int ell, const ModelParamsT<Real>& p, const SeriesConfig& cfg = {})
{
    auto Q = q_functions(N, ell, p, cfg);
    ModelParamsT<Real> q = p;
    q.eps = Real(ell) / 2;
    auto v = exceptional_values(N, q, cfg);
    return (v.Rbar_minus * p.delta * Q.Qbarp - v.R_minus * Q.Qp) / c_factor<Real>(N + ell);
}

// B^{N+ell}_{-ell} + A_N^ell((2g)², Δ²) B^N_ell; zero exactly when the residue at N + ell/2 vanishes
// (given P_N((2g)², Δ²) != 0).
template <class Real>
Real divisibility_b_residual(int N, int ell, const ModelParamsT<Real>& p, const SeriesConfig& cfg = {})
{
    Real x = 4 * p.g * p.g, y = p.delta * p.delta;
    Real a = static_cast<Real>(a_poly(N, ell).eval(static_cast<double>(x), static_cast<double>(y)));
    return b_function_conjugate(N, ell, p, cfg) + a * b_function(N, ell, p, cfg);
}

// Closed forms for the coefficients of G at the double pole x0 = N + ell/2.
template <class Real>
PoleCoefficients<Real> double_pole_coefficients(int N, int ell, const ModelParamsT<Real>& p,
                                                const SeriesConfig& cfg = {})
{
    p.validate();
    detail::require_half_integer(N, ell, p);
    ModelParamsT<Real> q = p;
    q.eps = Real(ell) / 2;
    Real x = 4 * p.g * p.g, y = p.delta * p.delta;
    Real PN = constraint_value<Real>(N, q.eps, N, x, y);
    Real PNl = constraint_value<Real>(N + ell, -q.eps, N + ell, x, y);
    Real T = t_function(N, q, Branch::plus, cfg);
    Real CN = c_factor<Real>(N), CNl = c_factor<Real>(N + ell);
    PoleCoefficients<Real> pc;
    pc.A = CN * CNl * y * y * PN * PNl * T;
    pc.B = CN * CNl * y * PN * divisibility_b_residual(N, ell, q, cfg);
    return pc;
}

// Symmetric-difference Richardson estimates of the Laurent coefficients at x0.
template <class Real, class F>
PoleCoefficients<Real> laurent_numeric(F&& G, Real x0, Real h)
{
    auto est = [&](Real hh) {
        Real gp = G(x0 + hh), gm = G(x0 - hh);
        return std::pair<Real, Real>{hh * hh * (gp + gm) / 2, hh * (gp - gm) / 2};
    };
    auto e0 = est(h), e1 = est(h / 2), e2 = est(h / 4);
    auto rich = [](Real a0, Real a1, Real a2) {
        Real b0 = (4 * a1 - a0) / 3, b1 = (4 * a2 - a1) / 3;
        return (16 * b1 - b0) / 15;
    };
    return {rich(e0.first, e1.first, e2.first), rich(e0.second, e1.second, e2.second)};
}

// ---- the regularized G-function ----

struct ExceptionalPoint {
    double x0 = 0;
    int N = 0;     // x0 = N + e
    double e = 0;  // the signed eps with x0 = N + e
    bool double_pole = false;
};

// Nearest point of {n ± eps : n >= 0} to x.
inline ExceptionalPoint nearest_exceptional(double x, double eps)
{
    ExceptionalPoint best;
    double bd = std::numeric_limits<double>::infinity();
    for (double e : {eps, -eps}) {
        double n = std::max(0.0, std::round(x - e));
        double x0 = n + e;
        if (std::abs(x - x0) < bd) {
            bd = std::abs(x - x0);
            best = {x0, static_cast<int>(n), e, is_double_pole_point(x0, eps)};
        }
    }
    return best;
}

// Value of G·Γ(eps-x)^{-1}Γ(-eps-x)^{-1} exactly at an exceptional point, from the pole coefficients.
inline double regularized_g_at_pole(const ExceptionalPoint& ep, const ModelParams& p, const SeriesConfig& cfg = {})
{
    if (ep.double_pole) {
        int ell = static_cast<int>(std::lround(2 * std::abs(p.eps)));
        int N = static_cast<int>(std::lround(ep.x0 - std::abs(p.eps)));
        auto pc = laurent_g(ep.x0, p, cfg);
        double f = std::tgamma(N + 1.0) * std::tgamma(N + ell + 1.0);
        return (ell % 2 == 0 ? 1.0 : -1.0) * f * pc.A;
    }
    auto pc = laurent_g(ep.x0, p, cfg);
    double sgnN = ep.N % 2 == 0 ? 1.0 : -1.0;
    return -sgnN * std::tgamma(ep.N + 1.0) * reciprocal_gamma(-2 * ep.e - ep.N) * pc.B;
}

inline double regularized_g_direct(double x, const ModelParams& p, const SeriesConfig& cfg = {})
{
    double r1 = reciprocal_gamma(p.eps - x), r2 = reciprocal_gamma(-p.eps - x);
    return g_function(x, p, cfg) * r1 * r2;
}

inline constexpr double kRegularizationWindow = 1e-6;

inline double regularized_g(double x, const ModelParams& p, const SeriesConfig& cfg = {})
{
    p.validate();
    auto ep = nearest_exceptional(x, p.eps);
    double d = x - ep.x0;
    double w = kRegularizationWindow;
    if (std::abs(d) >= w)
        return regularized_g_direct(x, p, cfg);
    // quadratic through (x0-w, x0, x0+w)
    double gm = regularized_g_direct(ep.x0 - w, p, cfg);
    double gp = regularized_g_direct(ep.x0 + w, p, cfg);
    double g0 = regularized_g_at_pole(ep, p, cfg);
    double t = d / w;
    return g0 + t * (gp - gm) / 2 + t * t * (gp + gm - 2 * g0) / 2;
}

} // namespace aqrm
