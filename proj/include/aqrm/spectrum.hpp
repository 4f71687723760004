#pragma once

#include "aqrm/oracle.hpp"
#include "aqrm/poly.hpp"
#include "aqrm/roots.hpp"
#include "aqrm/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace aqrm {

enum class EigenKind { Regular, Juddian, NonJuddianExceptional, Oracle };

inline const char* kind_name(EigenKind k)
{
    switch (k) {
    case EigenKind::Regular:
        return "regular";
    case EigenKind::Juddian:
        return "juddian";
    case EigenKind::NonJuddianExceptional:
        return "non_juddian";
    case EigenKind::Oracle:
        return "oracle";
    }
    return "?";
}

struct EigenvalueRecord {
    double x = 0;
    double lambda = 0;
    EigenKind kind = EigenKind::Regular;
    int multiplicity = 1;
    std::optional<int> level_N;
    std::optional<Branch> branch;
    std::optional<double> oracle_gap; // set when the degeneracy was cross-checked on the oracle
};

struct SweepConfig {
    std::vector<double> g_grid;
    double x_max = 8;
    double scan_step = 1e-2;
    double refine_tol = 1e-10;

    void validate() const
    {
        for (std::size_t i = 1; i < g_grid.size(); ++i)
            if (!(g_grid[i] > g_grid[i - 1]))
                throw std::invalid_argument("g grid must be strictly increasing");
        if (!(scan_step > 0) || !(refine_tol > 0))
            throw std::invalid_argument("scan_step and refine_tol must be positive");
    }
};

struct JuddianRoot {
    double g = 0;
    int multiplicity = 1;
    Rational x_lo, x_hi; // exact bracket of x = (2g)^2
};

// All g > 0 with P_N^(N,eps)((2g)^2, Δ^2) = 0.
inline std::vector<JuddianRoot> juddian_roots(int N, const Rational& eps, const Rational& delta)
{
    std::vector<JuddianRoot> out;
    if (N <= 0)
        return out;
    UniPoly p = constraint_poly(N, eps, N).at_y(delta * delta);
    if (p.is_zero())
        return out;
    int mult = is_integer(2 * eps) ? 2 : 1;
    for (const auto& iv : isolate_real_roots(p)) {
        if (iv.hi <= 0)
            continue;
        RootInterval r = iv;
        if (r.lo < 0) {
            if (p.sign_at(Rational(0)) == 0 || count_roots_in(p, Rational(0), r.hi) == 0)
                continue;
            r.lo = 0;
        }
        r = refine_interval(p, r, Rational(1, 1) / Rational(Integer(1) << 80));
        double x = Rational((r.lo + r.hi) / 2).get_d();
        out.push_back({std::sqrt(x) / 2, mult, r.lo, r.hi});
    }
    return out;
}

// Distinct positive roots in x of P_N^(N,eps)(x, y).
inline int count_positive_roots(int N, const Rational& eps, const Rational& y)
{
    if (N <= 0)
        return 0;
    UniPoly p = constraint_poly(N, eps, N).at_y(y);
    if (p.is_zero())
        throw std::domain_error("constraint polynomial slice vanishes identically");
    return count_roots_above(p, Rational(0));
}

// Zeros of T^{(N)}_{±eps}(g, Δ) in g over [g_lo, g_hi].
inline std::vector<double> non_juddian_roots(int N, double delta, double eps, Branch sign, double g_lo, double g_hi,
                                             double scan_step = 1e-2, double refine_tol = 1e-12,
                                             const SeriesConfig& cfg = {})
{
    if (!(g_lo > 0) || !(g_hi > g_lo))
        throw std::invalid_argument("need 0 < g_lo < g_hi");
    auto T = [&](double g) { return t_function(N, ModelParams{g, delta, eps}, sign, cfg); };
    std::vector<double> out;
    int steps = static_cast<int>(std::ceil((g_hi - g_lo) / scan_step));
    double a = g_lo, fa = T(a);
    for (int i = 1; i <= steps; ++i) {
        double b = std::min(g_hi, g_lo + i * scan_step), fb = T(b);
        if (fa == 0) {
            out.push_back(a);
        } else if (fa * fb < 0) {
            double lo = a, hi = b, flo = fa;
            while (hi - lo > refine_tol) {
                double mid = 0.5 * (lo + hi), fm = T(mid);
                if ((fm < 0) == (flo < 0)) {
                    lo = mid;
                    flo = fm;
                } else
                    hi = mid;
            }
            out.push_back(0.5 * (lo + hi));
        }
        a = b;
        fa = fb;
    }
    return out;
}

struct ScanOptions {
    double scan_step = 1e-2;
    double refine_tol = 1e-10;
    double exceptional_tol = 1e-6; // distance to n ± eps below which a zero counts as exceptional
    SeriesConfig series{};
};

namespace detail {

inline double bisect(const std::function<double(double)>& f, double lo, double hi, double flo, double tol)
{
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi), fm = f(mid);
        if (fm == 0)
            return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Sign-change zeros of f on [a, b]; a same-sign dip in |f| triggers a finer local rescan.
inline std::vector<double> scan_zeros(const std::function<double(double)>& f, double a, double b, double step,
                                      double tol)
{
    std::vector<double> xs;
    int n = static_cast<int>(std::ceil((b - a) / step));
    std::vector<double> grid(static_cast<std::size_t>(n) + 1), val(grid.size());
    for (int i = 0; i <= n; ++i) {
        grid[static_cast<std::size_t>(i)] = std::min(b, a + i * step);
        val[static_cast<std::size_t>(i)] = f(grid[static_cast<std::size_t>(i)]);
    }
    auto scan_segment = [&](double lo, double hi, double flo, double fhi) {
        if (flo == 0)
            xs.push_back(lo);
        else if (flo * fhi < 0)
            xs.push_back(bisect(f, lo, hi, flo, tol));
    };
    for (int i = 0; i < n; ++i) {
        auto I = static_cast<std::size_t>(i);
        scan_segment(grid[I], grid[I + 1], val[I], val[I + 1]);
    }
    if (n >= 2 && val[static_cast<std::size_t>(n)] == 0)
        xs.push_back(grid[static_cast<std::size_t>(n)]);
    // look for pairs of zeros hiding inside one step
    for (int i = 1; i < n; ++i) {
        auto I = static_cast<std::size_t>(i);
        double l = val[I - 1], m = val[I], r = val[I + 1];
        if (l * m <= 0 || m * r <= 0)
            continue;
        if (std::abs(m) < std::abs(l) && std::abs(m) < std::abs(r)) {
            const int sub = 40;
            double h = (grid[I + 1] - grid[I - 1]) / sub;
            double xa = grid[I - 1], fa = l;
            for (int k = 1; k <= sub; ++k) {
                double xb = grid[I - 1] + k * h, fb = f(xb);
                if (fa * fb < 0)
                    xs.push_back(bisect(f, xa, xb, fa, tol));
                xa = xb;
                fa = fb;
            }
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(), [tol](double u, double v) { return std::abs(u - v) <= 2 * tol; }),
             xs.end());
    return xs;
}

inline double constraint_scale(int N, double e, double x, double y)
{
    // evaluates the recurrence with absolute values for a cancellation-free magnitude
    double pm = 1, p = std::abs(x) + std::abs(y) + std::abs(1 + 2 * e);
    if (N == 0)
        return pm;
    for (int j = 2; j <= N; ++j) {
        double a = j * std::abs(x) + std::abs(y) + std::abs(j * (j + 2 * e));
        double next = a * p + j * (j - 1.0) * std::abs(N - j + 1.0) * std::abs(x) * pm;
        pm = p;
        p = next;
    }
    return p;
}

inline bool half_integer(double eps) { return detail::as_nonneg_integer(2 * std::abs(eps)).has_value(); }

} // namespace detail

// Does P_N^(N,e)((2g)^2, Δ^2) vanish (relative to its term scale)?
inline bool is_juddian(int N, double e, const ModelParams& p, double rel_tol = 1e-9)
{
    if (N == 0)
        return false;
    double x = 4 * p.g * p.g, y = p.delta * p.delta;
    double v = constraint_value<double>(N, e, N, x, y);
    return std::abs(v) <= rel_tol * detail::constraint_scale(N, e, x, y);
}

inline double lower_spectral_bound_x(const ModelParams& p)
{
    return -std::sqrt(p.delta * p.delta + p.eps * p.eps);
}

// Zeros of the regularized G-function in [x_lo, x_hi] away from the points n ± eps.
inline std::vector<EigenvalueRecord> regular_spectrum(const ModelParams& p, double x_lo, double x_hi,
                                                      const ScanOptions& opt = {})
{
    p.validate();
    auto f = [&](double x) { return regularized_g(x, p, opt.series); };
    std::vector<EigenvalueRecord> out;
    for (double x : detail::scan_zeros(f, x_lo, x_hi, opt.scan_step, opt.refine_tol)) {
        auto ep = nearest_exceptional(x, p.eps);
        if (std::abs(x - ep.x0) < opt.exceptional_tol)
            continue;
        EigenvalueRecord r;
        r.x = x;
        r.lambda = x - p.g * p.g;
        out.push_back(r);
    }
    return out;
}

// g = 0: a†a + Δσ_z + εσ_x decouples; λ = n ± sqrt(Δ² + ε²).
inline std::vector<EigenvalueRecord> decoupled_spectrum(const ModelParams& p, double x_max)
{
    std::vector<EigenvalueRecord> out;
    double w = std::sqrt(p.delta * p.delta + p.eps * p.eps);
    for (int n = 0; n - w <= x_max; ++n)
        for (double s : {-w, w})
            if (n + s <= x_max) {
                EigenvalueRecord r;
                r.x = r.lambda = n + s;
                out.push_back(r);
            }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
    return out;
}

struct FullSpectrumOptions {
    ScanOptions scan{};
    bool confirm_with_oracle = false;
    double juddian_rel_tol = 1e-9;
};

// Regular, Juddian and non-Juddian exceptional eigenvalues with x = λ + g² in [lower bound, x_max].
inline std::vector<EigenvalueRecord> full_spectrum(const ModelParams& p, double x_max,
                                                   const FullSpectrumOptions& opt = {})
{
    if (p.g == 0) {
        if (!(p.delta > 0))
            throw std::invalid_argument("delta must be positive");
        return decoupled_spectrum(p, x_max);
    }
    p.validate();
    const double x_lo = lower_spectral_bound_x(p) - opt.scan.scan_step;
    const bool half = detail::half_integer(p.eps);
    auto f = [&](double x) { return regularized_g(x, p, opt.scan.series); };

    std::vector<EigenvalueRecord> recs;
    for (double x : detail::scan_zeros(f, x_lo, x_max, opt.scan.scan_step, opt.scan.refine_tol)) {
        EigenvalueRecord r;
        auto ep = nearest_exceptional(x, p.eps);
        if (std::abs(x - ep.x0) < opt.scan.exceptional_tol) {
            r.x = ep.x0;
            r.level_N = ep.N;
            r.branch = ep.e == p.eps ? Branch::plus : Branch::minus;
            bool jud = is_juddian(ep.N, ep.e, p, opt.juddian_rel_tol);
            r.kind = jud ? EigenKind::Juddian : EigenKind::NonJuddianExceptional;
            r.multiplicity = (jud && half) ? 2 : 1;
        } else {
            r.x = x;
        }
        r.lambda = r.x - p.g * p.g;
        recs.push_back(r);
    }

    // Juddian points: double zeros of the regularized G when 2eps is an integer, so the scan can miss them
    std::vector<EigenvalueRecord> jud;
    for (double e : {p.eps, -p.eps}) {
        for (int N = 1; N + e <= x_max; ++N) {
            double x0 = N + e;
            if (x0 < x_lo || !is_juddian(N, e, p, opt.juddian_rel_tol))
                continue;
            bool dup = false;
            for (const auto& j : jud)
                dup = dup || std::abs(j.x - x0) < opt.scan.exceptional_tol;
            if (dup)
                continue;
            EigenvalueRecord r;
            r.x = x0;
            r.lambda = x0 - p.g * p.g;
            r.kind = EigenKind::Juddian;
            r.multiplicity = half ? 2 : 1;
            r.level_N = N;
            r.branch = e == p.eps ? Branch::plus : Branch::minus;
            jud.push_back(r);
        }
        if (p.eps == 0)
            break;
    }
    for (const auto& j : jud) {
        recs.erase(std::remove_if(recs.begin(), recs.end(),
                                  [&](const EigenvalueRecord& r) { return std::abs(r.x - j.x) < opt.scan.exceptional_tol; }),
                   recs.end());
        recs.push_back(j);
    }
    std::sort(recs.begin(), recs.end(), [](const auto& a, const auto& b) { return a.x < b.x; });

    if (opt.confirm_with_oracle) {
        int total = 0;
        for (const auto& r : recs)
            total += r.multiplicity;
        auto cert = certified_eigenvalues(p, std::max(total + 2, 4), TruncationConfig{80, 1e-10});
        int idx = 0;
        for (auto& r : recs) {
            if (r.multiplicity == 2 && idx + 1 < static_cast<int>(cert.levels.size()))
                r.oracle_gap = cert.levels[static_cast<std::size_t>(idx + 1)] - cert.levels[static_cast<std::size_t>(idx)];
            idx += r.multiplicity;
        }
    }
    return recs;
}

// Lowest n_levels records (counting multiplicity), widening x_max as needed.
inline std::vector<EigenvalueRecord> lowest_levels(const ModelParams& p, int n_levels, double x_start,
                                                   const FullSpectrumOptions& opt = {})
{
    double x_max = std::max(x_start, n_levels / 2.0 + 1.0);
    for (int attempt = 0; attempt < 8; ++attempt) {
        auto recs = full_spectrum(p, x_max, opt);
        int total = 0;
        std::vector<EigenvalueRecord> out;
        for (const auto& r : recs) {
            if (total >= n_levels)
                break;
            out.push_back(r);
            total += r.multiplicity;
        }
        if (total >= n_levels)
            return out;
        x_max += std::max(2.0, n_levels / 2.0);
    }
    throw std::runtime_error("could not locate the requested number of levels");
}

struct SweepRow {
    double g = 0;
    int index = 0;
    EigenvalueRecord rec;
};

inline int thread_count()
{
    if (const char* t = std::getenv("THREADS")) {
        int v = std::atoi(t);
        if (v > 0)
            return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// For each g, the lowest n_levels eigenvalues; rows in grid order regardless of thread count.
inline std::vector<SweepRow> spectral_sweep(double delta, double eps, const SweepConfig& sweep, int n_levels,
                                            const SeriesConfig& series = {})
{
    sweep.validate();
    FullSpectrumOptions opt;
    opt.scan.scan_step = sweep.scan_step;
    opt.scan.refine_tol = sweep.refine_tol;
    opt.scan.series = series;
    std::vector<std::vector<SweepRow>> per(sweep.g_grid.size());
    auto work = [&](std::size_t i) {
        double g = sweep.g_grid[i];
        auto recs = lowest_levels(ModelParams{g, delta, eps}, n_levels, sweep.x_max, opt);
        int idx = 0;
        for (const auto& r : recs) {
            per[i].push_back({g, idx, r});
            idx += r.multiplicity;
        }
    };
    int nt = std::min<int>(thread_count(), static_cast<int>(sweep.g_grid.size()));
    if (nt <= 1) {
        for (std::size_t i = 0; i < sweep.g_grid.size(); ++i)
            work(i);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errs(static_cast<std::size_t>(nt));
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t i = static_cast<std::size_t>(t); i < sweep.g_grid.size(); i += static_cast<std::size_t>(nt))
                        work(i);
                } catch (...) {
                    errs[static_cast<std::size_t>(t)] = std::current_exception();
                }
            });
        for (auto& th : pool)
            th.join();
        for (auto& e : errs)
            if (e)
                std::rethrow_exception(e);
    }
    std::vector<SweepRow> rows;
    for (auto& v : per)
        rows.insert(rows.end(), v.begin(), v.end());
    return rows;
}

} // namespace aqrm
