#pragma once

#include "aqrm/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace aqrm {

struct DenseSymMatrix {
    int dim = 0;
    std::vector<double> entries; // row-major

    explicit DenseSymMatrix(int n = 0) : dim(n), entries(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {}
    double& at(int i, int j) { return entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)]; }
    double at(int i, int j) const { return entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)]; }
    // writes (i,j) and mirrors it
    void set(int i, int j, double v)
    {
        at(i, j) = v;
        at(j, i) = v;
    }
    double max_asymmetry() const
    {
        double m = 0;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                m = std::max(m, std::abs(at(i, j) - at(j, i)));
        return m;
    }
    double norm_inf() const
    {
        double m = 0;
        for (int i = 0; i < dim; ++i) {
            double s = 0;
            for (int j = 0; j < dim; ++j)
                s += std::abs(at(i, j));
            m = std::max(m, s);
        }
        return m;
    }
};

struct TruncationConfig {
    int M = 80;
    double tol = 1e-10;

    void validate() const
    {
        if (M < 8)
            throw std::invalid_argument("truncation M must be at least 8");
        if (!(tol > 0))
            throw std::invalid_argument("tolerance must be positive");
    }
};

// a†a + Δσ_z + gσ_x(a + a†) + εσ_x on |n,↑> = 2n, |n,↓> = 2n+1, n = 0..M.
inline DenseSymMatrix truncated_hamiltonian(const ModelParams& p, const TruncationConfig& cfg)
{
    cfg.validate();
    const int M = cfg.M;
    DenseSymMatrix h(2 * (M + 1));
    for (int n = 0; n <= M; ++n) {
        h.set(2 * n, 2 * n, n + p.delta);
        h.set(2 * n + 1, 2 * n + 1, n - p.delta);
        h.set(2 * n, 2 * n + 1, p.eps);
        if (n < M) {
            double c = p.g * std::sqrt(static_cast<double>(n + 1));
            h.set(2 * n, 2 * (n + 1) + 1, c);
            h.set(2 * n + 1, 2 * (n + 1), c);
        }
    }
    return h;
}

class EigenNonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<double> jacobi_eigenvalues(DenseSymMatrix a, int max_sweeps = 100)
{
    const int n = a.dim;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0, scale = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i != j)
                    off += a.at(i, j) * a.at(i, j);
                scale += a.at(i, j) * a.at(i, j);
            }
        if (off <= 1e-30 * scale || off == 0) {
            std::vector<double> ev(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                ev[static_cast<std::size_t>(i)] = a.at(i, i);
            std::sort(ev.begin(), ev.end());
            return ev;
        }
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = a.at(p, q);
                if (apq == 0)
                    continue;
                double theta = (a.at(q, q) - a.at(p, p)) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
            }
    }
    throw EigenNonConvergence("Jacobi iteration did not converge");
}

// Householder reduction to tridiagonal form; returns (diag, offdiag) with offdiag[0] unused.
inline void householder_tridiagonalize(DenseSymMatrix a, std::vector<double>& d, std::vector<double>& e)
{
    const int n = a.dim;
    d.assign(static_cast<std::size_t>(n), 0.0);
    e.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = n - 1; i > 0; --i) {
        int l = i - 1;
        double h = 0, scale = 0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k)
                scale += std::abs(a.at(i, k));
            if (scale == 0) {
                e[static_cast<std::size_t>(i)] = a.at(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    a.at(i, k) /= scale;
                    h += a.at(i, k) * a.at(i, k);
                }
                double f = a.at(i, l);
                double gg = f >= 0 ? -std::sqrt(h) : std::sqrt(h);
                e[static_cast<std::size_t>(i)] = scale * gg;
                h -= f * gg;
                a.at(i, l) = f - gg;
                f = 0;
                for (int j = 0; j <= l; ++j) {
                    double s = 0;
                    for (int k = 0; k <= j; ++k)
                        s += a.at(j, k) * a.at(i, k);
                    for (int k = j + 1; k <= l; ++k)
                        s += a.at(k, j) * a.at(i, k);
                    e[static_cast<std::size_t>(j)] = s / h;
                    f += e[static_cast<std::size_t>(j)] * a.at(i, j);
                }
                double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    double fj = a.at(i, j);
                    double gj = e[static_cast<std::size_t>(j)] - hh * fj;
                    e[static_cast<std::size_t>(j)] = gj;
                    for (int k = 0; k <= j; ++k)
                        a.at(j, k) -= fj * e[static_cast<std::size_t>(k)] + gj * a.at(i, k);
                }
            }
        } else {
            e[static_cast<std::size_t>(i)] = a.at(i, l);
        }
        d[static_cast<std::size_t>(i)] = h;
    }
    for (int i = 0; i < n; ++i)
        d[static_cast<std::size_t>(i)] = a.at(i, i);
}

// Implicit QL with Wilkinson-type shifts on a symmetric tridiagonal matrix.
inline std::vector<double> tridiagonal_ql(std::vector<double> d, std::vector<double> e, int max_iter = 60)
{
    const int n = static_cast<int>(d.size());
    for (int i = 1; i < n; ++i)
        e[static_cast<std::size_t>(i - 1)] = e[static_cast<std::size_t>(i)];
    if (n > 0)
        e[static_cast<std::size_t>(n - 1)] = 0;
    auto D = [&](int i) -> double& { return d[static_cast<std::size_t>(i)]; };
    auto E = [&](int i) -> double& { return e[static_cast<std::size_t>(i)]; };
    for (int l = 0; l < n; ++l) {
        int iter = 0, m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(D(m)) + std::abs(D(m + 1));
                if (std::abs(E(m)) <= std::numeric_limits<double>::epsilon() * dd)
                    break;
            }
            if (m != l) {
                if (iter++ == max_iter)
                    throw EigenNonConvergence("implicit QL did not converge");
                double g = (D(l + 1) - D(l)) / (2.0 * E(l));
                double r = std::hypot(g, 1.0);
                g = D(m) - D(l) + E(l) / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
                double s = 1, c = 1, p = 0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * E(i), b = c * E(i);
                    r = std::hypot(f, g);
                    E(i + 1) = r;
                    if (r == 0) {
                        D(i + 1) -= p;
                        E(m) = 0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = D(i + 1) - p;
                    r = (D(i) - g) * s + 2.0 * c * b;
                    p = s * r;
                    D(i + 1) = g + p;
                    g = c * r - b;
                }
                if (r == 0 && i >= l)
                    continue;
                D(l) -= p;
                E(l) = g;
                E(m) = 0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

} // namespace detail

// Lowest `count` eigenvalues, ascending.
inline std::vector<double> eigenvalues(const DenseSymMatrix& m, int count, double tol = 1e-12)
{
    if (count < 0 || count > m.dim)
        throw std::invalid_argument("eigenvalue count out of range");
    (void)tol; // both solvers run to machine precision; tol documents the accuracy contract
    std::vector<double> ev;
    if (m.dim <= 64) {
        ev = detail::jacobi_eigenvalues(m);
    } else {
        std::vector<double> d, e;
        detail::householder_tridiagonalize(m, d, e);
        ev = detail::tridiagonal_ql(std::move(d), std::move(e));
    }
    ev.resize(static_cast<std::size_t>(count));
    return ev;
}

struct ConvergenceRow {
    int M = 0;
    std::vector<double> levels;
    std::vector<double> drift; // |λ_i(M) - λ_i(previous M)|, empty for the first row
};

inline std::vector<ConvergenceRow> convergence_study(const ModelParams& p, const std::vector<int>& M_list, int count)
{
    for (std::size_t i = 1; i < M_list.size(); ++i)
        if (M_list[i] <= M_list[i - 1])
            throw std::invalid_argument("M_list must be increasing");
    std::vector<ConvergenceRow> rows;
    for (int M : M_list) {
        TruncationConfig tc{M, 1e-12};
        ConvergenceRow r;
        r.M = M;
        r.levels = eigenvalues(truncated_hamiltonian(p, tc), count);
        if (!rows.empty())
            for (int i = 0; i < count; ++i)
                r.drift.push_back(std::abs(r.levels[static_cast<std::size_t>(i)] - rows.back().levels[static_cast<std::size_t>(i)]));
        rows.push_back(std::move(r));
    }
    return rows;
}

struct CertifiedSpectrum {
    std::vector<double> levels;
    int M = 0;
    double drift = 0;
};

// Raises M from cfg.M in steps of 40 until the lowest `count` levels move by less than cfg.tol.
inline CertifiedSpectrum certified_eigenvalues(const ModelParams& p, int count, TruncationConfig cfg = {},
                                               int M_cap = 600)
{
    cfg.validate();
    int M = std::max(cfg.M, count);
    auto prev = eigenvalues(truncated_hamiltonian(p, {M, cfg.tol}), count);
    while (M < M_cap) {
        int M2 = M + 40;
        auto next = eigenvalues(truncated_hamiltonian(p, {M2, cfg.tol}), count);
        double drift = 0;
        for (int i = 0; i < count; ++i)
            drift = std::max(drift, std::abs(next[static_cast<std::size_t>(i)] - prev[static_cast<std::size_t>(i)]));
        if (drift < cfg.tol)
            return {next, M2, drift};
        M = M2;
        prev = std::move(next);
    }
    throw EigenNonConvergence("truncation drift did not fall below tolerance before M cap");
}

} // namespace aqrm
