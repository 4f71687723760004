#pragma once

#include "aqrm/oracle.hpp"
#include "aqrm/poly.hpp"
#include "aqrm/series.hpp"
#include "aqrm/spectrum.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace aqrm::cli {

using nlohmann::json;

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline std::string fmt(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline Rational parse_exact(const std::string& s, const char* what)
{
    try {
        return parse_rational(s);
    } catch (const std::exception&) {
        throw UsageError(std::string("cannot parse ") + what + ": '" + s + "'");
    }
}

inline double parse_real(const std::string& s, const char* what) { return to_double(parse_exact(s, what)); }

// "a:b:step" (inclusive) or a single value; grid points are computed exactly and then rounded.
inline std::vector<double> parse_range(const std::string& s, const char* what)
{
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ':');)
        parts.push_back(p);
    if (parts.size() == 1)
        return {parse_real(parts[0], what)};
    if (parts.size() != 3)
        throw UsageError(std::string(what) + " range must be a:b:step");
    Rational a = parse_exact(parts[0], what), b = parse_exact(parts[1], what), h = parse_exact(parts[2], what);
    if (h <= 0 || b < a)
        throw UsageError(std::string(what) + " range needs step > 0 and a <= b");
    std::vector<double> out;
    for (Rational v = a; v <= b; v += h)
        out.push_back(to_double(v));
    return out;
}

struct Options {
    std::string g = "1", delta = "1", eps = "0", x = "0", y = "0";
    int N = 1, ell = 1, k = -1, levels = 6, M = 80, max_N = 10, max_ell = 4;
    double tol = 1e-10, x_max = 8, scan_step = 1e-2;
    std::string out, format = "csv", config, branch = "plus", target = "all";
    bool det = false, exploratory = false, confirm_oracle = false, zeros = false;
};

struct Output {
    std::ostream* os = nullptr;
    std::unique_ptr<std::ofstream> file;
};

inline Branch parse_branch(const std::string& b)
{
    if (b == "plus" || b == "+")
        return Branch::plus;
    if (b == "minus" || b == "-")
        return Branch::minus;
    throw UsageError("branch must be plus or minus");
}

inline const char* branch_name(Branch b) { return b == Branch::plus ? "plus_eps" : "minus_eps"; }

inline json poly_json(const BivarPoly& p)
{
    json j = p.to_json();
    j["string"] = p.str();
    return j;
}

inline ModelParams model(const Options& o, double g)
{
    ModelParams p{g, parse_real(o.delta, "delta"), parse_real(o.eps, "eps")};
    if (!(p.delta > 0))
        throw UsageError("delta must be positive");
    if (g < 0)
        throw UsageError("g must be nonnegative");
    return p;
}

inline double single_g(const Options& o)
{
    auto gs = parse_range(o.g, "g");
    if (gs.size() != 1)
        throw UsageError("this subcommand takes a single --g value");
    if (!(gs[0] > 0))
        throw UsageError("g must be positive");
    return gs[0];
}

// ---- CSV / JSON writers ----

inline void write_records(std::ostream& os, const std::string& format, double g, const std::vector<EigenvalueRecord>& recs,
                          const std::vector<int>& indices)
{
    if (format == "json") {
        json arr = json::array();
        for (std::size_t i = 0; i < recs.size(); ++i) {
            const auto& r = recs[i];
            json j{{"g", g},
                   {"index", indices[i]},
                   {"lambda", r.lambda},
                   {"x", r.x},
                   {"kind", kind_name(r.kind)},
                   {"multiplicity", r.multiplicity},
                   {"level_N", r.level_N ? json(*r.level_N) : json(nullptr)},
                   {"branch", r.branch ? json(branch_name(*r.branch)) : json(nullptr)}};
            if (r.oracle_gap)
                j["oracle_gap"] = *r.oracle_gap;
            arr.push_back(j);
        }
        os << arr.dump(2) << "\n";
        return;
    }
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto& r = recs[i];
        os << fmt(g) << "," << indices[i] << "," << fmt(r.lambda) << "," << fmt(r.x) << "," << kind_name(r.kind) << ","
           << r.multiplicity << "," << (r.level_N ? std::to_string(*r.level_N) : "") << ","
           << (r.branch ? branch_name(*r.branch) : "") << "\n";
    }
}

inline const char* kCsvHeader = "g,index,lambda,x,kind,multiplicity,level_N,branch";

// ---- verification suite ----

struct CheckRow {
    std::string check;
    std::string params;
    bool ok = false;
    std::string detail;
};

inline std::vector<Rational> eps_set() { return {0, make_rational(1, 4), make_rational(1, 2), 1, make_rational(3, 2)}; }

// expected count of positive roots for eps > -1/2: N - k when k(k+2eps) <= y < (k+1)(k+1+2eps)
inline std::optional<int> expected_root_count(int N, const Rational& eps, const Rational& y)
{
    if (y < 0 || eps <= make_rational(-1, 2))
        return std::nullopt;
    for (int k = 0; k < N; ++k) {
        Rational lo = Rational(k) * (Rational(k) + 2 * eps), hi = Rational(k + 1) * (Rational(k + 1) + 2 * eps);
        if (lo <= y && y < hi)
            return N - k;
    }
    return 0;
}

inline void verify_divisibility_rows(int max_N, int max_ell, std::vector<CheckRow>& rows)
{
    for (int N = 0; N <= max_N; ++N)
        for (int ell = 0; ell <= max_ell; ++ell) {
            CheckRow r{"divisibility", "N=" + std::to_string(N) + " ell=" + std::to_string(ell), false, ""};
            try {
                auto d = verify_divisibility(N, ell);
                r.ok = d.exact && d.quotient == a_poly(N, ell) && d.quotient.has_integer_coefficients();
                r.detail = r.ok ? "quotient = A_N^ell" : "quotient differs from A_N^ell";
            } catch (const FalsifiedTheorem& e) {
                r.detail = e.what();
            }
            rows.push_back(r);
        }
}

inline void verify_laguerre_rows(std::vector<CheckRow>& rows)
{
    for (const Rational& e : {Rational(0), make_rational(1, 4), make_rational(3, 4), make_rational(-1, 4), Rational(2)})
        for (int k = 0; k <= 10; ++k)
            rows.push_back({"laguerre", "k=" + std::to_string(k) + " eps=" + to_string(e), laguerre_check(k, e), ""});
}

inline void verify_generating_rows(int max_N, int max_ell, std::vector<CheckRow>& rows)
{
    for (int N = 0; N <= std::min(max_N, 6); ++N)
        for (int ell = 0; ell <= max_ell; ++ell)
            rows.push_back({"generating", "N=" + std::to_string(N) + " ell=" + std::to_string(ell) + " k<=15",
                            generating_identity_check(N, ell, 15), ""});
}

inline void verify_ode_rows(int max_N, std::vector<CheckRow>& rows)
{
    for (int N = 0; N <= std::min(max_N, 6); ++N)
        for (const Rational& e : {Rational(0), make_rational(1, 2), make_rational(-1, 2), make_rational(1, 3), Rational(2)})
            rows.push_back({"ode", "N=" + std::to_string(N) + " eps=" + to_string(e) + " k<=15",
                            ode_coefficient_check(N, e, 15), ""});
}

inline void verify_t_identity_rows(std::vector<CheckRow>& rows)
{
    const double pts[][2] = {{0.9, 1.3}, {0.4, 0.7}, {1.2, 2.0}};
    for (int N = 0; N <= 5; ++N)
        for (int ell = 1; ell <= 4; ++ell)
            for (const auto& gd : pts) {
                ModelParams p{gd[0], gd[1], ell / 2.0};
                double a = t_function(N + ell, p, Branch::minus), b = t_function(N, p, Branch::plus);
                double rel = std::abs(a - b) / std::max(std::abs(a), std::abs(b));
                char buf[96];
                std::snprintf(buf, sizeof buf, "N=%d ell=%d g=%g delta=%g", N, ell, gd[0], gd[1]);
                rows.push_back({"t-identity", buf, rel <= 1e-8, "rel=" + fmt(rel)});
            }
}

inline void verify_g_symmetry_rows(std::vector<CheckRow>& rows)
{
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> ug(0.2, 1.8), ud(0.2, 2.5), ue(0.05, 1.3), ux(-0.9, 4.0);
    for (int i = 0; i < 10; ++i) {
        ModelParams p{ug(rng), ud(rng), ue(rng)};
        double x = ux(rng);
        ModelParams q = p;
        q.eps = -p.eps;
        double a = g_function(x, p), b = g_function(x, q);
        double rel = std::abs(a - b) / std::max(std::abs(a), 1e-300);
        char buf[128];
        std::snprintf(buf, sizeof buf, "x=%.6g g=%.6g delta=%.6g eps=%.6g", x, p.g, p.delta, p.eps);
        rows.push_back({"g-symmetry", buf, rel <= 1e-8, "rel=" + fmt(rel)});
    }
}

inline void verify_root_count_rows(int max_N, std::vector<CheckRow>& rows)
{
    for (int N = 1; N <= max_N; ++N)
        for (const Rational& e : eps_set()) {
            bool ok = true;
            std::string detail;
            for (int k = 0; k <= N; ++k) {
                Rational lo = Rational(k) * (Rational(k) + 2 * e);
                Rational hi = Rational(k + 1) * (Rational(k + 1) + 2 * e);
                std::vector<Rational> ys{lo, lo + make_rational(1, 1000), (lo + hi) / 2, hi - make_rational(1, 1000)};
                if (k == N)
                    ys = {lo, lo + make_rational(1, 1000), lo + 1, lo * 2 + 7};
                for (const auto& y : ys) {
                    int got = count_positive_roots(N, e, y);
                    int want = *expected_root_count(N, e, y);
                    if (got != want) {
                        ok = false;
                        detail = "y=" + to_string(y) + " got " + std::to_string(got) + " want " + std::to_string(want);
                    }
                }
            }
            rows.push_back({"root-counts", "N=" + std::to_string(N) + " eps=" + to_string(e), ok, detail});
        }
}

// ---- subcommands ----

inline int cmd_poly(const Options& o, std::ostream& os)
{
    Rational eps = parse_exact(o.eps, "eps");
    int k = o.k < 0 ? o.N : o.k;
    if (o.N < 0 || k < 0)
        throw UsageError("N and k must be nonnegative");
    BivarPoly p;
    bool ok = true;
    if (o.det) {
        if (k != o.N)
            throw UsageError("--det computes P_N^(N,eps) only; drop --k");
        p = constraint_poly_det(o.N, eps);
        ok = p == constraint_poly(o.N, eps, o.N);
    } else {
        p = constraint_poly(o.N, eps, k);
    }
    if (o.format == "json") {
        json j{{"N", o.N}, {"eps", to_string(eps)}, {"k", k}, {"method", o.det ? "determinant" : "recurrence"}};
        j["poly"] = poly_json(p);
        if (o.det)
            j["matches_recurrence"] = ok;
        os << j.dump(2) << "\n";
    } else {
        os << "i,j,coeff\n";
        const json terms = p.to_json()["terms"];
        for (const auto& t : terms)
            os << t[0].get<int>() << "," << t[1].get<int>() << "," << t[2].get<std::string>() << "\n";
    }
    if (!ok)
        std::cerr << "determinant and recurrence disagree\n";
    return ok ? 0 : 1;
}

inline int cmd_divide(const Options& o, std::ostream& os)
{
    if (o.N < 0 || o.ell < 0)
        throw UsageError("N and ell must be nonnegative");
    DivisibilityResult d;
    try {
        d = verify_divisibility(o.N, o.ell);
    } catch (const FalsifiedTheorem& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    bool match = d.quotient == a_poly(o.N, o.ell);
    if (o.format == "json") {
        json j{{"N", o.N}, {"ell", o.ell}, {"exact", d.exact}, {"matches_a_poly", match}};
        j["quotient"] = poly_json(d.quotient);
        os << j.dump(2) << "\n";
    } else {
        os << "N,ell,exact,matches_a_poly,quotient\n"
           << o.N << "," << o.ell << "," << d.exact << "," << match << ",\"" << d.quotient.str() << "\"\n";
    }
    return d.exact && match ? 0 : 1;
}

inline int cmd_count_roots(const Options& o, std::ostream& os)
{
    Rational eps = parse_exact(o.eps, "eps"), y = parse_exact(o.y, "y");
    if (o.N < 0)
        throw UsageError("N must be nonnegative");
    if (eps <= make_rational(-1, 2) && !o.exploratory)
        throw UsageError("eps <= -1/2 is outside the theorem range; pass --exploratory");
    int got = count_positive_roots(o.N, eps, y);
    int want = -1; // -1: no asserted count
    if (!o.exploratory)
        if (auto e = expected_root_count(o.N, eps, y))
            want = *e;
    const std::string want_s = want < 0 ? "" : std::to_string(want);
    bool ok = want < 0 || want == got;
    if (o.format == "json") {
        json j{{"N", o.N}, {"eps", to_string(eps)}, {"y", to_string(y)}, {"count", got}};
        j["expected"] = want_s.empty() ? json(nullptr) : json(want);
        j["exploratory"] = o.exploratory;
        os << j.dump(2) << "\n";
    } else {
        os << "N,eps,y,count,expected\n"
           << o.N << "," << to_string(eps) << "," << to_string(y) << "," << got << ","
           << want_s << "\n";
    }
    return ok ? 0 : 1;
}

inline int cmd_gfunc(const Options& o, std::ostream& os)
{
    ModelParams p = model(o, single_g(o));
    auto xs = parse_range(o.x, "x");
    json arr = json::array();
    if (o.format != "json")
        os << "x,G,G_reg\n";
    for (double x : xs) {
        double G;
        try {
            G = g_function(x, p);
        } catch (const PoleEncountered&) {
            G = std::numeric_limits<double>::quiet_NaN();
        }
        double Gr = regularized_g(x, p);
        if (o.format == "json")
            arr.push_back({{"x", x}, {"G", std::isnan(G) ? json(nullptr) : json(G)}, {"G_reg", Gr}});
        else
            os << fmt(x) << "," << fmt(G) << "," << fmt(Gr) << "\n";
    }
    if (o.format == "json")
        os << arr.dump(2) << "\n";
    return 0;
}

inline int cmd_tfunc(const Options& o, std::ostream& os)
{
    auto gs = parse_range(o.g, "g");
    Branch b = parse_branch(o.branch);
    double delta = parse_real(o.delta, "delta"), eps = parse_real(o.eps, "eps");
    if (o.N < 0)
        throw UsageError("N must be nonnegative");
    if (o.zeros) {
        if (gs.size() < 2 || !(gs.front() > 0))
            throw UsageError("--zeros needs a positive g range a:b:step");
        auto z = non_juddian_roots(o.N, delta, eps, b, gs.front(), gs.back(), gs[1] - gs[0], std::min(o.tol, 1e-10));
        if (o.format == "json") {
            os << json{{"N", o.N}, {"branch", branch_name(b)}, {"zeros", z}}.dump(2) << "\n";
        } else {
            os << "g_zero\n";
            for (double g : z)
                os << fmt(g) << "\n";
        }
        return 0;
    }
    json arr = json::array();
    if (o.format != "json")
        os << "g,T\n";
    for (double g : gs) {
        if (!(g > 0))
            throw UsageError("g must be positive");
        double T = t_function(o.N, model(o, g), b);
        if (o.format == "json")
            arr.push_back({{"g", g}, {"T", T}});
        else
            os << fmt(g) << "," << fmt(T) << "\n";
    }
    if (o.format == "json")
        os << arr.dump(2) << "\n";
    return 0;
}

inline int cmd_residue(const Options& o, std::ostream& os)
{
    ModelParams p = model(o, single_g(o));
    Branch b = parse_branch(o.branch);
    if (o.N < 0)
        throw UsageError("N must be nonnegative");
    double e = b == Branch::plus ? p.eps : -p.eps;
    double x0 = o.N + e;
    double dist = 1.0;
    for (int n = 0; n <= o.N + 2 * static_cast<int>(std::ceil(std::abs(p.eps))) + 2; ++n)
        for (double s : {p.eps, -p.eps}) {
            double d = std::abs(n + s - x0);
            if (d > 1e-9)
                dist = std::min(dist, d);
        }
    double h = std::min(0.05, dist / 8);
    auto G = [&](double x) { return g_function(x, p); };
    auto num = laurent_numeric<double>(G, x0, h);
    double A = 0, B = 0;
    std::string kind;
    if (is_double_pole_point(x0, p.eps)) {
        int ell = static_cast<int>(std::lround(2 * std::abs(p.eps)));
        int Nd = static_cast<int>(std::lround(x0 - std::abs(p.eps)));
        ModelParams q = p;
        q.eps = ell / 2.0;
        auto pc = double_pole_coefficients(Nd, ell, q);
        A = pc.A;
        B = pc.B;
        kind = "double";
    } else {
        B = residue_simple(o.N, p, b);
        kind = "simple";
    }
    if (o.format == "json") {
        os << json{{"x0", x0},          {"kind", kind},         {"A", A}, {"B", B}, {"A_numeric", num.A},
                   {"B_numeric", num.B}, {"h", h}}
                  .dump(2)
           << "\n";
    } else {
        os << "x0,kind,A,B,A_numeric,B_numeric\n"
           << fmt(x0) << "," << kind << "," << fmt(A) << "," << fmt(B) << "," << fmt(num.A) << "," << fmt(num.B) << "\n";
    }
    return 0;
}

inline int cmd_spectrum(const Options& o, std::ostream& os)
{
    auto gs = parse_range(o.g, "g");
    if (gs.size() != 1)
        throw UsageError("spectrum takes a single --g value; use sweep for ranges");
    ModelParams p = model(o, gs[0]);
    FullSpectrumOptions opt;
    opt.scan.scan_step = o.scan_step;
    opt.scan.refine_tol = o.tol;
    opt.confirm_with_oracle = o.confirm_oracle;
    auto recs = full_spectrum(p, o.x_max, opt);
    std::vector<int> idx;
    int i = 0;
    for (const auto& r : recs) {
        idx.push_back(i);
        i += r.multiplicity;
    }
    if (o.format != "json")
        os << kCsvHeader << "\n";
    write_records(os, o.format, p.g, recs, idx);
    return 0;
}

inline int cmd_sweep(const Options& o, std::ostream& os)
{
    SweepConfig sc;
    sc.g_grid = parse_range(o.g, "g");
    sc.x_max = o.x_max;
    sc.scan_step = o.scan_step;
    sc.refine_tol = o.tol;
    if (o.levels < 1)
        throw UsageError("levels must be positive");
    double delta = parse_real(o.delta, "delta"), eps = parse_real(o.eps, "eps");
    for (double g : sc.g_grid)
        if (g < 0)
            throw UsageError("g must be nonnegative");
    if (!(delta > 0))
        throw UsageError("delta must be positive");
    auto rows = spectral_sweep(delta, eps, sc, o.levels);
    if (o.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            std::ostringstream tmp;
            write_records(tmp, "json", r.g, {r.rec}, {r.index});
            arr.push_back(json::parse(tmp.str())[0]);
        }
        os << arr.dump(2) << "\n";
        return 0;
    }
    os << kCsvHeader << "\n";
    for (const auto& r : rows)
        write_records(os, "csv", r.g, {r.rec}, {r.index});
    return 0;
}

inline int cmd_oracle(const Options& o, std::ostream& os)
{
    auto gs = parse_range(o.g, "g");
    if (o.levels < 1)
        throw UsageError("levels must be positive");
    if (o.format != "json")
        os << kCsvHeader << "\n";
    json arr = json::array();
    for (double g : gs) {
        ModelParams p = model(o, g);
        auto cert = certified_eigenvalues(p, o.levels, TruncationConfig{std::max(8, o.M), o.tol});
        std::vector<EigenvalueRecord> recs;
        std::vector<int> idx;
        for (std::size_t i = 0; i < cert.levels.size(); ++i) {
            EigenvalueRecord r;
            r.lambda = cert.levels[i];
            r.x = r.lambda + g * g;
            r.kind = EigenKind::Oracle;
            recs.push_back(r);
            idx.push_back(static_cast<int>(i));
        }
        if (o.format == "json") {
            std::ostringstream tmp;
            write_records(tmp, "json", g, recs, idx);
            for (auto& j : json::parse(tmp.str())) {
                j["M"] = cert.M;
                j["drift"] = cert.drift;
                arr.push_back(j);
            }
        } else {
            write_records(os, "csv", g, recs, idx);
        }
    }
    if (o.format == "json")
        os << arr.dump(2) << "\n";
    return 0;
}

inline int cmd_verify(const Options& o, std::ostream& os)
{
    static const std::vector<std::string> targets{"all",        "divisibility", "laguerre",   "generating",
                                                  "ode",        "t-identity",   "g-symmetry", "root-counts"};
    if (std::find(targets.begin(), targets.end(), o.target) == targets.end())
        throw UsageError("unknown verify target '" + o.target + "'");
    if (o.max_N < 0 || o.max_ell < 0)
        throw UsageError("max-N and max-ell must be nonnegative");
    std::vector<CheckRow> rows;
    auto want = [&](const char* t) { return o.target == "all" || o.target == t; };
    if (want("divisibility"))
        verify_divisibility_rows(o.max_N, o.max_ell, rows);
    if (want("laguerre"))
        verify_laguerre_rows(rows);
    if (want("generating"))
        verify_generating_rows(o.max_N, o.max_ell, rows);
    if (want("ode"))
        verify_ode_rows(o.max_N, rows);
    if (want("t-identity"))
        verify_t_identity_rows(rows);
    if (want("g-symmetry"))
        verify_g_symmetry_rows(rows);
    if (want("root-counts"))
        verify_root_count_rows(o.max_N, rows);
    bool all_ok = true;
    for (const auto& r : rows)
        all_ok = all_ok && r.ok;
    if (o.format == "json") {
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back({{"check", r.check}, {"params", r.params}, {"ok", r.ok}, {"detail", r.detail}});
        os << json{{"ok", all_ok}, {"checks", arr}}.dump(2) << "\n";
    } else {
        os << "check,params,result,detail\n";
        for (const auto& r : rows)
            os << r.check << "," << r.params << "," << (r.ok ? "ok" : "FAIL") << "," << r.detail << "\n";
    }
    return all_ok ? 0 : 1;
}

// Appends "--key value" pairs from a JSON object so that config entries win over earlier flags.
inline void splice_config(std::vector<std::string>& args)
{
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(9);
    }
    if (path.empty())
        return;
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw UsageError(std::string("bad config JSON: ") + e.what());
    }
    if (!j.is_object())
        throw UsageError("config file must hold a JSON object");
    for (const auto& [key, val] : j.items()) {
        if (key == "config")
            continue;
        if (val.is_boolean()) {
            if (val.get<bool>())
                args.push_back("--" + key);
        } else if (val.is_string()) {
            args.push_back("--" + key);
            args.push_back(val.get<std::string>());
        } else if (val.is_number_integer()) {
            args.push_back("--" + key);
            args.push_back(std::to_string(val.get<long long>()));
        } else if (val.is_number()) {
            args.push_back("--" + key);
            args.push_back(fmt(val.get<double>()));
        } else {
            throw UsageError("config value for '" + key + "' must be a scalar");
        }
    }
}

inline int run(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    Options o;
    CLI::App app{"Asymmetric quantum Rabi model: constraint polynomials, G/T-functions and spectra", "aqrm"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    auto common = [&](CLI::App* s) {
        s->add_option("--g", o.g, "coupling g (value or a:b:step)");
        s->add_option("--delta", o.delta, "level splitting (p/q or decimal)");
        s->add_option("--eps", o.eps, "bias (p/q or decimal)");
        s->add_option("--N", o.N, "level index N");
        s->add_option("--ell", o.ell, "half-integer index ell");
        s->add_option("--tol", o.tol, "refinement / certification tolerance");
        s->add_option("--out", o.out, "output file (default stdout)");
        s->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        s->add_option("--config", o.config, "JSON file whose entries override flags");
    };

    std::vector<std::pair<CLI::App*, std::function<int(const Options&, std::ostream&)>>> subs;
    auto add = [&](const char* name, const char* help, std::function<int(const Options&, std::ostream&)> fn) {
        CLI::App* s = app.add_subcommand(name, help);
        common(s);
        subs.emplace_back(s, std::move(fn));
        return s;
    };

    add("poly", "constraint polynomial P_k^(N,eps)", cmd_poly)
        ->add_option("--k", o.k, "recurrence index (default N)");
    subs.back().first->add_flag("--det", o.det, "use the determinant form and compare with the recurrence");
    add("divide", "exact division P_{N+l}^(N+l,-l/2) / P_N^(N,l/2)", cmd_divide);
    auto* cr = add("count-roots", "positive roots in x of P_N^(N,eps)(x, y)", cmd_count_roots);
    cr->add_option("--y", o.y, "y value (p/q or decimal)");
    cr->add_flag("--exploratory", o.exploratory, "allow eps <= -1/2 without asserting a count");
    add("gfunc", "G and regularized G over an x grid", cmd_gfunc)->add_option("--x", o.x, "x value or a:b:step");
    auto* tf = add("tfunc", "T-function over a g grid", cmd_tfunc);
    tf->add_option("--branch", o.branch, "plus or minus");
    tf->add_flag("--zeros", o.zeros, "report zeros in g instead of values");
    add("residue", "pole coefficients of G at x = N ± eps", cmd_residue)->add_option("--branch", o.branch, "plus or minus");
    auto* sp = add("spectrum", "classified eigenvalues at one g", cmd_spectrum);
    sp->add_option("--x-max", o.x_max, "upper end of the x = lambda + g^2 window");
    sp->add_option("--scan-step", o.scan_step, "scan step in x");
    sp->add_flag("--confirm-oracle", o.confirm_oracle, "cross-check degenerate pairs on the truncated Hamiltonian");
    auto* sw = add("sweep", "lowest levels over a g grid", cmd_sweep);
    sw->add_option("--levels", o.levels, "levels per g");
    sw->add_option("--x-max", o.x_max, "initial x window");
    sw->add_option("--scan-step", o.scan_step, "scan step in x");
    auto* orc = add("oracle", "truncated-Hamiltonian eigenvalues", cmd_oracle);
    orc->add_option("--levels", o.levels, "number of levels");
    orc->add_option("--M", o.M, "initial boson truncation");
    auto* ver = add("verify", "identity suite", cmd_verify);
    ver->add_option("target", o.target, "all, divisibility, laguerre, generating, ode, t-identity, g-symmetry, root-counts");
    ver->add_option("--max-N", o.max_N, "largest N");
    ver->add_option("--max-ell", o.max_ell, "largest ell");

    try {
        splice_config(args);
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        Output dest;
        dest.os = &out;
        if (!o.out.empty()) {
            dest.file = std::make_unique<std::ofstream>(o.out);
            if (!*dest.file)
                throw UsageError("cannot open output file " + o.out);
            dest.os = dest.file.get();
        }
        for (auto& [s, fn] : subs)
            if (s->parsed())
                return fn(o, *dest.os);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return run(std::move(args), out, err);
}

} // namespace aqrm::cli
