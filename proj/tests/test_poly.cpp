#include "aqrm/poly.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace aqrm;

namespace {

const BivarPoly X = BivarPoly::x();
const BivarPoly Y = BivarPoly::y();

Rational q(long a, long b = 1) { return make_rational(a, b); }

std::vector<Rational> small_eps() { return {0, q(1, 2), q(-1, 2), 1, -1, q(1, 4), q(-1, 4)}; }

} // namespace

TEST(ConstraintPoly, BaseCases)
{
    EXPECT_EQ(constraint_poly(5, q(1, 3), 0), BivarPoly(1));
    for (const auto& e : small_eps())
        EXPECT_EQ(constraint_poly(4, e, 1), X + Y - BivarPoly(1 + 2 * e));
}

TEST(ConstraintPoly, SixZeroSecondStep)
{
    BivarPoly want = Rational(2) * X * X + Rational(3) * X * Y + Y * Y - Rational(16) * X - Rational(5) * Y + BivarPoly(4);
    BivarPoly got = constraint_poly(6, 0, 2);
    EXPECT_EQ(got, want);
    EXPECT_EQ(got.str(), "2*x^2 + 3*x*y + y^2 - 16*x - 5*y + 4");
}

TEST(ConstraintPoly, TotalDegreeGrowsByOne)
{
    auto seq = constraint_poly_sequence(7, q(1, 2), 7);
    for (int k = 0; k <= 7; ++k)
        EXPECT_EQ(seq[static_cast<std::size_t>(k)].total_degree(), k);
}

TEST(ConstraintPoly, FloatEvaluatorMatchesExact)
{
    BivarPoly p = constraint_poly(5, q(3, 10), 5);
    double v = constraint_value<double>(5, 0.3, 5, 1.7, 0.45);
    EXPECT_NEAR(v, p.eval(1.7, 0.45), 1e-10 * p.eval_abs(1.7, 0.45));
}

TEST(DeterminantForm, SmallCases)
{
    EXPECT_EQ(constraint_poly_det(0, q(1, 2)), BivarPoly(1));
    EXPECT_EQ(constraint_poly_det(1, q(2, 7)), X + Y - BivarPoly(1 + 2 * q(2, 7)));
    BivarPoly d = constraint_poly_det(3, q(1, 2));
    BivarPoly r = constraint_poly(3, q(1, 2), 3);
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j)
            EXPECT_EQ(d.coeff(i, j), r.coeff(i, j)) << i << "," << j;
}

TEST(DeterminantForm, AtXZeroIsProduct)
{
    for (const auto& e : {q(0), q(1, 2), q(3, 4)})
        for (int N = 1; N <= 6; ++N) {
            UniPoly got = constraint_poly_det(N, e).at_x(0);
            UniPoly want = UniPoly::constant(1);
            for (int i = 1; i <= N; ++i)
                want = want * UniPoly{-Rational(i) * (Rational(i) + 2 * e), Rational(1)};
            EXPECT_EQ(got, want) << "N=" << N;
        }
}

TEST(DeterminantForm, AgreesWithRecurrence)
{
    for (int N = 1; N <= 12; ++N)
        for (const auto& e : small_eps())
            EXPECT_EQ(constraint_poly(N, e, N), constraint_poly_det(N, e)) << "N=" << N << " eps=" << to_string(e);
}

TEST(DeterminantForm, CofactorOracle)
{
    for (int N = 1; N <= 6; ++N)
        for (const auto& e : {q(0), q(1, 3), q(-3, 2)}) {
            BivarPoly naive = oracles::cofactor_det(oracles::dense_constraint_matrix(N, e), BivarPoly(), BivarPoly(1));
            EXPECT_EQ(naive, constraint_poly_det(N, e)) << "N=" << N;
        }
}

TEST(DeterminantForm, SymmetricProductsGiveSameContinuant)
{
    for (int N = 1; N <= 9; ++N)
        for (const auto& e : {q(0), q(1, 2), q(5, 3)}) {
            auto m = constraint_matrix_symmetric_products(N, e);
            for (std::size_t i = 0; i < m.upper.size(); ++i)
                EXPECT_EQ(m.upper[i], BivarPoly(1));
            EXPECT_EQ(continuant(m, BivarPoly(1)), constraint_poly(N, e, N));
        }
}

TEST(DeterminantForm, EigenMatrixIntertwines)
{
    for (int N = 1; N <= 10; ++N)
        for (const auto& e : {q(0), q(1, 2), q(-2, 3)}) {
            RatMatrix E = eigen_matrix_E(N, N);
            RatMatrix D = rat_zero(N);
            for (int i = 0; i < N; ++i)
                D[i][i] = i + 1;
            RatMatrix A = tridiag_dense(shift_matrix_A(N, N));
            RatMatrix U = tridiag_dense(shift_matrix_U(e, N));
            RatMatrix C = tridiag_dense(shift_matrix_C(N, e));
            EXPECT_EQ(rat_mul(A, E), rat_mul(E, D)) << "N=" << N;
            EXPECT_EQ(rat_mul(U, E), rat_mul(E, C)) << "N=" << N;
        }
}

TEST(APoly, EllOne)
{
    for (int N = 0; N <= 6; ++N)
        EXPECT_EQ(a_poly(N, 1), Rational(N + 1) * X + Y);
    EXPECT_EQ(a_poly(3, 0), BivarPoly(1));
}

TEST(APoly, AtYZero)
{
    for (int N = 0; N <= 5; ++N)
        for (int ell = 0; ell <= 5; ++ell) {
            UniPoly got = a_poly(N, ell).at_y(0);
            Rational c = factorial(static_cast<unsigned>(N + ell)) / factorial(static_cast<unsigned>(N));
            EXPECT_EQ(got, UniPoly::monomial(c, static_cast<std::size_t>(ell)));
        }
}

TEST(APoly, NZeroIsConstraintPoly)
{
    for (int ell = 0; ell <= 7; ++ell)
        EXPECT_EQ(a_poly(0, ell), constraint_poly(ell, q(-ell, 2), ell));
}

TEST(APoly, IntegerCoefficients)
{
    for (int N = 0; N <= 6; ++N)
        for (int ell = 0; ell <= 5; ++ell)
            EXPECT_TRUE(a_poly(N, ell).has_integer_coefficients());
    for (int N = 1; N <= 8; ++N)
        for (int twoe = -4; twoe <= 4; ++twoe)
            EXPECT_TRUE(constraint_poly(N, q(twoe, 2), N).has_integer_coefficients());
}

TEST(APoly, PositiveOnGrid)
{
    for (auto [N, ell] : {std::pair{1, 2}, {2, 3}, {3, 4}, {0, 5}}) {
        BivarPoly a = a_poly(N, ell);
        double top = 4.0 * std::max(1, N) * (N + ell);
        int pts = 0;
        for (int i = 1; i <= 100; ++i)
            for (int j = 1; j <= 100; ++j) {
                double x = top * i / 100, y = top * j / 100;
                EXPECT_GT(a.eval(x, y), 0) << x << "," << y;
                ++pts;
            }
        EXPECT_GE(pts, 10000);
    }
}

TEST(APoly, EigenvaluesOfMPositive)
{
    // det(I y + M(x)) = A(x,y), so the spectrum of M(x) is minus the roots in y
    for (auto [N, ell] : {std::pair{1, 2}, {2, 3}, {3, 4}, {0, 5}})
        for (const Rational& x : {q(1, 10), q(1), q(5, 2), q(7)}) {
            UniPoly s = a_poly(N, ell).at_x(x);
            auto roots = isolate_real_roots(s);
            int total = 0;
            for (const auto& iv : roots) {
                EXPECT_LE(iv.hi, 0);
                total += iv.multiplicity_hint;
            }
            EXPECT_EQ(total, ell);
            EXPECT_NE(s(Rational(0)), 0);
        }
}

TEST(APoly, MatrixAtZeroNotSymmetrizable)
{
    // off-diagonal products (N+i)(N+i+1)(-i(l-i)) are negative
    EXPECT_THROW(tridiag_eigenvalues(a_matrix(2, 4, 0.0)), std::domain_error);
}

TEST(APoly, MatrixAtZeroSpectrumViaRoots)
{
    for (int N = 0; N <= 4; ++N) {
        UniPoly s = a_poly(N, 4).at_x(0);
        std::vector<std::pair<Rational, int>> roots;
        for (const auto& iv : isolate_real_roots(s))
            roots.push_back({refine_root(s, iv, q(1, 1 << 30)), iv.multiplicity_hint});
        ASSERT_EQ(roots.size(), 3u);
        std::vector<double> ev;
        for (auto& [r, m] : roots)
            for (int k = 0; k < m; ++k)
                ev.push_back(-r.get_d());
        std::sort(ev.begin(), ev.end());
        std::vector<double> want{0, 3, 3, 4};
        for (int i = 0; i < 4; ++i)
            EXPECT_NEAR(ev[i], want[i], 1e-8);
    }
}

TEST(Divisibility, Examples)
{
    auto r = verify_divisibility(5, 3);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.quotient, a_poly(5, 3));
    auto r2 = verify_divisibility(0, 2);
    EXPECT_EQ(r2.quotient, constraint_poly(2, -1, 2));
    auto r3 = verify_divisibility(1, 0);
    EXPECT_EQ(r3.quotient, BivarPoly(1));
}

TEST(Divisibility, AllSmall)
{
    for (int s = 0; s <= 10; ++s)
        for (int ell = 0; ell <= s; ++ell) {
            auto r = verify_divisibility(s - ell, ell);
            EXPECT_TRUE(r.exact);
            EXPECT_EQ(r.quotient, a_poly(s - ell, ell)) << s - ell << "," << ell;
        }
}

TEST(Divisibility, NonDivisibleIsDetected)
{
    // eps = 1/3 is not the half-integer pairing
    auto d = divide(constraint_poly(3, q(1, 3), 3), constraint_poly(2, q(1, 2), 2));
    EXPECT_FALSE(d.exact);
}

TEST(Divisibility, ProductReconstructs)
{
    for (auto [N, ell] : {std::pair{2, 2}, {3, 1}, {4, 3}})
        EXPECT_EQ(a_poly(N, ell) * constraint_poly(N, q(ell, 2), N), constraint_poly(N + ell, q(-ell, 2), N + ell));
}

TEST(PositiveSmallK, GridPositivity)
{
    for (int ell = 1; ell <= 5; ++ell)
        for (int k = 1; k <= ell; ++k) {
            BivarPoly p = constraint_poly(k, q(-ell, 2), k);
            for (int i = 1; i <= 100; ++i)
                for (int j = 1; j <= 100; ++j) {
                    double top = 4.0 * k * ell;
                    EXPECT_GT(p.eval(top * i / 100, top * j / 100), 0);
                }
        }
}

TEST(Interlacing, ConsecutiveSlices)
{
    for (int N = 2; N <= 8; ++N)
        for (const auto& e : {q(0), q(1, 3), q(1, 2), q(2)}) {
            auto slices = coefficient_slices(N, e);
            auto roots_of = [](const UniPoly& p) {
                std::vector<Rational> r;
                if (p.degree() < 1)
                    return r;
                for (const auto& iv : isolate_real_roots(p))
                    r.push_back(refine_root(p, iv, Rational(1) / Rational(Integer(1) << 70)));
                return r;
            };
            for (int j = 0; j + 1 < N; ++j) {
                auto a = roots_of(slices[static_cast<std::size_t>(j)]);
                auto b = roots_of(slices[static_cast<std::size_t>(j + 1)]);
                ASSERT_EQ(static_cast<int>(a.size()), N - j) << "N=" << N << " j=" << j;
                ASSERT_EQ(b.size() + 1, a.size());
                for (std::size_t i = 0; i < b.size(); ++i) {
                    EXPECT_LT(a[i], b[i]);
                    EXPECT_LT(b[i], a[i + 1]);
                }
            }
        }
}

TEST(QPoly, Basics)
{
    EXPECT_EQ(q_poly(4, q(1, 3), 0), BivarPoly(1));
    for (int N = 1; N <= 5; ++N)
        EXPECT_EQ(q_poly(N, q(1, 2), 1), X + Y - BivarPoly(Rational(2 * N - 1) + 1));
    EXPECT_EQ(q_poly(4, q(1, 2), 4), constraint_poly(4, q(1, 2), 4));
    for (int N = 1; N <= 8; ++N)
        for (const auto& e : small_eps())
            EXPECT_EQ(q_poly(N, e, N), constraint_poly(N, e, N));
    EXPECT_THROW(q_poly(3, 0, 4), std::invalid_argument);
}

TEST(Laguerre, Examples)
{
    EXPECT_TRUE(laguerre_check(0, q(1, 5)));
    EXPECT_EQ(constraint_poly(1, q(2, 5), 1).at_y(0), (UniPoly{-Rational(1) - q(4, 5), 1}));
    EXPECT_TRUE(laguerre_check(1, q(2, 5)));
    EXPECT_TRUE(laguerre_check(7, q(3, 4)));
}

TEST(Laguerre, RecurrenceMatchesExplicitSum)
{
    for (int k = 0; k <= 9; ++k)
        for (const auto& a : {q(0), q(3, 2), q(-1, 3), q(4)})
            EXPECT_EQ(laguerre(k, a), oracles::laguerre_explicit(k, a)) << k;
}

TEST(Laguerre, AllSmall)
{
    for (int k = 0; k <= 10; ++k)
        for (const auto& e : small_eps())
            EXPECT_TRUE(laguerre_check(k, e)) << k;
}

TEST(GeneratingIdentity, Examples)
{
    for (int ell = 0; ell <= 4; ++ell) {
        auto s = normalized_sequence(3 + ell, q(-ell, 2), 1);
        EXPECT_EQ(s[0], BivarPoly(1));
        EXPECT_EQ(s[1], (X + Y - BivarPoly(1 - ell)) * q(1, 2));
    }
    EXPECT_TRUE(generating_identity_check(3, 2, 10));
    for (int N = 0; N <= 4; ++N)
        for (int ell = 0; ell <= 3; ++ell)
            EXPECT_TRUE(generating_identity_check(N, ell, 9));
}

TEST(GeneratingIdentity, FailsForWrongPairing)
{
    auto lhs = normalized_sequence(4, q(-1, 2), 3);
    auto rhs = normalized_sequence(2, q(1, 2), 3); // l should be 2 for this N+l, so mixing l=1 weights fails
    BivarPoly s;
    for (int i = 0; i <= 3; ++i)
        s += binomial(1, 3 - i) * rhs[static_cast<std::size_t>(i)];
    EXPECT_FALSE(s == lhs[3]);
}

TEST(OdeRecurrence, Examples)
{
    EXPECT_TRUE(ode_coefficient_check(5, q(1, 3), 2));
    EXPECT_TRUE(ode_coefficient_check(4, q(-1, 2), 12));
    EXPECT_TRUE(ode_coefficient_check(0, 0, 8));
    EXPECT_THROW(ode_coefficient_check(3, 0, 1), std::invalid_argument);
}

TEST(OdeRecurrence, PerturbedSequenceLeavesResidual)
{
    auto Pt = normalized_sequence(3, q(1, 2), 6);
    Pt[3] += BivarPoly(q(1, 1000));
    bool any = false;
    for (int m = 0; m < 6; ++m)
        any = any || !ode_residual_coefficient(Pt, 3, q(1, 2), m).is_zero();
    EXPECT_TRUE(any);
}

TEST(CoefficientSlices, Structure)
{
    for (int N = 1; N <= 7; ++N) {
        auto e = q(2, 5);
        auto s = coefficient_slices(N, e);
        ASSERT_EQ(static_cast<int>(s.size()), N + 1);
        EXPECT_EQ(s[static_cast<std::size_t>(N)], UniPoly::constant(factorial(static_cast<unsigned>(N))));
        for (int i = 0; i <= N; ++i)
            EXPECT_EQ(s[static_cast<std::size_t>(i)].degree(), N - i);
        UniPoly prod = UniPoly::constant(1);
        for (int i = 1; i <= N; ++i)
            prod = prod * UniPoly{-Rational(i) * (Rational(i) + 2 * e), 1};
        EXPECT_EQ(s[0], prod);
    }
    auto s1 = coefficient_slices(1, q(1, 4));
    EXPECT_EQ(s1[0], (UniPoly{-q(3, 2), 1}));
    EXPECT_EQ(s1[1], UniPoly::constant(1));
}

TEST(Serialization, JsonRoundTrip)
{
    BivarPoly p = constraint_poly(4, q(-3, 7), 4);
    auto j = p.to_json();
    EXPECT_EQ(BivarPoly::from_json(j), p);
    auto terms = j["terms"];
    for (std::size_t i = 1; i < terms.size(); ++i) {
        auto a = std::pair{terms[i - 1][0].get<int>(), terms[i - 1][1].get<int>()};
        auto b = std::pair{terms[i][0].get<int>(), terms[i][1].get<int>()};
        EXPECT_LT(a, b);
    }
    EXPECT_EQ(constraint_poly(1, q(1, 2), 1).to_json().dump(), R"({"terms":[[0,0,"-2/1"],[0,1,"1/1"],[1,0,"1/1"]]})");
}

TEST(RationalHelpers, ParseAndFormat)
{
    EXPECT_EQ(parse_rational("3/10"), q(3, 10));
    EXPECT_EQ(parse_rational("0.3"), q(3, 10));
    EXPECT_EQ(parse_rational("-1.25e-1"), q(-1, 8));
    EXPECT_EQ(parse_rational("6/4"), q(3, 2));
    EXPECT_EQ(to_string(q(-6, 4)), "-3/2");
    EXPECT_EQ(to_string(Rational(5)), "5/1");
    EXPECT_THROW(parse_rational("1/0"), std::domain_error);
    EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}
