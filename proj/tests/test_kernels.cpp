#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cdcurv/kernels.hpp"

using namespace cdcurv;

TEST_CASE("power kernel coefficients are Pochhammer ratios") {
    auto K = DiagonalKernel::power(1, 2.0);
    for (int i = 0; i < 10; ++i) CHECK(K.coeff(i) == doctest::Approx(i + 1.0));
    auto K3 = DiagonalKernel::power(2, 3.0);
    CHECK(K3.coeff(3) == doctest::Approx(10.0));  // C(5,2)
    auto Kh = DiagonalKernel::power(1, 0.5);
    CHECK(Kh.coeff(1) == doctest::Approx(0.5));
    CHECK(Kh.coeff(2) == doctest::Approx(0.375));
    CHECK_THROWS_AS(DiagonalKernel::power(1, 0.0), ConfigError);
    CHECK_THROWS_AS(DiagonalKernel::power(0, 1.0), ConfigError);
}

TEST_CASE("logplus coefficients are shifted harmonic numbers") {
    auto K = DiagonalKernel::log_plus(2);
    CHECK(K.coeff(0) == doctest::Approx(1.0));
    CHECK(K.coeff(3) == doctest::Approx(1.0 + 1.0 + 0.5 + 1.0 / 3.0));
    CHECK(harmonic(0) == 0.0);
    CHECK(harmonic(11) > 3.0);
    CHECK(harmonic(10) < 3.0);
}

TEST_CASE("kernel evaluation uses closed forms with tail control") {
    auto P2 = DiagonalKernel::power(2, 2.0);
    CHECK(P2.eval_inner(Complex(0.0, 0.0)).real() == doctest::Approx(1.0));
    CHECK(P2.eval_inner(Complex(0.5, 0.0)).real() == doctest::Approx(4.0));

    auto L = DiagonalKernel::log_plus(1);
    const double r2 = 0.37;
    const double expect = (1.0 - std::log(1.0 - r2)) / (1.0 - r2);
    CHECK(L.eval_inner(Complex(r2, 0.0)).real() == doctest::Approx(expect));

    auto D = DiagonalKernel::dirichlet1d();
    // sum t^n/(n+1) = -log(1-t)/t
    const double t = 0.6;
    CHECK(D.eval_inner(Complex(t, 0.0)).real() ==
          doctest::Approx(-std::log(1.0 - t) / t).epsilon(1e-10));
    // halving tol moves the result by less than the prior tol
    const double a = D.eval_inner(Complex(t, 0.0), 1e-6).real();
    const double b = D.eval_inner(Complex(t, 0.0), 5e-7).real();
    CHECK(std::abs(a - b) <= 1e-6);

    CHECK_THROWS_AS(P2.eval_inner(Complex(1.0, 0.0)), DomainError);
    CHECK_THROWS_AS(P2.eval(Point({Complex(0.8, 0.0)}), Point({Complex(0.9, 0.0)})),
                    ConfigError);  // dimension mismatch
    CHECK_THROWS_AS(P2.eval(Point({{0.8, 0.0}, {0.62, 0.0}}), Point({{0.8, 0.0}, {0.62, 0.0}}),
                            1e-12),
                    DomainError);  // |<z,w>| >= 1
    CHECK(P2.eval(Point({{0.5, 0.0}, {0.5, 0.0}}), Point({{0.5, 0.0}, {0.5, 0.0}})).real() ==
          doctest::Approx(4.0));
}

TEST_CASE("weights follow rho(alpha) = a(|alpha|) |alpha|!/alpha!") {
    auto P1 = DiagonalKernel::power(1, 1.0);
    for (int n = 0; n < 8; ++n) CHECK(P1.weight(MultiIndex({n})) == doctest::Approx(1.0));

    auto P1b = DiagonalKernel::power(2, 1.0);
    CHECK(P1b.weight(MultiIndex({1, 1})) == doctest::Approx(2.0));

    auto L = DiagonalKernel::log_plus(2);
    CHECK(L.weight(MultiIndex({2, 1})) == doctest::Approx((1.0 + harmonic(3)) * 3.0));

    // Power(k): rho(alpha+e_i)/rho(alpha) vs direct factorial evaluation
    auto P3 = DiagonalKernel::power(2, 3.0);
    for (const MultiIndex& a : enumerate_basis(2, 20)) {
        const MultiIndex b = a.plus(0);
        const double direct = P3.coeff(b.degree()) * static_cast<double>(multinomial(b)) /
                              (P3.coeff(a.degree()) * static_cast<double>(multinomial(a)));
        CHECK(P3.weight(b) / P3.weight(a) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("inverse kernel coefficients are signed binomials") {
    auto b1 = inverse_coeffs(1);
    CHECK(b1.b == std::vector<long long>{1, -1});
    auto b3 = inverse_coeffs(3);
    CHECK(b3.b == std::vector<long long>{1, -3, 3, -1});
    // b(0) = 1 and sum b(i) = 0
    for (int k = 1; k <= 12; ++k) {
        auto c = inverse_coeffs(k);
        long long sum = 0;
        for (long long v : c.b) sum += v;
        CHECK(c.b[0] == 1);
        CHECK(sum == 0);
    }
    CHECK_THROWS_AS(inverse_coeffs(0), ConfigError);
    CHECK_THROWS_AS(inverse_coeffs(61), CapacityError);

    // convolution with Power(3) coefficients vanishes: (1-t)^3 (1-t)^{-3} = 1
    auto P3 = DiagonalKernel::power(1, 3.0);
    for (int s = 1; s <= 10; ++s) {
        double conv = 0.0;
        for (int i = 0; i <= std::min(s, 3); ++i)
            conv += static_cast<double>(b3.b[static_cast<size_t>(i)]) * P3.coeff(s - i);
        CHECK(std::abs(conv) < 1e-10);
    }
}

TEST_CASE("tabulated kernels demand growth metadata for tails") {
    auto T = DiagonalKernel::tabulated(1, {1.0, 0.5, 0.25}, std::nullopt);
    CHECK(T.coeff(2) == doctest::Approx(0.25));
    CHECK_THROWS_AS(T.coeff(3), ConfigError);
    CHECK_THROWS_AS(T.eval_inner(Complex(0.1, 0.0)), ConfigError);

    std::vector<double> geo;
    for (int i = 0; i < 40; ++i) geo.push_back(std::pow(0.5, i));
    auto Tg = DiagonalKernel::tabulated(1, geo, GrowthBound{1.0, 0.0});
    // geometric table: value close to the first terms; tail demand satisfied
    CHECK(Tg.eval_inner(Complex(0.05, 0.0), 1e-6).real() ==
          doctest::Approx(1.0 / (1.0 - 0.025)).epsilon(1e-4));
    // too-tight tolerance for the declared growth: refuse rather than guess
    CHECK_THROWS_AS(Tg.eval_inner(Complex(0.5, 0.0), 1e-12), ConfigError);

    CHECK_THROWS_AS(DiagonalKernel::tabulated(1, {}, std::nullopt), ConfigError);
    CHECK_THROWS_AS(DiagonalKernel::tabulated(1, {1.0, -0.5}, std::nullopt), ConfigError);
}

TEST_CASE("descriptors round-trip through JSON") {
    auto check_roundtrip = [](const DiagonalKernel& K) {
        auto K2 = DiagonalKernel::from_json(K.descriptor());
        CHECK(K.same_rule(K2));
    };
    check_roundtrip(DiagonalKernel::power(2, 2.5));
    check_roundtrip(DiagonalKernel::log_plus(3));
    check_roundtrip(DiagonalKernel::dirichlet1d());
    check_roundtrip(DiagonalKernel::tabulated(2, {1.0, 2.0}, GrowthBound{2.0, 1.0}));

    CHECK_FALSE(DiagonalKernel::power(1, 1.0).same_rule(DiagonalKernel::power(1, 2.0)));
    CHECK_THROWS_AS(DiagonalKernel::from_json({{"family", "nope"}, {"m", 1}}), ConfigError);
    CHECK_THROWS_AS(DiagonalKernel::from_json({{"family", "dirichlet1d"}, {"m", 2}}),
                    ConfigError);
}

TEST_CASE("polynomial inverse detection") {
    CHECK(DiagonalKernel::power(1, 2.0).inverse_is_polynomial());
    CHECK(DiagonalKernel::power(1, 2.0).inverse_degree() == 2);
    CHECK_FALSE(DiagonalKernel::power(1, 2.5).inverse_is_polynomial());
    CHECK_FALSE(DiagonalKernel::log_plus(1).inverse_is_polynomial());
    CHECK_FALSE(DiagonalKernel::dirichlet1d().inverse_is_polynomial());
    CHECK_THROWS_AS(DiagonalKernel::dirichlet1d().inverse_degree(), ConfigError);
}

TEST_CASE("reproducing identity on the truncated expansion") {
    auto K = DiagonalKernel::power(2, 2.0);
    Point w({{0.3, 0.2}, {-0.25, 0.1}});
    double partial = 0.0;
    for (const MultiIndex& a : enumerate_basis(2, 30))
        partial += K.weight(a) * std::norm(w.monomial(a));
    CHECK(partial == doctest::Approx(K.eval_inner(Complex(w.norm_sq(), 0.0)).real())
                         .epsilon(1e-10));
}
