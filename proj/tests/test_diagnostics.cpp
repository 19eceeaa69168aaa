#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cdcurv/diagnostics.hpp"
#include "cdcurv/random_metric.hpp"

using namespace cdcurv;
using Outcome = SimilarityVerdict::Outcome;

TEST_CASE("similarity: a kernel against itself has ratio exactly 1") {
    auto K = DiagonalKernel::power(2, 2.0);
    auto v = shift_similarity(K, K, 100, 0.5, 10.0);
    CHECK(v.outcome == Outcome::BoundedRatios);
    CHECK(v.C1 == 1.0);
    CHECK(v.C2 == 1.0);
}

TEST_CASE("similarity: coefficient scaling cancels exactly") {
    // a2 = 2 * a1 entrywise: every ray ratio is identically 1
    std::vector<double> table;
    for (int i = 0; i < 30; ++i) table.push_back(2.0 * (i + 1.0));
    auto K1 = DiagonalKernel::power(1, 2.0);
    auto K2 = DiagonalKernel::tabulated(1, table, std::nullopt);
    auto v = shift_similarity(K1, K2, 20, 0.5, 10.0, 1);
    CHECK(v.outcome == Outcome::BoundedRatios);
    CHECK(v.C1 == 1.0);
    CHECK(v.C2 == 1.0);
}

TEST_CASE("similarity: Power(1) vs Power(2) diverges upward, swap goes down") {
    auto P1 = DiagonalKernel::power(1, 1.0);
    auto P2 = DiagonalKernel::power(1, 2.0);
    // ratio(l) = sqrt(l+1) from alpha = 0: first >= 10 at l = 99
    auto up = shift_similarity(P1, P2, 500, 0.5, 10.0);
    CHECK(up.outcome == Outcome::DivergentRay);
    CHECK(up.up);
    CHECK(up.l_exit == 99);
    CHECK(up.base.degree() == 0);
    // swapped: ratio(l) = 1/sqrt(l+1), hits 0.5 inclusively at l = 3
    auto down = shift_similarity(P2, P1, 500, 0.5, 10.0);
    CHECK(down.outcome == Outcome::DivergentRay);
    CHECK_FALSE(down.up);
    CHECK(down.l_exit == 3);
}

TEST_CASE("similarity: LogPlus vs Power(1) exits below 0.5 at l = 11") {
    // ratio(l) = 1/sqrt(1 + H_l) <= 0.5 iff H_l >= 3, first at l = 11
    auto v = shift_similarity(DiagonalKernel::log_plus(1), DiagonalKernel::power(1, 1.0),
                              500, 0.5, 10.0);
    CHECK(v.outcome == Outcome::DivergentRay);
    CHECK_FALSE(v.up);
    CHECK(v.l_exit == 11);
}

TEST_CASE("similarity: oscillating excursions are inconclusive, not divergent") {
    std::vector<double> table;
    for (int i = 0; i < 21; ++i) table.push_back(i % 2 == 0 ? 1.0 : 2000.0);
    auto v = shift_similarity(DiagonalKernel::power(1, 1.0),
                              DiagonalKernel::tabulated(1, table, std::nullopt),
                              20, 0.5, 10.0, 0);
    CHECK(v.outcome == Outcome::Inconclusive);
}

TEST_CASE("similarity: config validation") {
    auto P1 = DiagonalKernel::power(1, 1.0);
    CHECK_THROWS_AS(shift_similarity(P1, DiagonalKernel::power(2, 1.0)), ConfigError);
    CHECK_THROWS_AS(shift_similarity(P1, P1, 0), ConfigError);
    CHECK_THROWS_AS(shift_similarity(P1, P1, 10, 2.0, 1.0), ConfigError);
}

TEST_CASE("curvature ratio scan: Power(4)/Power(2) is constantly 2") {
    auto hT = MetricField::kernel_line(DiagonalKernel::power(1, 4.0));
    auto hS = MetricField::kernel_line(DiagonalKernel::power(1, 2.0));
    auto scan = curvature_ratio_scan(hT, hS, 0, {0.0, 0.3, 0.9});
    REQUIRE(scan.values.size() == 3);
    for (double v : scan.values) CHECK(v == doctest::Approx(2.0).epsilon(1e-6));
    CHECK_THROWS_AS(curvature_ratio_scan(hT, hS, 1, {0.1}), ConfigError);
    CHECK_THROWS_AS(curvature_ratio_scan(hT, hS, 0, {1.0}), DomainError);
}

TEST_CASE("psh check accepts |w|^2 and rejects -|w|^2") {
    auto grid = GridSpec::lattice(1, 9, 0.8);
    WirtingerStencil st;
    st.step = 1e-3;
    st.order = 4;

    auto good = psh_check([](const Point& p) { return p.norm_sq(); }, grid, st);
    CHECK(good.psh);
    CHECK(good.sup_abs == doctest::Approx(0.64).epsilon(1e-10));
    for (const auto& pt : good.points) CHECK(pt.min_eigenvalue == doctest::Approx(1.0));

    auto bad = psh_check([](const Point& p) { return -p.norm_sq(); }, grid, st);
    CHECK_FALSE(bad.psh);
    CHECK(bad.points.front().min_eigenvalue == doctest::Approx(-1.0));
}

TEST_CASE("section sup ratio") {
    auto S = ShiftTuple::build(DiagonalKernel::power(1, 1.0), 40);
    auto D = defect_operator(S, 1);
    auto grid = GridSpec::radial_ray({Complex(1.0, 0.0)}, {0.0, 0.3, 0.6});

    // D t(w) = e_0 for the Hardy shift, so the ratio is identically 1
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Unit(S.size(), 0);
    auto rep = section_sup_ratio(D, S, e0, grid);
    CHECK_FALSE(rep.failure);
    CHECK(rep.sup == doctest::Approx(1.0).epsilon(1e-12));

    // not a unit vector / outside the range of D
    CHECK_THROWS_AS(section_sup_ratio(D, S, 2.0 * e0, grid), ConfigError);
    CHECK_THROWS_AS(section_sup_ratio(D, S, Eigen::VectorXcd::Unit(S.size(), 1), grid),
                    ConfigError);

    // fabricated defect supported on e_1: <D t, e_1> vanishes at w = 0
    DefectOperator D1;
    D1.k = 1;
    D1.D2 = Eigen::MatrixXcd::Zero(S.size(), S.size());
    D1.D2(1, 1) = 1.0;
    D1.D = D1.D2;
    D1.eigenvalues = Eigen::VectorXd::Zero(S.size());
    D1.eigenvalues(1) = 1.0;
    auto rep1 = section_sup_ratio(D1, S, Eigen::VectorXcd::Unit(S.size(), 1), grid);
    CHECK(rep1.failure);
    CHECK(rep1.failure_point.norm() == 0.0);
    CHECK(rep1.sup == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("noncontraction experiment with constant rows") {
    // four rows phi_j = 1: Y = diag(sqrt(5), 1, ...), sv(T) = sqrt(5)
    std::vector<std::vector<Complex>> rows(4, std::vector<Complex>{Complex(1.0, 0.0)});
    auto exp = noncontraction_experiment(rows, 40);
    CHECK(exp.hypothesis_ok);
    CHECK(exp.largest_singular_value == doctest::Approx(std::sqrt(5.0)).epsilon(1e-10));
    CHECK(exp.cond_Y == doctest::Approx(std::sqrt(5.0)).epsilon(1e-10));
    CHECK(exp.curvature_residual < 1e-4);

    // all-zero rows: X = 0, T is the plain backward shift
    auto trivial = noncontraction_experiment({{Complex(0.0, 0.0)}}, 40);
    CHECK(trivial.hypothesis_ok);
    CHECK(trivial.largest_singular_value == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(noncontraction_experiment({}, 10), ConfigError);
}

TEST_CASE("FB example reproduces the scaled invariants") {
    auto rep = reproduce_fb_example(30, {0.0, 0.25, 0.5});
    REQUIRE(rep.det_scaled.size() == 3);
    for (double d : rep.det_scaled) CHECK(d == doctest::Approx(2.0).epsilon(1e-6));
    for (double t : rep.trace_scaled) CHECK(t == doctest::Approx(-4.0).epsilon(1e-4));
    for (double t : rep.trace_diag) CHECK(t == doctest::Approx(-4.0).epsilon(1e-4));
    CHECK(rep.max_trace_diff < 1e-6);
    CHECK_FALSE(rep.caveat.empty());
    CHECK_THROWS_AS(reproduce_fb_example(10), ConfigError);
}

TEST_CASE("det-curvature inequality bookkeeping") {
    WirtingerStencil st;
    st.step = 1e-3;
    st.order = 4;
    auto grid = GridSpec::radial_ray({Complex(1.0, 0.0)}, {0.0, 0.2, 0.4});
    auto K = DiagonalKernel::power(1, 1.0);

    // constant h_E: det-curv(K^n h_E) = n det-curv(K) exactly, C = 0 is nsd
    auto flat = MetricField::constant(1, Eigen::MatrixXcd::Identity(2, 2));
    auto rep = det_curvature_inequality_check(flat, K, grid, st);
    CHECK(rep.max_residual < 1e-7);
    CHECK(rep.nsd);
    CHECK(std::abs(rep.max_eigenvalue) < 1e-9);

    // random Gram metric: the additivity identity still holds pointwise
    auto hE = random_polynomial_metric(2, 1, 1, 5);
    auto rep2 = det_curvature_inequality_check(hE, K, grid, st);
    CHECK(rep2.max_residual < 1e-6);

    CHECK_THROWS_AS(
        det_curvature_inequality_check(flat, DiagonalKernel::power(2, 1.0), grid, st),
        ConfigError);
}
