#include "cdcurv/random_metric.hpp"

#include <random>
#include <vector>

namespace cdcurv {

namespace {

Eigen::MatrixXcd random_matrix(int rows, int cols, std::mt19937_64& rng, double scale) {
    std::normal_distribution<double> g(0.0, scale);
    Eigen::MatrixXcd A(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) A(i, j) = Complex(g(rng), g(rng));
    return A;
}

}  // namespace

MetricField random_polynomial_metric(int n, int m, int degree, std::uint64_t seed,
                                     double ridge) {
    if (degree < 0) throw ConfigError("metric polynomial degree must be >= 0");
    if (ridge <= 0.0) throw ConfigError("metric ridge must be positive");
    std::mt19937_64 rng(seed);
    const auto basis = enumerate_basis(m, degree);
    std::vector<Eigen::MatrixXcd> coeffs;
    coeffs.reserve(basis.size());
    for (size_t k = 0; k < basis.size(); ++k) coeffs.push_back(random_matrix(n, n, rng, 0.3));

    auto f = [n, basis, coeffs, ridge](const Point& w) {
        Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(n, n);
        for (size_t k = 0; k < basis.size(); ++k) F += w.monomial(basis[k]) * coeffs[k];
        return Eigen::MatrixXcd(F.adjoint() * F +
                                ridge * Eigen::MatrixXcd::Identity(n, n));
    };
    return MetricField::closed_form(n, m, std::move(f));
}

MatrixEval random_frame_change(int n, int m, std::uint64_t seed, double scale) {
    std::mt19937_64 rng(seed);
    std::vector<Eigen::MatrixXcd> coeffs;
    coeffs.reserve(static_cast<size_t>(m) + 1);
    for (int l = 0; l <= m; ++l) coeffs.push_back(random_matrix(n, n, rng, scale));
    return [n, m, coeffs](const Point& w) {
        Eigen::MatrixXcd phi = Eigen::MatrixXcd::Identity(n, n) + coeffs[0];
        for (int l = 0; l < m; ++l) phi += w[l] * coeffs[static_cast<size_t>(l) + 1];
        return phi;
    };
}

}  // namespace cdcurv
