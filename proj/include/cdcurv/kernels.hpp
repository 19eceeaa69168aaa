#pragma once

// Diagonal (unitarily invariant) reproducing kernels K(z,w) = sum a(i)<z,w>^i
// on the unit ball, their weight sequences rho(alpha) = a(|alpha|)|alpha|!/alpha!,
// and the inverse-kernel binomial coefficients of (1 - <z,w>)^k.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cdcurv/errors.hpp"
#include "cdcurv/multi_index.hpp"
#include "cdcurv/point.hpp"

namespace cdcurv {

enum class KernelFamily { Power, LogPlus, Dirichlet1D, Tabulated };

struct GrowthBound {
    double C;  // a(i) <= C * (i+1)^p
    double p;
};

class DiagonalKernel {
public:
    // a(i) = (k)_i / i!  so  K = 1/(1-<z,w>)^k, k > 0
    static DiagonalKernel power(int m, double k);
    // a(i) = 1 + H_i     so  K = (1 - log(1-<z,w>)) / (1-<z,w>)
    static DiagonalKernel log_plus(int m);
    // a(i) = 1/(i+1), m = 1 only; 1/K is not a polynomial
    static DiagonalKernel dirichlet1d();
    static DiagonalKernel tabulated(int m, std::vector<double> coeffs,
                                    std::optional<GrowthBound> growth);

    int dim() const { return m_; }
    KernelFamily family() const { return family_; }
    double power_exponent() const { return k_; }

    double coeff(int i) const;                 // a(i)
    double weight(const MultiIndex& alpha) const;  // rho(alpha)

    // K(z, w) with the truncation tail kept below tol (closed forms for
    // Power and LogPlus).
    Complex eval(const Point& z, const Point& w, double tol = 1e-12) const;
    Complex eval_inner(Complex t, double tol = 1e-12) const;

    // 1/K is the polynomial (1-t)^k exactly when the family is Power with
    // integer exponent.
    bool inverse_is_polynomial() const;
    int inverse_degree() const;

    bool same_rule(const DiagonalKernel& other) const;

    nlohmann::json descriptor() const;
    static DiagonalKernel from_json(const nlohmann::json& j);

private:
    DiagonalKernel() = default;
    int m_ = 1;
    KernelFamily family_ = KernelFamily::Power;
    double k_ = 1.0;
    std::vector<double> coeffs_;
    std::optional<GrowthBound> growth_;
};

struct InverseKernelCoeffs {
    int k;
    std::vector<long long> b;  // b(i) = (-1)^i k! / (i!(k-i)!)
};

InverseKernelCoeffs inverse_coeffs(int k);

// Harmonic number H_i by compensated summation.
double harmonic(int i);

}  // namespace cdcurv
