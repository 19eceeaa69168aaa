#pragma once

// Similarity and contractivity diagnostics: the weighted-shift ray criterion,
// curvature-ratio scans, plurisubharmonicity checks, the sup-ratio section
// condition, the non-contraction experiment, and the worked-example gallery.

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "cdcurv/curvature.hpp"
#include "cdcurv/kernels.hpp"
#include "cdcurv/point.hpp"
#include "cdcurv/shifts.hpp"

namespace cdcurv {

struct SimilarityVerdict {
    enum class Outcome { BoundedRatios, DivergentRay, Inconclusive };
    Outcome outcome;
    // BoundedRatios: empirical bounds over every scanned ray.
    double C1 = 0.0;
    double C2 = 0.0;
    // DivergentRay witness.
    int axis = -1;
    MultiIndex base;
    bool up = false;
    int l_exit = -1;
    // Scan metadata.
    int L;
    double low;
    double high;
    nlohmann::json to_json() const;
};

// Ray products ratio(l) = sqrt(rho1(a) rho2(a+l e_i) / (rho1(a+l e_i) rho2(a)))
// for l = 1..L from every base |a| <= base_degree along every axis. Exits are
// inclusive (ratio >= high or <= low); a divergent verdict additionally
// requires monotonicity over the last quartile of the scanned ray.
SimilarityVerdict shift_similarity(const DiagonalKernel& K1, const DiagonalKernel& K2,
                                   int L = 500, double low = 1e-2, double high = 1e2,
                                   int base_degree = 3);

struct RatioScan {
    int axis;
    std::vector<double> radii;
    std::vector<double> values;  // K_T^{i,i} / K_S^{i,i} at w = r e_i
};

// Near-boundary points use step (1 - r^2) * 1e-3, order 4.
RatioScan curvature_ratio_scan(const MetricField& h_T, const MetricField& h_S, int axis,
                               const std::vector<double>& radii);

struct PshPoint {
    Point w;
    double min_eigenvalue = 0.0;
    bool ok = false;
    std::string error;  // non-empty when evaluation failed
};

struct PshReport {
    std::vector<PshPoint> points;
    bool psh;        // every point evaluated and PSD within tolerance
    double sup_abs;  // sup |psi| over the grid (boundedness witness)
};

PshReport psh_check(const std::function<double(const Point&)>& psi, const GridSpec& grid,
                    const WirtingerStencil& st = {});

struct SupRatioReport {
    double sup;
    Point argmax;
    bool failure = false;  // <D t(w), zeta0> vanished at some grid point
    Point failure_point;
};

SupRatioReport section_sup_ratio(const DefectOperator& D, const ShiftTuple& S,
                                 const Eigen::VectorXcd& zeta0, const GridSpec& grid);

struct NoncontractionExperiment {
    Eigen::MatrixXcd X;
    Eigen::MatrixXcd Y;  // (I + X^H X)^{1/2}
    Eigen::MatrixXcd T;  // Y Mz* Y^{-1}
    double largest_singular_value;
    double cond_Y;
    double curvature_residual;  // max FD residual of the curvature-difference identity
    bool hypothesis_ok;         // 2|phi_j|^2 > m(m+1)|phi_j'|^2 on the check grid
};

// phi_rows[j][n] is the Taylor coefficient a_{jn} of phi_j; X e_n = sum_j a_{jn} e_j
// on the Power(1), m = 1 truncation of degree N.
NoncontractionExperiment noncontraction_experiment(
    const std::vector<std::vector<Complex>>& phi_rows, int N);

struct FbReport {
    int N;
    std::vector<double> radii;
    std::vector<double> det_scaled;    // det h_T * (1-r^2)^4, expected 2
    std::vector<double> trace_scaled;  // trace K_T * (1-r^2)^2, expected -4
    std::vector<double> trace_diag;    // same scaling for the diagonal tuple
    double max_trace_diff;             // max |trace K_T - trace K_T~|, unscaled
    std::string caveat;
};

FbReport reproduce_fb_example(int N, std::vector<double> radii = {});

struct DetInequalityReport {
    double max_residual;    // || det-curv(K^n h_E) - n det-curv(K) - det-curv(h_E) ||
    double max_eigenvalue;  // max over grid of the largest eigenvalue of det-curv(h_E)
    bool nsd;
};

DetInequalityReport det_curvature_inequality_check(const MetricField& h_E,
                                                   const DiagonalKernel& K,
                                                   const GridSpec& grid,
                                                   const WirtingerStencil& st = {});

}  // namespace cdcurv
