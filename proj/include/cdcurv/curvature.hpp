#pragma once

// Hermitian metrics h(w) on holomorphic bundles over the ball, curvature
// matrices K^{i,j} = -dbar_j(h^{-1} d_i h), covariant derivatives, tensor and
// determinant bundles, frame changes, and the projection Hilbert-Schmidt
// identity.

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "cdcurv/kernels.hpp"
#include "cdcurv/point.hpp"
#include "cdcurv/wirtinger.hpp"

namespace cdcurv {

using SectionEval = std::function<Eigen::VectorXcd(const Point&)>;
using MatrixEval = std::function<Eigen::MatrixXcd(const Point&)>;

enum class MetricTag { ClosedForm, FrameGram, KernelLine };

class MetricField {
public:
    static MetricField closed_form(int n, int m, MatrixEval f);
    static MetricField constant(int m, Eigen::MatrixXcd h0);
    // h(w) = K(wbar, wbar), rank 1.
    static MetricField kernel_line(const DiagonalKernel& K);
    // h_{ij}(w) = <sigma_j(w), sigma_i(w)> over the ambient truncated space.
    static MetricField frame_gram_metric(int m, std::vector<SectionEval> sections);

    int rank() const { return n_; }
    int dim() const { return m_; }
    MetricTag tag() const { return tag_; }

    // Checked evaluation: Hermitian to 1e-13 rel, min eigenvalue above
    // 1e-12 * ||h||, else a definiteness error.
    Eigen::MatrixXcd eval(const Point& w) const;

private:
    MetricField(int n, int m, MetricTag tag, MatrixEval f)
        : n_(n), m_(m), tag_(tag), f_(std::move(f)) {}
    int n_;
    int m_;
    MetricTag tag_;
    MatrixEval f_;
};

// Pointwise tensor product h1 (x) h2, rank n1*n2.
MetricField tensor_metric(const MetricField& h1, const MetricField& h2);

// One Gram sample; FrameError on rank deficiency.
Eigen::MatrixXcd frame_gram(const std::vector<SectionEval>& sections, const Point& w);

struct CurvatureTensor {
    Point w;
    int m;
    int n;
    std::vector<Eigen::MatrixXcd> blocks;  // row-major (i, j)

    const Eigen::MatrixXcd& block(int i, int j) const {
        return blocks[static_cast<size_t>(i * m + j)];
    }
    // m x m scalar matrix of blockwise traces.
    Eigen::MatrixXcd trace_matrix() const;
    // Line bundles only: max discrepancy between the log form and the matrix
    // form, 0 for n > 1.
    double line_cross_check = 0.0;
};

CurvatureTensor curvature(const MetricField& h, const Point& w,
                          const WirtingerStencil& st = {});
Eigen::MatrixXcd curvature_block(const MetricField& h, int i, int j, const Point& w,
                                 const WirtingerStencil& st = {});

// K_{w^I wbar^J} for the (i,j) block: holomorphic steps add the commutator
// [h^{-1} d_l h, K], antiholomorphic steps are plain dbar_l; holomorphic
// steps are applied first. |I| + |J| <= 3.
Eigen::MatrixXcd covariant_derivative(const MetricField& h, int i, int j,
                                      const MultiIndex& I, const MultiIndex& J,
                                      const Point& w, const WirtingerStencil& st = {});

// -d_i dbar_j log det h, the determinant-bundle curvature.
Eigen::MatrixXcd det_curvature(const MetricField& h, const Point& w,
                               const WirtingerStencil& st = {});

// max over blocks (i,j) and words |I|+|J| <= max_word of
// || K_{h1(x)h2, w^I wbar^J} - (K1_{w^I wbar^J} (x) I + I (x) K2_{w^I wbar^J}) ||.
double tensor_additivity_residual(const MetricField& h1, const MetricField& h2,
                                  const Point& w, int max_word,
                                  const WirtingerStencil& st = {});

// || det_curvature(h) - blockwise trace of curvature(h) || / || trace ||.
double det_lemma_residual(const MetricField& h, const Point& w,
                          const WirtingerStencil& st = {});

struct FrameChangeReport {
    double conjugacy_residual;  // max_{i,j} ||K~^{i,j} - phi^{-1} K^{i,j} phi||
    double trace_residual;      // max_{i,j} |tr K~^{i,j} - tr K^{i,j}|
};

FrameChangeReport frame_change_check(const MetricField& h, const MatrixEval& phi,
                                     const Point& w, const WirtingerStencil& st = {});

struct ProjectionField {
    std::vector<SectionEval> sections;
    Eigen::MatrixXcd eval(const Point& w) const;  // Pi = Gamma h^{-1} Gamma*
};

struct HsIdentityReport {
    double hs;     // sum_i ||dPi/dw_i||_HS^2
    double trace;  // sum_i trace K^{i,i} of the Gram metric
};

HsIdentityReport projection_hs_identity(const std::vector<SectionEval>& sections,
                                        const Point& w, const WirtingerStencil& st = {});

}  // namespace cdcurv
