#include "cdcurv/curvature.hpp"

#include <cmath>
#include <utility>

namespace cdcurv {

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    Eigen::MatrixXcd out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

// h^{-1} d_l h by Hermitian solve (no explicit inverse).
Eigen::MatrixXcd connection(const MetricField& h, int l, const Point& p,
                            const WirtingerStencil& st) {
    auto hf = [&h](const Point& q) { return h.eval(q); };
    const Eigen::MatrixXcd dh = d_holo(hf, p, l, st);
    return h.eval(p).ldlt().solve(dh);
}

Complex log_det(const MetricField& h, const Point& p) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.eval(p),
                                                       Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        s += std::log(es.eigenvalues()(i));
    return Complex(s, 0.0);
}

}  // namespace

MetricField MetricField::closed_form(int n, int m, MatrixEval f) {
    if (n < 1 || m < 1) throw ConfigError("metric rank and dimension must be >= 1");
    if (!f) throw ConfigError("metric evaluator must be callable");
    return MetricField(n, m, MetricTag::ClosedForm, std::move(f));
}

MetricField MetricField::constant(int m, Eigen::MatrixXcd h0) {
    const int n = static_cast<int>(h0.rows());
    if (h0.rows() != h0.cols()) throw ConfigError("constant metric must be square");
    return closed_form(n, m, [h0 = std::move(h0)](const Point&) { return h0; });
}

MetricField MetricField::kernel_line(const DiagonalKernel& K) {
    auto f = [K](const Point& w) {
        Eigen::MatrixXcd h(1, 1);
        // K(wbar, wbar) = sum a(s) |w|^{2s}, real and positive on the ball
        h(0, 0) = K.eval_inner(Complex(w.norm_sq(), 0.0));
        return h;
    };
    return MetricField(1, K.dim(), MetricTag::KernelLine, std::move(f));
}

MetricField MetricField::frame_gram_metric(int m, std::vector<SectionEval> sections) {
    const int n = static_cast<int>(sections.size());
    if (n < 1) throw ConfigError("frame must contain at least one section");
    auto f = [sections = std::move(sections)](const Point& w) {
        const int n = static_cast<int>(sections.size());
        Eigen::MatrixXcd gamma;
        for (int j = 0; j < n; ++j) {
            Eigen::VectorXcd s = sections[static_cast<size_t>(j)](w);
            if (j == 0) gamma.resize(s.size(), n);
            if (s.size() != gamma.rows())
                throw ConfigError("frame sections live in different ambient spaces");
            gamma.col(j) = s;
        }
        return Eigen::MatrixXcd(gamma.adjoint() * gamma);
    };
    return MetricField(n, m, MetricTag::FrameGram, std::move(f));
}

Eigen::MatrixXcd MetricField::eval(const Point& w) const {
    if (w.dim() != m_) throw ConfigError("point dimension does not match the metric");
    Eigen::MatrixXcd h = f_(w);
    if (h.rows() != n_ || h.cols() != n_)
        throw EvaluationError("metric evaluator returned a wrong-sized matrix");
    if (!h.allFinite()) throw EvaluationError("metric evaluated to a non-finite value");
    const double scale = std::max(1.0, h.norm());
    if ((h - h.adjoint()).norm() > 1e-13 * scale)
        throw DefinitenessError("metric is not Hermitian to tolerance");
    h = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 1e-12 * scale)
        throw DefinitenessError("metric is not positive-definite at the evaluation point");
    return h;
}

MetricField tensor_metric(const MetricField& h1, const MetricField& h2) {
    if (h1.dim() != h2.dim())
        throw ConfigError("tensor factors must share the ball dimension");
    auto f = [h1, h2](const Point& w) { return kron(h1.eval(w), h2.eval(w)); };
    return MetricField::closed_form(h1.rank() * h2.rank(), h1.dim(), std::move(f));
}

Eigen::MatrixXcd frame_gram(const std::vector<SectionEval>& sections, const Point& w) {
    MetricField h = MetricField::frame_gram_metric(w.dim(), sections);
    Eigen::MatrixXcd g;
    try {
        g = h.eval(w);
    } catch (const DefinitenessError& e) {
        throw FrameError(std::string("frame is rank-deficient at the sample point: ") + e.what());
    }
    return g;
}

Eigen::MatrixXcd curvature_block(const MetricField& h, int i, int j, const Point& w,
                                 const WirtingerStencil& st) {
    if (i < 0 || i >= h.dim() || j < 0 || j >= h.dim())
        throw ConfigError("curvature block index out of range");
    auto Gi = [&h, i, &st](const Point& p) { return connection(h, i, p, st); };
    return -d_anti(Gi, w, j, st);
}

CurvatureTensor curvature(const MetricField& h, const Point& w, const WirtingerStencil& st) {
    const int m = h.dim();
    const int n = h.rank();
    CurvatureTensor out;
    out.w = w;
    out.m = m;
    out.n = n;
    out.blocks.resize(static_cast<size_t>(m) * static_cast<size_t>(m));
    double cross = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Eigen::MatrixXcd matrix_form = curvature_block(h, i, j, w, st);
            if (n == 1) {
                // -d_i dbar_j log h, cross-checked against the matrix form
                auto psi = [&h](const Point& p) { return std::log(h.eval(p)(0, 0)); };
                Eigen::MatrixXcd log_form(1, 1);
                log_form(0, 0) = -d_mixed(psi, w, i, j, st);
                cross = std::max(cross, (log_form - matrix_form).norm());
                matrix_form = log_form;
            }
            out.blocks[static_cast<size_t>(i * m + j)] = std::move(matrix_form);
        }
    out.line_cross_check = cross;
    return out;
}

Eigen::MatrixXcd CurvatureTensor::trace_matrix() const {
    Eigen::MatrixXcd t(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) t(i, j) = block(i, j).trace();
    return t;
}

Eigen::MatrixXcd covariant_derivative(const MetricField& h, int i, int j,
                                      const MultiIndex& I, const MultiIndex& J,
                                      const Point& w, const WirtingerStencil& st) {
    if (I.dim() != h.dim() || J.dim() != h.dim())
        throw ConfigError("covariant word dimension does not match the metric");
    if (I.degree() + J.degree() > 3)
        throw ConfigError("covariant words are supported up to |I|+|J| = 3");

    MatrixEval cur = [&h, i, j, st](const Point& p) { return curvature_block(h, i, j, p, st); };
    // holomorphic steps first, each with the commutator correction
    for (int l = 0; l < I.dim(); ++l)
        for (int c = 0; c < I[l]; ++c) {
            MatrixEval prev = cur;
            cur = [&h, prev, l, st](const Point& p) {
                const Eigen::MatrixXcd K = prev(p);
                const Eigen::MatrixXcd G = connection(h, l, p, st);
                return Eigen::MatrixXcd(d_holo(prev, p, l, st) + G * K - K * G);
            };
        }
    for (int l = 0; l < J.dim(); ++l)
        for (int c = 0; c < J[l]; ++c) {
            MatrixEval prev = cur;
            cur = [prev, l, st](const Point& p) {
                return Eigen::MatrixXcd(d_anti(prev, p, l, st));
            };
        }
    return cur(w);
}

Eigen::MatrixXcd det_curvature(const MetricField& h, const Point& w,
                               const WirtingerStencil& st) {
    const int m = h.dim();
    auto psi = [&h](const Point& p) { return log_det(h, p); };
    Eigen::MatrixXcd out(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) out(i, j) = -d_mixed(psi, w, i, j, st);
    return out;
}

double tensor_additivity_residual(const MetricField& h1, const MetricField& h2,
                                  const Point& w, int max_word,
                                  const WirtingerStencil& st) {
    const MetricField ht = tensor_metric(h1, h2);
    const int m = h1.dim();
    const Eigen::MatrixXcd I1 = Eigen::MatrixXcd::Identity(h1.rank(), h1.rank());
    const Eigen::MatrixXcd I2 = Eigen::MatrixXcd::Identity(h2.rank(), h2.rank());
    double residual = 0.0;
    for (const MultiIndex& word : enumerate_basis(2 * m, max_word)) {
        std::vector<int> Ie(word.entries().begin(), word.entries().begin() + m);
        std::vector<int> Je(word.entries().begin() + m, word.entries().end());
        const MultiIndex I(std::move(Ie)), J(std::move(Je));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                const Eigen::MatrixXcd lhs = covariant_derivative(ht, i, j, I, J, w, st);
                const Eigen::MatrixXcd k1 = covariant_derivative(h1, i, j, I, J, w, st);
                const Eigen::MatrixXcd k2 = covariant_derivative(h2, i, j, I, J, w, st);
                residual = std::max(residual, (lhs - kron(k1, I2) - kron(I1, k2)).norm());
            }
    }
    return residual;
}

double det_lemma_residual(const MetricField& h, const Point& w, const WirtingerStencil& st) {
    const Eigen::MatrixXcd det_form = det_curvature(h, w, st);
    const Eigen::MatrixXcd trace_form = curvature(h, w, st).trace_matrix();
    return (det_form - trace_form).norm() / std::max(trace_form.norm(), 1e-300);
}

FrameChangeReport frame_change_check(const MetricField& h, const MatrixEval& phi,
                                     const Point& w, const WirtingerStencil& st) {
    const Eigen::MatrixXcd phi_w = phi(w);
    if (phi_w.rows() != h.rank() || phi_w.cols() != h.rank())
        throw ConfigError("frame change has the wrong shape");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(phi_w, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 1e-12 * std::max(1.0, sv(0)))
        throw FrameError("frame change is singular at the evaluation point");

    MetricField ht = MetricField::closed_form(h.rank(), h.dim(), [&h, &phi](const Point& p) {
        const Eigen::MatrixXcd f = phi(p);
        return Eigen::MatrixXcd(f.adjoint() * h.eval(p) * f);
    });

    const CurvatureTensor K = curvature(h, w, st);
    const CurvatureTensor Kt = curvature(ht, w, st);
    const Eigen::MatrixXcd phi_inv = phi_w.partialPivLu().inverse();

    FrameChangeReport rep{0.0, 0.0};
    for (int i = 0; i < h.dim(); ++i)
        for (int j = 0; j < h.dim(); ++j) {
            const Eigen::MatrixXcd conj = phi_inv * K.block(i, j) * phi_w;
            rep.conjugacy_residual =
                std::max(rep.conjugacy_residual, (Kt.block(i, j) - conj).norm());
            rep.trace_residual = std::max(
                rep.trace_residual, std::abs(Kt.block(i, j).trace() - K.block(i, j).trace()));
        }
    return rep;
}

Eigen::MatrixXcd ProjectionField::eval(const Point& w) const {
    const int n = static_cast<int>(sections.size());
    if (n < 1) throw ConfigError("projection needs at least one section");
    Eigen::MatrixXcd gamma;
    for (int j = 0; j < n; ++j) {
        Eigen::VectorXcd s = sections[static_cast<size_t>(j)](w);
        if (j == 0) gamma.resize(s.size(), n);
        if (s.size() != gamma.rows())
            throw ConfigError("projection sections live in different ambient spaces");
        gamma.col(j) = s;
    }
    const Eigen::MatrixXcd h = gamma.adjoint() * gamma;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= 1e-12 * std::max(1.0, h.norm()))
        throw FrameError("projection frame is rank-deficient");
    return gamma * h.ldlt().solve(gamma.adjoint()).eval();
}

HsIdentityReport projection_hs_identity(const std::vector<SectionEval>& sections,
                                        const Point& w, const WirtingerStencil& st) {
    ProjectionField proj{sections};
    auto pf = [&proj](const Point& p) { return proj.eval(p); };
    HsIdentityReport rep{0.0, 0.0};
    for (int i = 0; i < w.dim(); ++i) {
        const Eigen::MatrixXcd dpi = d_holo(pf, w, i, st);
        rep.hs += dpi.squaredNorm();
    }
    MetricField h = MetricField::frame_gram_metric(w.dim(), sections);
    const CurvatureTensor K = curvature(h, w, st);
    for (int i = 0; i < w.dim(); ++i) rep.trace += K.block(i, i).trace().real();
    return rep;
}

}  // namespace cdcurv
