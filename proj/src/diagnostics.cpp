#include "cdcurv/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace cdcurv {

nlohmann::json SimilarityVerdict::to_json() const {
    nlohmann::json j;
    switch (outcome) {
        case Outcome::BoundedRatios:
            j["outcome"] = "bounded_ratios";
            j["C1"] = C1;
            j["C2"] = C2;
            break;
        case Outcome::DivergentRay:
            j["outcome"] = "divergent_ray";
            j["axis"] = axis;
            j["base"] = base.entries();
            j["direction"] = up ? "up" : "down";
            j["l_exit"] = l_exit;
            break;
        case Outcome::Inconclusive:
            j["outcome"] = "inconclusive";
            break;
    }
    j["L"] = L;
    j["low"] = low;
    j["high"] = high;
    return j;
}

SimilarityVerdict shift_similarity(const DiagonalKernel& K1, const DiagonalKernel& K2,
                                   int L, double low, double high, int base_degree) {
    if (K1.dim() != K2.dim())
        throw ConfigError("similarity scan requires kernels on the same ball");
    if (L < 1) throw ConfigError("ray length must be >= 1");
    if (!(0.0 < low && low < high)) throw ConfigError("verdict bounds must satisfy 0 < low < high");

    SimilarityVerdict v;
    v.L = L;
    v.low = low;
    v.high = high;

    double c1 = 1.0, c2 = 1.0;
    bool excursion = false;

    for (const MultiIndex& alpha : enumerate_basis(K1.dim(), base_degree)) {
        const int s = alpha.degree();
        for (int axis = 0; axis < K1.dim(); ++axis) {
            // ratio(l) = sqrt(rho1(a) rho2(a+l e_i) / (rho1(a+l e_i) rho2(a)));
            // the multinomial factors cancel, leaving the a(.) coefficients.
            std::vector<double> vals;
            vals.reserve(static_cast<size_t>(L));
            for (int l = 1; l <= L; ++l) {
                double num, den;
                try {
                    num = K1.coeff(s) * K2.coeff(s + l);
                    den = K1.coeff(s + l) * K2.coeff(s);
                } catch (const ConfigError&) {
                    break;  // tabulated rule ran out of coefficients
                }
                vals.push_back(std::sqrt(num / den));
            }
            int exit_l = -1;
            bool exit_up = false;
            for (size_t k = 0; k < vals.size(); ++k) {
                c1 = std::min(c1, vals[k]);
                c2 = std::max(c2, vals[k]);
                if (exit_l < 0 && (vals[k] >= high || vals[k] <= low)) {
                    exit_l = static_cast<int>(k) + 1;
                    exit_up = vals[k] >= high;
                }
            }
            if (exit_l < 0) continue;
            // confirm divergence: monotone over the last quartile of the ray
            const size_t n = vals.size();
            const size_t start = (3 * n) / 4;
            bool monotone = true;
            for (size_t k = start; k + 1 < n; ++k) {
                const double tol = 1e-12 * std::abs(vals[k]);
                if (exit_up ? vals[k + 1] < vals[k] - tol : vals[k + 1] > vals[k] + tol) {
                    monotone = false;
                    break;
                }
            }
            if (monotone) {
                v.outcome = SimilarityVerdict::Outcome::DivergentRay;
                v.axis = axis;
                v.base = alpha;
                v.up = exit_up;
                v.l_exit = exit_l;
                return v;
            }
            excursion = true;
        }
    }
    if (excursion) {
        v.outcome = SimilarityVerdict::Outcome::Inconclusive;
    } else {
        v.outcome = SimilarityVerdict::Outcome::BoundedRatios;
        v.C1 = c1;
        v.C2 = c2;
    }
    return v;
}

RatioScan curvature_ratio_scan(const MetricField& h_T, const MetricField& h_S, int axis,
                               const std::vector<double>& radii) {
    if (h_T.dim() != h_S.dim()) throw ConfigError("ratio scan requires metrics on the same ball");
    if (axis < 0 || axis >= h_T.dim()) throw ConfigError("scan axis out of range");
    RatioScan out;
    out.axis = axis;
    for (double r : radii) {
        if (r < 0.0 || r >= 1.0) throw DomainError("scan radius must lie in [0, 1)");
        std::vector<Complex> c(static_cast<size_t>(h_T.dim()), Complex(0.0, 0.0));
        c[static_cast<size_t>(axis)] = Complex(r, 0.0);
        Point w(std::move(c));
        WirtingerStencil st;
        st.step = std::max((1.0 - r * r) * 1e-3, 1e-12);
        st.order = 4;
        const double kt = curvature(h_T, w, st).block(axis, axis).trace().real();
        const double ks = curvature(h_S, w, st).block(axis, axis).trace().real();
        if (ks == 0.0) throw EvaluationError("denominator curvature vanished on the scan ray");
        out.radii.push_back(r);
        out.values.push_back(kt / ks);
    }
    return out;
}

PshReport psh_check(const std::function<double(const Point&)>& psi, const GridSpec& grid,
                    const WirtingerStencil& st) {
    PshReport rep;
    rep.psh = true;
    rep.sup_abs = 0.0;
    const int m = grid.dim();
    for (const Point& w : grid.points()) {
        PshPoint pt;
        pt.w = w;
        try {
            auto field = [&psi](const Point& p) { return Complex(psi(p), 0.0); };
            Eigen::MatrixXcd H(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) H(i, j) = d_mixed(field, w, i, j, st);
            H = 0.5 * (H + H.adjoint()).eval();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
            pt.min_eigenvalue = es.eigenvalues().minCoeff();
            const double scale = std::max(1.0, H.norm());
            pt.ok = pt.min_eigenvalue >= -1e-8 * scale;
            rep.sup_abs = std::max(rep.sup_abs, std::abs(psi(w)));
        } catch (const Error& e) {
            pt.ok = false;
            pt.error = e.what();
        }
        if (!pt.ok) rep.psh = false;
        rep.points.push_back(std::move(pt));
    }
    return rep;
}

SupRatioReport section_sup_ratio(const DefectOperator& D, const ShiftTuple& S,
                                 const Eigen::VectorXcd& zeta0, const GridSpec& grid) {
    if (zeta0.size() != S.size())
        throw ConfigError("zeta0 dimension does not match the truncation");
    if (std::abs(zeta0.norm() - 1.0) > 1e-10)
        throw ConfigError("zeta0 must be a unit vector");
    // zeta0 must lie in the (closed) range of D: no mass on clipped modes
    double off = 0.0;
    for (int i = 0; i < S.size(); ++i)
        if (D.eigenvalues(i) == 0.0) off += std::norm(zeta0(i));
    if (std::sqrt(off) > 1e-8)
        throw ConfigError("zeta0 has components outside the range of the defect operator");

    SupRatioReport rep;
    rep.sup = 0.0;
    for (const Point& w : grid.points()) {
        const Eigen::VectorXcd t = joint_eigenvector(S, w);
        const Eigen::VectorXcd v = D.D * t;
        const double num = v.squaredNorm();
        const double den = std::norm(zeta0.dot(v));
        if (den <= 1e-30 * std::max(num, 1.0)) {
            if (!rep.failure) {
                rep.failure = true;
                rep.failure_point = w;
            }
            continue;
        }
        const double ratio = num / den;
        if (ratio > rep.sup) {
            rep.sup = ratio;
            rep.argmax = w;
        }
    }
    return rep;
}

namespace {

Complex poly_eval(const std::vector<Complex>& coeffs, Complex w) {
    Complex v(0.0, 0.0);
    for (size_t n = coeffs.size(); n-- > 0;) v = v * w + coeffs[n];
    return v;
}

Complex poly_deriv_eval(const std::vector<Complex>& coeffs, Complex w) {
    Complex v(0.0, 0.0);
    for (size_t n = coeffs.size(); n-- > 1;) v = v * w + static_cast<double>(n) * coeffs[n];
    return v;
}

}  // namespace

NoncontractionExperiment noncontraction_experiment(
    const std::vector<std::vector<Complex>>& phi_rows, int N) {
    if (phi_rows.empty()) throw ConfigError("the experiment needs at least one phi row");
    const DiagonalKernel K = DiagonalKernel::power(1, 1.0);
    const ShiftTuple S = ShiftTuple::build(K, N);
    const int d = S.size();
    if (static_cast<int>(phi_rows.size()) > d)
        throw ConfigError("more phi rows than truncated basis elements");

    NoncontractionExperiment exp;
    exp.X = Eigen::MatrixXcd::Zero(d, d);
    for (size_t j = 0; j < phi_rows.size(); ++j) {
        if (static_cast<int>(phi_rows[j].size()) > d)
            throw ConfigError("phi row exceeds the truncated basis");
        for (size_t n = 0; n < phi_rows[j].size(); ++n)
            exp.X(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(n)) = phi_rows[j][n];
    }

    // hypothesis 2|phi_j|^2 > m(m+1)|phi_j'|^2 on |w| <= 0.9 (identically-zero
    // rows are vacuous)
    const double mp = static_cast<double>(phi_rows.size()) - 1.0;
    exp.hypothesis_ok = true;
    const double isq2 = std::sqrt(0.5);
    const Complex phases[] = {{1.0, 0.0}, {0.0, 1.0}, {isq2, isq2}, {-1.0, 0.0}};
    for (const auto& row : phi_rows) {
        bool zero = true;
        for (const Complex& c : row)
            if (c != Complex(0.0, 0.0)) zero = false;
        if (zero) continue;
        for (int k = 0; k <= 18 && exp.hypothesis_ok; ++k)
            for (const Complex& ph : phases) {
                const Complex w = (0.05 * k) * ph;
                if (2.0 * std::norm(poly_eval(row, w)) <=
                    mp * (mp + 1.0) * std::norm(poly_deriv_eval(row, w))) {
                    exp.hypothesis_ok = false;
                    break;
                }
            }
    }

    const Eigen::MatrixXcd G =
        Eigen::MatrixXcd::Identity(d, d) + exp.X.adjoint() * exp.X;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
    exp.Y = es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
            es.eigenvectors().adjoint();
    const Eigen::MatrixXcd Y_inv = es.eigenvectors() *
                                   es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                   es.eigenvectors().adjoint();
    exp.cond_Y = std::sqrt(es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff());
    exp.T = exp.Y * S.dense(0) * Y_inv;
    exp.largest_singular_value = exp.T.jacobiSvd().singularValues()(0);

    // curvature-difference identity K_{Mz*} - K_T = d dbar log(||Xt||^2/||t||^2 + 1)
    WirtingerStencil st;
    st.step = 1e-3;
    st.order = 4;
    const MetricField h0 = MetricField::kernel_line(K);
    const MetricField hT = MetricField::closed_form(1, 1, [&S, &exp](const Point& p) {
        Eigen::MatrixXcd h(1, 1);
        h(0, 0) = (exp.Y * joint_eigenvector(S, p)).squaredNorm();
        return h;
    });
    auto rhs_field = [&S, &exp](const Point& p) {
        const Eigen::VectorXcd t = joint_eigenvector(S, p);
        return std::log(Complex((exp.X * t).squaredNorm() / t.squaredNorm() + 1.0, 0.0));
    };
    exp.curvature_residual = 0.0;
    for (int k = -6; k <= 6; ++k) {
        const Point w({Complex(0.1 * k, 0.0)});
        const double lhs = curvature(h0, w, st).block(0, 0)(0, 0).real() -
                           curvature(hT, w, st).block(0, 0)(0, 0).real();
        const double rhs = d_mixed(rhs_field, w, 0, 0, st).real();
        exp.curvature_residual = std::max(exp.curvature_residual, std::abs(lhs - rhs));
    }
    return exp;
}

FbReport reproduce_fb_example(int N, std::vector<double> radii) {
    if (N < 30) throw ConfigError("the FB example needs truncation degree N >= 30");
    if (radii.empty()) radii = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
    const int d = N + 1;

    // a3(n) = (n+1)(n+2)/2 for the Power(3) space
    auto t1 = [d](Complex w) {
        Eigen::VectorXcd v(d);
        Complex p(1.0, 0.0);
        for (int n = 0; n < d; ++n) {
            v(n) = p;
            p *= w;
        }
        return v;
    };
    auto t1p = [d](Complex w) {
        Eigen::VectorXcd v(d);
        v(0) = Complex(0.0, 0.0);
        Complex p(1.0, 0.0);
        for (int n = 1; n < d; ++n) {
            v(n) = static_cast<double>(n) * p;
            p *= w;
        }
        return v;
    };
    auto t2 = [d](Complex w) {
        Eigen::VectorXcd v(d);
        Complex p(1.0, 0.0);
        for (int n = 0; n < d; ++n) {
            v(n) = std::sqrt(0.5 * (n + 1.0) * (n + 2.0)) * p;
            p *= w;
        }
        return v;
    };
    auto stack = [d](const Eigen::VectorXcd& top, const Eigen::VectorXcd& bot) {
        Eigen::VectorXcd v(2 * d);
        v.head(d) = top;
        v.tail(d) = bot;
        return v;
    };

    std::vector<SectionEval> fb = {
        [=](const Point& p) { return stack(t1(p[0]), Eigen::VectorXcd::Zero(d)); },
        [=](const Point& p) { return stack(t1p(p[0]), t2(p[0])); }};
    std::vector<SectionEval> diag = {
        [=](const Point& p) { return stack(t1(p[0]), Eigen::VectorXcd::Zero(d)); },
        [=](const Point& p) { return stack(Eigen::VectorXcd::Zero(d), t2(p[0])); }};

    const MetricField h_fb = MetricField::frame_gram_metric(1, fb);
    const MetricField h_diag = MetricField::frame_gram_metric(1, diag);

    WirtingerStencil st;
    st.step = 1e-3;
    st.order = 4;

    FbReport rep;
    rep.N = N;
    rep.radii = radii;
    rep.max_trace_diff = 0.0;
    for (double r : radii) {
        const Point w({Complex(r, 0.0)});
        const double s = 1.0 - r * r;
        rep.det_scaled.push_back(h_fb.eval(w).determinant().real() * s * s * s * s);
        const double tr = curvature(h_fb, w, st).block(0, 0).trace().real();
        const double trd = curvature(h_diag, w, st).block(0, 0).trace().real();
        rep.trace_scaled.push_back(tr * s * s);
        rep.trace_diag.push_back(trd * s * s);
        rep.max_trace_diff = std::max(rep.max_trace_diff, std::abs(tr - trd));
    }
    rep.caveat =
        "trace equality of the two tuples coexists with non-similarity; the "
        "strong-irreducibility argument separating them is not a computation "
        "performed here";
    return rep;
}

DetInequalityReport det_curvature_inequality_check(const MetricField& h_E,
                                                   const DiagonalKernel& K,
                                                   const GridSpec& grid,
                                                   const WirtingerStencil& st) {
    if (h_E.dim() != K.dim())
        throw ConfigError("metric and kernel live on different balls");
    const int n = h_E.rank();
    const MetricField line = MetricField::kernel_line(K);
    const MetricField product = MetricField::closed_form(n, h_E.dim(), [&](const Point& p) {
        return Eigen::MatrixXcd(line.eval(p)(0, 0) * h_E.eval(p));
    });

    DetInequalityReport rep{0.0, -1e300, false};
    for (const Point& w : grid.points()) {
        const Eigen::MatrixXcd A = det_curvature(product, w, st);
        const Eigen::MatrixXcd B = det_curvature(line, w, st);
        const Eigen::MatrixXcd C = det_curvature(h_E, w, st);
        rep.max_residual = std::max(rep.max_residual, (A - static_cast<double>(n) * B - C).norm());
        const Eigen::MatrixXcd Ch = 0.5 * (C + C.adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Ch, Eigen::EigenvaluesOnly);
        rep.max_eigenvalue = std::max(rep.max_eigenvalue, es.eigenvalues().maxCoeff());
    }
    rep.nsd = rep.max_eigenvalue <= 1e-8;
    return rep;
}

}  // namespace cdcurv
