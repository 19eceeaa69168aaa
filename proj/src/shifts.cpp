#include "cdcurv/shifts.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace cdcurv {

namespace {

double spectral_norm(const Eigen::MatrixXcd& A) {
    if (A.size() == 0) return 0.0;
    return A.jacobiSvd().singularValues()(0);
}

void require_hermitian(const Eigen::MatrixXcd& A, double rel, const char* what) {
    const double scale = std::max(1.0, A.norm());
    if ((A - A.adjoint()).norm() > rel * scale)
        throw EvaluationError(std::string(what) + " is not Hermitian to tolerance");
}

}  // namespace

ShiftTuple::ShiftTuple(DiagonalKernel K, int N) : kernel_(std::move(K)), m_(kernel_.dim()), N_(N) {}

ShiftTuple ShiftTuple::build(const DiagonalKernel& K, int N) {
    if (N < 1) throw ConfigError("shift truncation degree must be >= 1");
    ShiftTuple S(K, N);
    S.basis_ = enumerate_basis(S.m_, N);
    const int d = S.size();

    std::map<std::vector<int>, int> pos;
    for (int idx = 0; idx < d; ++idx) pos[S.basis_[static_cast<size_t>(idx)].entries()] = idx;

    std::vector<double> rho(static_cast<size_t>(d));
    for (int idx = 0; idx < d; ++idx) {
        rho[static_cast<size_t>(idx)] = K.weight(S.basis_[static_cast<size_t>(idx)]);
        if (!(rho[static_cast<size_t>(idx)] > 0.0))
            throw ConfigError("weight sequence must be strictly positive");
    }

    S.T_.reserve(static_cast<size_t>(S.m_));
    for (int i = 0; i < S.m_; ++i) {
        std::vector<Eigen::Triplet<Complex>> trip;
        for (int col = 0; col < d; ++col) {
            const MultiIndex& alpha = S.basis_[static_cast<size_t>(col)];
            if (alpha[i] == 0) continue;
            const int row = pos.at(alpha.minus(i).entries());
            const double lam = std::sqrt(rho[static_cast<size_t>(row)] / rho[static_cast<size_t>(col)]);
            trip.emplace_back(row, col, Complex(lam, 0.0));
        }
        Eigen::SparseMatrix<Complex> Ti(d, d);
        Ti.setFromTriplets(trip.begin(), trip.end());
        S.T_.push_back(std::move(Ti));
    }

    double max_norm2 = 0.0;
    for (int i = 0; i < S.m_; ++i) {
        const double n = spectral_norm(S.dense(i));
        max_norm2 = std::max(max_norm2, n * n);
    }
    for (int i = 0; i < S.m_; ++i)
        for (int j = i + 1; j < S.m_; ++j) {
            const Eigen::MatrixXcd comm = S.dense(i) * S.dense(j) - S.dense(j) * S.dense(i);
            if (comm.norm() > 1e-13 * std::max(1.0, max_norm2))
                throw EvaluationError("shift matrices fail to commute on the truncation");
        }
    return S;
}

int ShiftTuple::index_of(const MultiIndex& alpha) const {
    if (alpha.dim() != m_ || alpha.degree() > N_) return -1;
    const auto it = std::lower_bound(basis_.begin(), basis_.end(), alpha, graded_less);
    if (it == basis_.end() || !(*it == alpha)) return -1;
    return static_cast<int>(it - basis_.begin());
}

const Eigen::SparseMatrix<Complex>& ShiftTuple::matrix(int i) const {
    if (i < 0 || i >= m_) throw ConfigError("shift coordinate index out of range");
    return T_[static_cast<size_t>(i)];
}

Eigen::MatrixXcd ShiftTuple::dense(int i) const { return Eigen::MatrixXcd(matrix(i)); }

Eigen::MatrixXcd ShiftTuple::power(const MultiIndex& alpha) const {
    if (alpha.dim() != m_) throw ConfigError("multi-index dimension does not match the tuple");
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(size(), size());
    for (int i = 0; i < m_; ++i)
        for (int c = 0; c < alpha[i]; ++c) P = dense(i) * P;
    return P;
}

nlohmann::json ShiftTuple::sparse_json() const {
    nlohmann::json basis = nlohmann::json::array();
    for (const MultiIndex& a : basis_) basis.push_back(a.entries());
    nlohmann::json mats = nlohmann::json::array();
    for (const auto& Ti : T_) {
        nlohmann::json entries = nlohmann::json::array();
        for (int col = 0; col < Ti.outerSize(); ++col)
            for (Eigen::SparseMatrix<Complex>::InnerIterator it(Ti, col); it; ++it)
                entries.push_back({it.row(), it.col(), it.value().real(), it.value().imag()});
        mats.push_back(std::move(entries));
    }
    return {{"kernel", kernel_.descriptor()}, {"N", N_}, {"basis", basis}, {"matrices", mats}};
}

Eigen::VectorXcd joint_eigenvector(const ShiftTuple& S, const Point& w, double tail_tol) {
    if (w.dim() != S.dim()) throw ConfigError("point dimension does not match the tuple");
    if (!w.inside_ball()) throw DomainError("joint eigenvector requires |w| < 1");
    if (tail_tol <= 0.0) throw ConfigError("tail tolerance must be positive");
    const DiagonalKernel& K = S.kernel();
    const double t = w.norm_sq();

    // Kept mass per shell: sum_{|alpha|=s} rho(alpha)|w^alpha|^2 = a(s) t^s.
    double kept = 0.0, ts = 1.0;
    for (int s = 0; s <= S.degree(); ++s) {
        kept += K.coeff(s) * ts;
        ts *= t;
    }
    const double full = K.eval_inner(Complex(t, 0.0)).real();
    const double tail = full - kept;
    if (tail > tail_tol * kept) {
        int M = S.degree();
        double kept_m = kept, tm = ts;
        while (M < 400 && full - kept_m > tail_tol * kept_m) {
            ++M;
            kept_m += K.coeff(M) * tm;
            tm *= t;
        }
        throw TruncationError("joint eigenvector tail exceeds tolerance at this truncation", M);
    }

    Eigen::VectorXcd c(S.size());
    for (int idx = 0; idx < S.size(); ++idx) {
        const MultiIndex& a = S.basis()[static_cast<size_t>(idx)];
        c(idx) = std::sqrt(K.weight(a)) * w.monomial(a);
    }
    return c;
}

HypercontractionReport hypercontraction_defect(const ShiftTuple& S, int l) {
    if (l < 0) throw ConfigError("hypercontraction level must be >= 0");
    if (l > S.degree()) throw TruncationError("hypercontraction level exceeds the truncation degree", l);
    const int d = S.size();
    Eigen::MatrixXcd delta = Eigen::MatrixXcd::Zero(d, d);
    for (const MultiIndex& alpha : enumerate_basis(S.dim(), l)) {
        const int s = alpha.degree();
        const BigInt num = factorial(l);
        const BigInt den = alpha.factorial() * factorial(l - s);
        const double coeff = static_cast<double>(num / den) * ((s % 2 == 0) ? 1.0 : -1.0);
        const Eigen::MatrixXcd P = S.power(alpha);
        delta += coeff * (P.adjoint() * P);
    }
    require_hermitian(delta, 1e-14, "hypercontraction defect");
    HypercontractionReport rep;
    rep.level = l;
    rep.delta = 0.5 * (delta + delta.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rep.delta);
    rep.min_eigenvalue = es.eigenvalues().minCoeff();
    rep.norm = std::max(std::abs(es.eigenvalues().minCoeff()), std::abs(es.eigenvalues().maxCoeff()));
    rep.psd = rep.min_eigenvalue >= -1e-10 * std::max(1.0, rep.norm);
    return rep;
}

DefectOperator defect_operator(const ShiftTuple& S, int k) {
    const DiagonalKernel& K = S.kernel();
    if (!K.inverse_is_polynomial())
        throw ConfigError("defect operator requires a kernel with polynomial 1/K");
    if (k != K.inverse_degree())
        throw ConfigError("requested defect degree does not match the kernel's 1/K");
    if (k > S.degree())
        throw TruncationError("defect degree exceeds the truncation degree", k);

    const InverseKernelCoeffs b = inverse_coeffs(k);
    const int d = S.size();
    Eigen::MatrixXcd D2 = Eigen::MatrixXcd::Zero(d, d);
    for (const MultiIndex& alpha : enumerate_basis(S.dim(), k)) {
        const int s = alpha.degree();
        const double coeff =
            static_cast<double>(b.b[static_cast<size_t>(s)]) * static_cast<double>(multinomial(alpha));
        const Eigen::MatrixXcd P = S.power(alpha);
        D2 += coeff * (P.adjoint() * P);
    }
    require_hermitian(D2, 1e-14, "defect operator square");

    DefectOperator out;
    out.k = k;
    out.D2 = 0.5 * (D2 + D2.adjoint());

    const double norm = spectral_norm(out.D2);
    const double clip = 1e-10 * std::max(1.0, norm);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(out.D2);
    if (es.eigenvalues().minCoeff() < -1e-8)
        throw PositivityError("(1/K)(T*,T) has a negative eigenvalue: positivity fails");
    Eigen::VectorXd lam = es.eigenvalues();
    for (int i = 0; i < lam.size(); ++i)
        if (lam(i) < clip) lam(i) = 0.0;
    out.D = es.eigenvectors() * lam.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();

    // Diagonal in the graded monomial basis for diagonal kernels.
    out.eigenvalues.resize(d);
    for (int i = 0; i < d; ++i) {
        double v = out.D2(i, i).real();
        out.eigenvalues(i) = v < clip ? 0.0 : v;
    }
    return out;
}

ModelTailProfile model_tail(const ShiftTuple& S, int k, int j) {
    if (j < 0) throw ConfigError("model-tail start index must be >= 0");
    const DefectOperator D = defect_operator(S, k);
    const int d = S.size();
    ModelTailProfile out;
    out.j = j;
    out.f = Eigen::MatrixXcd::Zero(d, d);
    for (int idx = j; idx < d; ++idx) {
        const MultiIndex& alpha = S.basis()[static_cast<size_t>(idx)];
        const Eigen::MatrixXcd P = S.power(alpha);
        out.f += S.weight(alpha) * (P.adjoint() * D.D2 * P);
    }
    out.norms.resize(static_cast<size_t>(d));
    out.max_norm = 0.0;
    for (int col = 0; col < d; ++col) {
        out.norms[static_cast<size_t>(col)] = out.f.col(col).norm();
        out.max_norm = std::max(out.max_norm, out.norms[static_cast<size_t>(col)]);
    }
    return out;
}

}  // namespace cdcurv
