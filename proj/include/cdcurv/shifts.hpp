#pragma once

// Truncated weighted multishifts: the adjoint multiplication tuple M_z* on
// span{e_alpha : |alpha| <= N}, hypercontraction defects Delta^(l), the
// defect operator D_T = (1/K)(T*,T)^{1/2}, joint eigenvectors t(w), and the
// model-tail profile f_j(T*,T).

#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <json.hpp>

#include "cdcurv/kernels.hpp"
#include "cdcurv/multi_index.hpp"
#include "cdcurv/point.hpp"

namespace cdcurv {

class ShiftTuple {
public:
    // T_i e_alpha = sqrt(rho(alpha-e_i)/rho(alpha)) e_{alpha-e_i}; T*_i pushes
    // degree-N states off the space (truncation boundary).
    static ShiftTuple build(const DiagonalKernel& K, int N);

    int dim() const { return m_; }
    int degree() const { return N_; }
    int size() const { return static_cast<int>(basis_.size()); }
    const std::vector<MultiIndex>& basis() const { return basis_; }
    const DiagonalKernel& kernel() const { return kernel_; }

    // Basis position of alpha in graded order, or -1 if |alpha| > N.
    int index_of(const MultiIndex& alpha) const;

    const Eigen::SparseMatrix<Complex>& matrix(int i) const;
    Eigen::MatrixXcd dense(int i) const;
    // T^alpha (order immaterial: the factors commute).
    Eigen::MatrixXcd power(const MultiIndex& alpha) const;

    double weight(const MultiIndex& alpha) const { return kernel_.weight(alpha); }

    // Basis list plus triplet entries of each T_i.
    nlohmann::json sparse_json() const;

private:
    ShiftTuple(DiagonalKernel K, int N);
    DiagonalKernel kernel_;
    int m_;
    int N_;
    std::vector<MultiIndex> basis_;
    std::vector<Eigen::SparseMatrix<Complex>> T_;
};

// t(w) = sum_alpha rho(alpha)^{1/2} w^alpha e_alpha. The dropped tail
// K(wbar,wbar) - sum_{|alpha|<=N} rho(alpha)|w^alpha|^2 must stay below
// tail_tol relative to the kept mass.
Eigen::VectorXcd joint_eigenvector(const ShiftTuple& S, const Point& w,
                                   double tail_tol = 1e-10);

struct HypercontractionReport {
    int level;
    Eigen::MatrixXcd delta;  // (I - M_T)^l (I)
    double min_eigenvalue;
    double norm;  // spectral norm of delta
    bool psd;     // min eigenvalue >= -1e-10 * norm
};

HypercontractionReport hypercontraction_defect(const ShiftTuple& S, int l);

struct DefectOperator {
    int k;                       // degree of the polynomial 1/K
    Eigen::MatrixXcd D2;         // (1/K)(T*,T), adjoint powers on the left
    Eigen::MatrixXcd D;          // Hermitian square root after clipping
    Eigen::VectorXd eigenvalues; // clipped diagonal values in basis order
};

DefectOperator defect_operator(const ShiftTuple& S, int k);

struct ModelTailProfile {
    int j;
    Eigen::MatrixXcd f;          // f_j(T*,T) on the truncation
    std::vector<double> norms;   // ||f_j e_beta|| per basis element
    double max_norm;
};

// f_j(T*,T) = sum over basis indices >= j of rho(alpha) T*^alpha D^2 T^alpha.
ModelTailProfile model_tail(const ShiftTuple& S, int k, int j);

}  // namespace cdcurv
