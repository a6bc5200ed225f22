#pragma once

#include <Eigen/Dense>

namespace metric_sdr::linalg {

struct EigenDecomposition {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // column j pairs with values(j)
};

// Full spectral decomposition of a symmetric matrix. Each eigenvector is
// sign-fixed so that its largest-magnitude entry (lowest index on ties) is
// positive. Throws InvalidInput when A is asymmetric beyond 1e-10 relative.
EigenDecomposition sym_eigen(const Eigen::MatrixXd& a);

// A^{-1/2} with eigenvalues floored at `eigen_floor`; a negative floor selects
// the default 1e-10 * lambda_max. Throws NumericError when A is not PSD.
// `floored`, when given, receives the number of eigenvalues that were raised.
Eigen::MatrixXd inv_sqrt(const Eigen::MatrixXd& a, double eigen_floor = -1.0,
                         int* floored = nullptr);

// B (B^T B)^{-1} B^T. Throws RankError for rank-deficient B.
Eigen::MatrixXd projection_matrix(const Eigen::MatrixXd& b);

bool is_symmetric(const Eigen::MatrixXd& a, double rel_tol = 1e-10);

}  // namespace metric_sdr::linalg
