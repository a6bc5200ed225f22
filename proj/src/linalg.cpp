#include "metric_sdr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "metric_sdr/errors.hpp"

namespace metric_sdr::linalg {

bool is_symmetric(const Eigen::MatrixXd& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

EigenDecomposition sym_eigen(const Eigen::MatrixXd& a) {
  if (a.rows() == 0 || !a.allFinite()) throw InvalidInput("matrix must be nonempty and finite");
  if (!is_symmetric(a)) throw InvalidInput("matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw NumericError("symmetric eigensolver did not converge");

  const Eigen::Index p = a.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  const auto& ev = solver.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index l, Eigen::Index r) { return ev(l) > ev(r); });

  EigenDecomposition out{Eigen::VectorXd(p), Eigen::MatrixXd(p, p)};
  for (Eigen::Index j = 0; j < p; ++j) {
    const Eigen::Index src = order[static_cast<std::size_t>(j)];
    out.values(j) = ev(src);
    Eigen::VectorXd v = solver.eigenvectors().col(src);
    Eigen::Index lead = 0;
    for (Eigen::Index i = 1; i < p; ++i)
      if (std::abs(v(i)) > std::abs(v(lead))) lead = i;
    if (v(lead) < 0) v = -v;
    out.vectors.col(j) = v;
  }
  return out;
}

Eigen::MatrixXd inv_sqrt(const Eigen::MatrixXd& a, double eigen_floor, int* floored) {
  const auto eig = sym_eigen(a);
  const double lambda_max = eig.values(0);
  if (eig.values(eig.values.size() - 1) < -1e-8 * std::max(lambda_max, 0.0) ||
      lambda_max <= 0.0)
    throw NumericError("matrix is not positive semidefinite");
  const double floor = eigen_floor < 0.0 ? 1e-10 * lambda_max : eigen_floor;

  int raised = 0;
  Eigen::VectorXd scale(eig.values.size());
  for (Eigen::Index j = 0; j < scale.size(); ++j) {
    double lambda = eig.values(j);
    if (lambda < floor) {
      lambda = floor;
      ++raised;
    }
    scale(j) = 1.0 / std::sqrt(lambda);
  }
  if (floored) *floored = raised;
  Eigen::MatrixXd out = eig.vectors * scale.asDiagonal() * eig.vectors.transpose();
  return 0.5 * (out + out.transpose());
}

Eigen::MatrixXd projection_matrix(const Eigen::MatrixXd& b) {
  if (b.cols() == 0 || b.cols() > b.rows()) throw RankError("basis must have 1..p columns");
  if (!b.allFinite()) throw InvalidInput("basis entries must be finite");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  if (s(0) <= 0.0 || s(s.size() - 1) < 1e-10 * s(0)) throw RankError("basis is rank deficient");
  // U spans the column space of B, so U U^T = B (B^T B)^{-1} B^T.
  const Eigen::MatrixXd& u = svd.matrixU();
  Eigen::MatrixXd p = u * u.transpose();
  return 0.5 * (p + p.transpose());
}

}  // namespace metric_sdr::linalg
