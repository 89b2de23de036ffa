#include "lurenet/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <complex>

#include "lurenet/errors.hpp"

namespace lurenet {

namespace {

constexpr double kEigTol = 1e-9;       // marginal eigenvalues count as closed-left
constexpr double kRankRatio = 1e-8;    // sigma_min <= ratio * sigma_max means rank deficient

}  // namespace

AgentDynamics make_dynamics(Eigen::MatrixXd A, Eigen::MatrixXd B) {
  if (A.rows() < 1 || A.rows() != A.cols())
    throw DimensionMismatch("A must be square and nonempty");
  if (B.rows() != A.rows() || B.cols() < 1)
    throw DimensionMismatch("B must be n x m with m >= 1");
  return AgentDynamics{std::move(A), std::move(B)};
}

bool check_stabilizable(const AgentDynamics& d) {
  const int n = d.n();
  const int m = d.m();
  Eigen::EigenSolver<Eigen::MatrixXd> eig(d.A, /*computeEigenvectors=*/false);
  for (Eigen::Index k = 0; k < n; ++k) {
    const std::complex<double> lambda = eig.eigenvalues()(k);
    if (lambda.real() < -kEigTol) continue;
    Eigen::MatrixXcd pencil(n, n + m);
    pencil.leftCols(n) = d.A.cast<std::complex<double>>() -
                         lambda * Eigen::MatrixXcd::Identity(n, n);
    pencil.rightCols(m) = d.B.cast<std::complex<double>>();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(pencil);
    const auto& sigma = svd.singularValues();
    if (sigma(0) <= 0.0 || sigma(n - 1) <= kRankRatio * sigma(0)) return false;
  }
  return true;
}

bool check_spectrum_closed_left(const AgentDynamics& d) {
  Eigen::EigenSolver<Eigen::MatrixXd> eig(d.A, /*computeEigenvectors=*/false);
  return eig.eigenvalues().real().maxCoeff() <= kEigTol;
}

AgentDynamics realize_room_model(double a, double T) {
  if (!(a > 0.0) || !(T > 0.0))
    throw BadParameter("room model needs a > 0 and T > 0");
  Eigen::MatrixXd A(2, 2);
  A << 0.0, 1.0, 0.0, -1.0 / T;
  Eigen::MatrixXd B(2, 1);
  B << 0.0, a / T;
  return AgentDynamics{std::move(A), std::move(B)};
}

}  // namespace lurenet
