#pragma once

#include <Eigen/Dense>

namespace lurenet {

/// Homogeneous agent model dx/dt = A x + B u.
struct AgentDynamics {
  Eigen::MatrixXd A;  // n x n state map (1/time)
  Eigen::MatrixXd B;  // n x m input map

  int n() const { return static_cast<int>(A.rows()); }
  int m() const { return static_cast<int>(B.cols()); }
};

/// Validates dimensions (A square, B row count matching, n >= 1, m >= 1).
AgentDynamics make_dynamics(Eigen::MatrixXd A, Eigen::MatrixXd B);

/// PBH test: for every eigenvalue of A with real part >= -tol,
/// [A - lambda*I, B] must have full row rank.
bool check_stabilizable(const AgentDynamics& d);

/// True iff every eigenvalue of A lies in the closed left half plane
/// (max real part <= tol).
bool check_spectrum_closed_left(const AgentDynamics& d);

/// Controllable-canonical realization of the transfer function
/// a / (s (T s + 1)): A = [[0, 1], [0, -1/T]], B = [[0], [a/T]], output
/// being the first state. Throws BadParameter unless a > 0 and T > 0.
AgentDynamics realize_room_model(double a, double T);

}  // namespace lurenet
