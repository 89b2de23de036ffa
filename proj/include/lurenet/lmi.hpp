#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"
#include "lurenet/dynamics.hpp"

namespace lurenet {

/// Diagonal sector bounds (Delta1, Delta2) with delta1[k] < delta2[k] for
/// every input channel k.
struct SectorBounds {
  Eigen::VectorXd delta1;
  Eigen::VectorXd delta2;

  int channels() const { return static_cast<int>(delta1.size()); }
  /// Saturation sector [0, 1] on every channel.
  static SectorBounds saturation(int m);
};

/// Validates the strict ordering delta1 < delta2; throws BadParameter.
SectorBounds make_sector(Eigen::VectorXd delta1, Eigen::VectorXd delta2);

/// One affine matrix constraint block(X, Y, Z) <= 0 (negative semidefinite).
/// Z is passed as the vector of its diagonal entries. The map must be affine
/// in (X, Y, Z) and return an exactly symmetric matrix for symmetric X.
struct LmiBlock {
  std::string name;
  int size = 0;
  std::function<Eigen::MatrixXd(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                                const Eigen::VectorXd& Z)>
      eval;
};

/// Affine LMI feasibility problem over the structured triple
/// (X: n x n symmetric, Y: m x n, Z: m positive diagonal entries) with side
/// constraints X > 0 and Z > 0. eta is the strictness floor the solver
/// enforces so the Lyapunov argument holds with nonzero margin.
struct LmiProblem {
  int n = 0;
  int m = 0;
  double eta = 1e-7;
  std::vector<LmiBlock> blocks;

  /// Number of scalar decision entries: n(n+1)/2 + m*n + m.
  int decision_count() const { return n * (n + 1) / 2 + m * n + m; }
};

/// Candidate or certified decision triple. margin is NaN for plain
/// candidates and the certified feasibility margin for solver output.
struct LmiSolution {
  Eigen::MatrixXd X;
  Eigen::MatrixXd Y;
  Eigen::VectorXd Z;
  double margin = std::numeric_limits<double>::quiet_NaN();
};

/// Two blocks, one per extreme Laplacian eigenvalue lambda in
/// {lambda2, lambdaN}:
///   [ sym(A X + lambda B Delta2 Y) + eps X   B Z + (lambda/2) Y' (Delta1 - Delta2) ]
///   [                  (.)'                                 -Z                    ]
/// Intermediate eigenvalues are covered by convex combination and never
/// appear as blocks. Throws BadEigenvalues unless 0 < lambda2 <= lambdaN,
/// BadParameter if eps < 0.
LmiProblem assemble_undirected(const AgentDynamics& d, const SectorBounds& s,
                               double lambda2, double lambdaN, double eps);

/// N-1 blocks of size 2(n+m) for the unweighted directed N-cycle, i = 2..N.
/// Each block couples two copies of
///   T_i = [ sym(A X + (1/2) B Dtilde_i Y) + eps X   B Z + Y' Dhat_i ]
///         [                (.)'                          -Z         ]
/// through the off-diagonal n x n coupling Ymat_i placed as
///   [ T_i, -E(Ymat_i); (-E(Ymat_i))', T_i ].
/// literal = true uses the constants
///   Dhat_i  = sqrt(2 (1 - cos th_i)) (Delta1 - Delta2)
///   Dtilde_i = (1 - cos th_i)(Delta1 + Delta2) - Dhat_i
///   Ymat_i  = -(1/2) sin th_i * sym(B (Delta1 + Delta2) Y)
/// with th_i = 2 pi (i-1)/N; literal = false the derivation-consistent
/// variant
///   Dhat_i  = (1/2) |lambda_i| (Delta1 - Delta2)
///   Dtilde_i = lambda_{i,r} (Delta1 + Delta2) - 2 Dhat_i
///   Ymat_i  = -(1/2) sin th_i * (W - W') with W = B (Delta1 + Delta2) Y,
/// which reduces exactly to the undirected block at real eigenvalues.
/// Throws BadSize for N < 2.
LmiProblem assemble_directed_cycle(const AgentDynamics& d, const SectorBounds& s,
                                   int n_agents, double eps, bool literal);

/// Per-block maximum eigenvalue of the evaluated block (<= 0 means the block
/// is satisfied), followed by the strictness residuals -lambda_min(X) and
/// -min(Z). Uses the Jacobi eigenvalue routine, which shares no code with
/// the solver's eigenvalue path.
std::vector<double> residual(const LmiProblem& p, const LmiSolution& v);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
/// Independent of any Eigen decomposition code.
std::vector<double> jacobi_eigenvalues(const Eigen::MatrixXd& sym);

/// Maximum eigenvalue of the Schur-complemented closed-loop condition at a
/// single real eigenvalue lambda:
///   X A' + A X + eps X + lambda (Y' Delta2 B' + B Delta2 Y)
///   + (B Z + (lambda/2) Y'(Delta1 - Delta2)) Z^{-1} (.)'  <= 0.
/// Used as a cross-check that a solution covers intermediate eigenvalues.
double schur_condition_residual(const AgentDynamics& d, const SectorBounds& s,
                                double eps, double lambda, const LmiSolution& v);

/// Flat serialization for external cross-validation: dimensions, constant
/// matrix and per-decision-entry coefficient matrices of every block.
nlohmann::json problem_to_json(const LmiProblem& p);

/// Ordered labels of the flat decision entries ("X(i,j)" upper triangle
/// column-major, then "Y(k,j)" row-major, then "Z(k)").
std::vector<std::string> decision_labels(const LmiProblem& p);

/// Basis triple for flat decision coordinate idx (unit entry, symmetrized
/// for off-diagonal X coordinates).
LmiSolution decision_basis(const LmiProblem& p, int idx);

}  // namespace lurenet
