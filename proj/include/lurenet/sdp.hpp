#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lurenet/lmi.hpp"

namespace lurenet {

struct SolverOptions {
  int max_iterations = 200;    // total Newton steps across all barrier stages
  double tolerance = 1e-7;     // target feasibility margin
  double initial_scale = 1.0;  // initial point X = s*I, Y = 0, Z = s*I
  bool verbose = false;
};

enum class SolveStatus { Feasible, Infeasible, IterationLimit };

std::string to_string(SolveStatus status);

/// Result of a feasibility solve. blocking_block indexes the residual list
/// (blocks first, then the X and Z strictness entries) that was worst at the
/// best iterate. lower_bound is the certified lower bound on the epigraph
/// optimum; Infeasible means it exceeded +tolerance.
struct SolverOutcome {
  SolveStatus status = SolveStatus::IterationLimit;
  std::optional<LmiSolution> solution;
  double best_margin = std::numeric_limits<double>::infinity();
  int iterations = 0;
  int blocking_block = -1;
  double lower_bound = -std::numeric_limits<double>::infinity();
};

/// Path-following barrier method on the max-eigenvalue epigraph formulation:
/// minimize t subject to block(v) <= t*I per block, X >= (eta - t)*I and
/// Z_k >= eta - t, over the flat decision vector. Feasible is returned once
/// the iterate's residual margin clears -tolerance; Infeasible once the
/// barrier duality gap proves the optimum exceeds +tolerance. Problems whose
/// blocks are homogeneous (block(0) = 0) are solved under an internal
/// variable rescaling to unit floor, which keeps the Newton systems well
/// conditioned; the returned solution is in natural units either way.
/// Deterministic: identical inputs give identical outputs.
SolverOutcome solve_feasibility(const LmiProblem& p, const SolverOptions& opts = {});

struct CertifyReport {
  std::vector<double> residuals;
  double margin = std::numeric_limits<double>::infinity();
  bool passed = false;
};

/// Recomputes all residuals through lurenet::residual (Jacobi eigenvalue
/// path, independent of the solver's Eigen-based path); passes iff the
/// margin clears -tolerance.
CertifyReport certify(const LmiProblem& p, const LmiSolution& v, double tolerance = 1e-7);

}  // namespace lurenet
