#include "lurenet/sdp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <iostream>

#include "lurenet/errors.hpp"

namespace lurenet {

namespace {

// One flattened conic constraint S(w) = C + sum_i v_i * M_i + t * I >= 0.
// The epigraph variable t enters every constraint with identity coefficient.
struct FlatConstraint {
  int size = 0;
  bool is_lmi_block = false;  // true for problem blocks, false for floors
  Eigen::MatrixXd constant;
  std::vector<Eigen::MatrixXd> coeff;
};

struct FlatProblem {
  int dim = 0;  // decision coordinates, excluding t
  int nu = 0;   // total barrier parameter (sum of constraint sizes)
  bool homogeneous = false;
  std::vector<FlatConstraint> cons;
};

LmiSolution unflatten(const LmiProblem& p, const Eigen::VectorXd& v) {
  LmiSolution sol;
  sol.X = Eigen::MatrixXd::Zero(p.n, p.n);
  sol.Y = Eigen::MatrixXd::Zero(p.m, p.n);
  sol.Z = Eigen::VectorXd::Zero(p.m);
  int idx = 0;
  for (int j = 0; j < p.n; ++j)
    for (int i = 0; i <= j; ++i) {
      sol.X(i, j) = sol.X(j, i) = v(idx);
      ++idx;
    }
  for (int k = 0; k < p.m; ++k)
    for (int j = 0; j < p.n; ++j) sol.Y(k, j) = v(idx++);
  for (int k = 0; k < p.m; ++k) sol.Z(k) = v(idx++);
  return sol;
}

FlatProblem flatten(const LmiProblem& p, double eta) {
  FlatProblem fp;
  fp.dim = p.decision_count();
  const LmiSolution zero = unflatten(p, Eigen::VectorXd::Zero(fp.dim));

  std::vector<LmiSolution> basis;
  basis.reserve(fp.dim);
  for (int i = 0; i < fp.dim; ++i) basis.push_back(decision_basis(p, i));

  fp.homogeneous = true;
  for (const auto& block : p.blocks) {
    FlatConstraint c;
    c.size = block.size;
    c.is_lmi_block = true;
    const Eigen::MatrixXd at_zero = block.eval(zero.X, zero.Y, zero.Z);
    if (at_zero.cwiseAbs().maxCoeff() != 0.0) fp.homogeneous = false;
    c.constant = -at_zero;
    c.coeff.reserve(fp.dim);
    for (int i = 0; i < fp.dim; ++i)
      c.coeff.push_back(-(block.eval(basis[i].X, basis[i].Y, basis[i].Z) - at_zero));
    fp.cons.push_back(std::move(c));
  }

  // X floor: X + (t - eta) I >= 0.
  {
    FlatConstraint c;
    c.size = p.n;
    c.constant = -eta * Eigen::MatrixXd::Identity(p.n, p.n);
    for (int i = 0; i < fp.dim; ++i) c.coeff.push_back(basis[i].X);
    fp.cons.push_back(std::move(c));
  }
  // Z floors: Z_k + t - eta >= 0, one scalar constraint per channel.
  for (int k = 0; k < p.m; ++k) {
    FlatConstraint c;
    c.size = 1;
    c.constant = Eigen::MatrixXd::Constant(1, 1, -eta);
    for (int i = 0; i < fp.dim; ++i)
      c.coeff.push_back(Eigen::MatrixXd::Constant(1, 1, basis[i].Z(k)));
    fp.cons.push_back(std::move(c));
  }

  for (const auto& c : fp.cons) fp.nu += c.size;
  return fp;
}

Eigen::MatrixXd constraint_matrix(const FlatConstraint& c, const Eigen::VectorXd& v, double t) {
  Eigen::MatrixXd s = c.constant;
  for (int i = 0; i < static_cast<int>(c.coeff.size()); ++i) s += v(i) * c.coeff[i];
  s.diagonal().array() += t;
  return s;
}

// Residual margin of the candidate in the residual-list order used by
// lurenet::residual, computed with Eigen's eigensolver (the solver-side
// path; certify goes through the independent Jacobi path).
std::vector<double> eigen_residuals(const FlatProblem& fp, const LmiProblem& p,
                                    const Eigen::VectorXd& v) {
  std::vector<double> res;
  for (const auto& c : fp.cons) {
    if (!c.is_lmi_block) continue;
    Eigen::MatrixXd block = -constraint_matrix(c, v, 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(block, Eigen::EigenvaluesOnly);
    res.push_back(eig.eigenvalues().maxCoeff());
  }
  const LmiSolution sol = unflatten(p, v);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_x(sol.X, Eigen::EigenvaluesOnly);
  res.push_back(-eig_x.eigenvalues().minCoeff());
  if (p.m > 0) res.push_back(-sol.Z.minCoeff());
  return res;
}

struct BarrierEval {
  bool interior = false;
  double logdet_sum = 0.0;
  std::vector<Eigen::LLT<Eigen::MatrixXd>> factors;
};

BarrierEval evaluate_barrier(const FlatProblem& fp, const Eigen::VectorXd& v, double t) {
  BarrierEval ev;
  ev.factors.reserve(fp.cons.size());
  for (const auto& c : fp.cons) {
    Eigen::LLT<Eigen::MatrixXd> llt(constraint_matrix(c, v, t));
    if (llt.info() != Eigen::Success) return ev;
    double logdet = 0.0;
    for (int i = 0; i < c.size; ++i) logdet += std::log(llt.matrixLLT()(i, i));
    ev.logdet_sum += 2.0 * logdet;
    ev.factors.push_back(std::move(llt));
  }
  ev.interior = true;
  return ev;
}

}  // namespace

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

SolverOutcome solve_feasibility(const LmiProblem& p, const SolverOptions& opts) {
  if (opts.max_iterations < 1) throw BadParameter("max_iterations must be at least 1");
  if (!(opts.tolerance > 0.0)) throw BadParameter("tolerance must be positive");
  if (!(opts.initial_scale > 0.0)) throw BadParameter("initial_scale must be positive");
  if (p.n < 1) throw BadParameter("problem needs n >= 1");
  if (!(p.eta > 0.0)) throw BadParameter("problem strictness floor eta must be positive");

  FlatProblem fp = flatten(p, 1.0);
  const double scale = fp.homogeneous ? p.eta : 1.0;
  const double eta_work = fp.homogeneous ? 1.0 : p.eta;
  const double tol_work = opts.tolerance / scale;
  if (eta_work != 1.0)
    for (auto& c : fp.cons)
      if (!c.is_lmi_block) c.constant *= eta_work;

  const int dim = fp.dim;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  {
    // initial point: X = s*I, Y = 0, Z = s*ones
    int idx = 0;
    for (int j = 0; j < p.n; ++j)
      for (int i = 0; i <= j; ++i) v(idx++) = (i == j) ? opts.initial_scale : 0.0;
    idx += p.m * p.n;
    for (int k = 0; k < p.m; ++k) v(idx++) = opts.initial_scale;
  }

  // Smallest t that makes every constraint strictly feasible, then shifted.
  double r_max = -std::numeric_limits<double>::infinity();
  for (const auto& c : fp.cons) {
    Eigen::MatrixXd req = -constraint_matrix(c, v, 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(req, Eigen::EigenvaluesOnly);
    r_max = std::max(r_max, eig.eigenvalues().maxCoeff());
  }
  double t = (r_max >= 0.5) ? 2.0 * r_max : r_max + 1.0;

  SolverOutcome out;
  auto track_best = [&](const Eigen::VectorXd& vw) {
    const std::vector<double> res = eigen_residuals(fp, p, vw);
    int worst = 0;
    for (int i = 1; i < static_cast<int>(res.size()); ++i)
      if (res[i] > res[worst]) worst = i;
    const double margin = res[worst];
    if (margin < out.best_margin) {
      out.best_margin = margin;
      out.blocking_block = worst;
    }
    return margin;
  };

  auto finish_feasible = [&](const Eigen::VectorXd& vw) {
    const Eigen::VectorXd natural_v = scale * vw;
    LmiSolution sol = unflatten(p, natural_v);
    // report the natural-unit margin from solver-side residuals
    const std::vector<double> res = eigen_residuals(fp, p, natural_v);
    sol.margin = *std::max_element(res.begin(), res.end());
    out.status = SolveStatus::Feasible;
    out.best_margin = sol.margin;
    out.solution = std::move(sol);
    return out;
  };

  double mu = std::max(1.0, std::abs(t));
  const double mu_min = 1e-14 * mu;
  const double newton_tol = 2e-10;  // on half the squared decrement
  Eigen::VectorXd w(dim + 1);
  w.head(dim) = v;
  w(dim) = t;

  if (track_best(w.head(dim)) <= -1.05 * tol_work) return finish_feasible(w.head(dim));

  while (true) {
    bool centered = false;
    for (int inner = 0; inner < 60; ++inner) {
      BarrierEval ev = evaluate_barrier(fp, w.head(dim), w(dim));
      if (!ev.interior)
        throw NumericalBreakdown("barrier iterate left the interior");

      // gradient and Hessian of t/mu - sum log det S_j
      Eigen::VectorXd grad = Eigen::VectorXd::Zero(dim + 1);
      grad(dim) = 1.0 / mu;
      Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(dim + 1, dim + 1);
      std::vector<Eigen::MatrixXd> directions(dim + 1);
      for (size_t j = 0; j < fp.cons.size(); ++j) {
        const FlatConstraint& c = fp.cons[j];
        const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(c.size, c.size);
        const Eigen::MatrixXd w_inv = ev.factors[j].solve(identity);
        for (int i = 0; i <= dim; ++i) {
          const Eigen::MatrixXd& mi = (i < dim) ? c.coeff[i] : identity;
          directions[i] = w_inv * mi;
          grad(i) -= directions[i].trace();
        }
        for (int i = 0; i <= dim; ++i)
          for (int k = i; k <= dim; ++k) {
            const double hik = directions[i].cwiseProduct(directions[k].transpose()).sum();
            hess(i, k) += hik;
            if (k != i) hess(k, i) += hik;
          }
      }

      Eigen::VectorXd step;
      double decrement2 = -1.0;
      double ridge = 0.0;
      for (int attempt = 0; attempt < 8; ++attempt) {
        Eigen::MatrixXd h = hess;
        if (ridge > 0.0) h.diagonal().array() += ridge;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
        if (ldlt.info() == Eigen::Success) {
          step = -ldlt.solve(grad);
          decrement2 = -grad.dot(step);
          if (std::isfinite(decrement2) && decrement2 >= 0.0) break;
        }
        ridge = (ridge == 0.0) ? 1e-12 * (1.0 + hess.diagonal().maxCoeff()) : 100.0 * ridge;
      }
      if (!(decrement2 >= 0.0))
        throw NumericalBreakdown("Newton system lost rank beyond recovery");

      if (0.5 * decrement2 <= newton_tol) {
        centered = true;
        break;
      }

      const double f0 = w(dim) / mu - ev.logdet_sum;
      double alpha = 1.0;
      bool stepped = false;
      while (alpha >= 1e-14) {
        const Eigen::VectorXd trial = w + alpha * step;
        BarrierEval trial_ev = evaluate_barrier(fp, trial.head(dim), trial(dim));
        if (trial_ev.interior &&
            trial(dim) / mu - trial_ev.logdet_sum <= f0 - 0.25 * alpha * decrement2) {
          w = trial;
          stepped = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!stepped) {
        if (decrement2 > 1.0)
          throw NumericalBreakdown("line search stalled far from the central path");
        centered = true;  // stalled with a small decrement: close enough to centered
        break;
      }

      ++out.iterations;
      const double margin = track_best(w.head(dim));
      if (margin <= -1.05 * tol_work) return finish_feasible(w.head(dim));
      if (out.iterations >= opts.max_iterations) {
        out.status = SolveStatus::IterationLimit;
        out.best_margin *= scale;
        out.lower_bound *= scale;
        return out;
      }
      if (opts.verbose)
        std::cerr << "mu=" << mu << " t=" << w(dim) << " margin=" << margin
                  << " decrement2=" << decrement2 << "\n";
    }

    if (centered) {
      // Duality-gap lower bound on the epigraph optimum, valid near the
      // central path; 1.01 covers the residual centering error.
      const double lb = w(dim) - 1.01 * fp.nu * mu;
      out.lower_bound = std::max(out.lower_bound, lb);
      if (out.lower_bound > tol_work) {
        out.status = SolveStatus::Infeasible;
        out.best_margin *= scale;
        out.lower_bound *= scale;
        return out;
      }
    }

    mu *= 0.15;
    if (mu < mu_min) {
      out.status = SolveStatus::IterationLimit;
      out.best_margin *= scale;
      out.lower_bound *= scale;
      return out;
    }
  }
}

CertifyReport certify(const LmiProblem& p, const LmiSolution& v, double tolerance) {
  if (!(tolerance > 0.0)) throw BadParameter("tolerance must be positive");
  CertifyReport report;
  report.residuals = residual(p, v);
  report.margin = *std::max_element(report.residuals.begin(), report.residuals.end());
  report.passed = report.margin <= -tolerance;
  return report;
}

}  // namespace lurenet
