#include "lurenet/lmi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lurenet/errors.hpp"

namespace lurenet {

namespace {

void check_triple_dims(int n, int m, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                       const Eigen::VectorXd& Z) {
  if (X.rows() != n || X.cols() != n)
    throw DimensionMismatch("X must be " + std::to_string(n) + "x" + std::to_string(n));
  if (Y.rows() != m || Y.cols() != n)
    throw DimensionMismatch("Y must be " + std::to_string(m) + "x" + std::to_string(n));
  if (Z.size() != m)
    throw DimensionMismatch("Z must have " + std::to_string(m) + " diagonal entries");
}

void validate_sector(const SectorBounds& s) {
  if (s.delta1.size() < 1 || s.delta1.size() != s.delta2.size())
    throw DimensionMismatch("sector bound vectors must be nonempty and equally sized");
  for (Eigen::Index k = 0; k < s.delta1.size(); ++k)
    if (!(s.delta1(k) < s.delta2(k)))
      throw BadParameter("sector needs delta1 < delta2 on channel " + std::to_string(k + 1));
}

double strictness_floor(const AgentDynamics& d) {
  return 1e-7 * (1.0 + d.A.operatorNorm());
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

SectorBounds SectorBounds::saturation(int m) {
  return make_sector(Eigen::VectorXd::Zero(m), Eigen::VectorXd::Ones(m));
}

SectorBounds make_sector(Eigen::VectorXd delta1, Eigen::VectorXd delta2) {
  SectorBounds s{std::move(delta1), std::move(delta2)};
  validate_sector(s);
  return s;
}

LmiProblem assemble_undirected(const AgentDynamics& d, const SectorBounds& s,
                               double lambda2, double lambdaN, double eps) {
  validate_sector(s);
  if (s.channels() != d.m())
    throw DimensionMismatch("sector channel count must match input dimension");
  if (!(lambda2 > 0.0) || !(lambda2 <= lambdaN))
    throw BadEigenvalues("need 0 < lambda2 <= lambdaN");
  if (eps < 0.0) throw BadParameter("eps must be nonnegative");

  const int n = d.n();
  const int m = d.m();
  LmiProblem p;
  p.n = n;
  p.m = m;
  p.eta = strictness_floor(d);

  const Eigen::MatrixXd A = d.A;
  const Eigen::MatrixXd B = d.B;
  const Eigen::VectorXd d1 = s.delta1;
  const Eigen::VectorXd d2 = s.delta2;

  auto add_block = [&](const std::string& name, double lambda) {
    p.blocks.push_back(LmiBlock{
        name, n + m,
        [A, B, d1, d2, lambda, eps, n, m](const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                                          const Eigen::VectorXd& Z) {
          check_triple_dims(n, m, X, Y, Z);
          const Eigen::MatrixXd core = A * X + lambda * B * d2.asDiagonal() * Y;
          const Eigen::MatrixXd ul = core + core.transpose() + eps * X;
          const Eigen::MatrixXd ur =
              B * Z.asDiagonal() + 0.5 * lambda * Y.transpose() * (d1 - d2).asDiagonal();
          Eigen::MatrixXd block(n + m, n + m);
          block.topLeftCorner(n, n) = ul;
          block.topRightCorner(n, m) = ur;
          block.bottomLeftCorner(m, n) = ur.transpose();
          block.bottomRightCorner(m, m) = Eigen::MatrixXd((-Z).asDiagonal());
          return block;
        }});
  };
  add_block("lambda2", lambda2);
  add_block("lambdaN", lambdaN);
  return p;
}

LmiProblem assemble_directed_cycle(const AgentDynamics& d, const SectorBounds& s,
                                   int n_agents, double eps, bool literal) {
  validate_sector(s);
  if (s.channels() != d.m())
    throw DimensionMismatch("sector channel count must match input dimension");
  if (n_agents < 2) throw BadSize("directed cycle needs at least two agents");
  if (eps < 0.0) throw BadParameter("eps must be nonnegative");

  const int n = d.n();
  const int m = d.m();
  LmiProblem p;
  p.n = n;
  p.m = m;
  p.eta = strictness_floor(d);

  const Eigen::MatrixXd A = d.A;
  const Eigen::MatrixXd B = d.B;
  const Eigen::VectorXd sum = s.delta1 + s.delta2;
  const Eigen::VectorXd diff = s.delta1 - s.delta2;

  for (int i = 2; i <= n_agents; ++i) {
    const double theta = 2.0 * std::numbers::pi * (i - 1) / n_agents;
    const double lam_re = 1.0 - std::cos(theta);
    const double lam_abs = std::sqrt(2.0 * lam_re);
    const double sin_th = std::sin(theta);

    Eigen::VectorXd dhat, dtilde;
    if (literal) {
      dhat = lam_abs * diff;
      dtilde = lam_re * sum - dhat;
    } else {
      dhat = 0.5 * lam_abs * diff;
      dtilde = lam_re * sum - 2.0 * dhat;
    }

    p.blocks.push_back(LmiBlock{
        "cycle i=" + std::to_string(i), 2 * (n + m),
        [A, B, sum, dhat, dtilde, sin_th, literal, eps, n,
         m](const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, const Eigen::VectorXd& Z) {
          check_triple_dims(n, m, X, Y, Z);
          const Eigen::MatrixXd core = A * X + 0.5 * B * dtilde.asDiagonal() * Y;
          const Eigen::MatrixXd ul = core + core.transpose() + eps * X;
          const Eigen::MatrixXd ur = B * Z.asDiagonal() + Y.transpose() * dhat.asDiagonal();
          Eigen::MatrixXd t_block(n + m, n + m);
          t_block.topLeftCorner(n, n) = ul;
          t_block.topRightCorner(n, m) = ur;
          t_block.bottomLeftCorner(m, n) = ur.transpose();
          t_block.bottomRightCorner(m, m) = Eigen::MatrixXd((-Z).asDiagonal());

          const Eigen::MatrixXd w = B * sum.asDiagonal() * Y;
          const Eigen::MatrixXd coupling =
              literal ? Eigen::MatrixXd(-0.5 * sin_th * (w + w.transpose()))
                      : Eigen::MatrixXd(-0.5 * sin_th * (w - w.transpose()));
          Eigen::MatrixXd ext = Eigen::MatrixXd::Zero(n + m, n + m);
          ext.topLeftCorner(n, n) = coupling;

          const int half = n + m;
          Eigen::MatrixXd block(2 * half, 2 * half);
          block.topLeftCorner(half, half) = t_block;
          block.topRightCorner(half, half) = -ext;
          block.bottomLeftCorner(half, half) = -ext.transpose();
          block.bottomRightCorner(half, half) = t_block;
          return block;
        }});
  }
  return p;
}

std::vector<double> jacobi_eigenvalues(const Eigen::MatrixXd& sym) {
  const int n = static_cast<int>(sym.rows());
  if (n == 0) return {};
  if (sym.cols() != n) throw DimensionMismatch("jacobi needs a square matrix");
  Eigen::MatrixXd a = 0.5 * (sym + sym.transpose());
  if (n == 1) return {a(0, 0)};

  const double frob2 = a.squaredNorm();
  const double stop = 1e-28 * std::max(1.0, frob2);
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off2 = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off2 += a(i, j) * a(i, j);
    if (off2 <= stop) break;
    for (int pp = 0; pp < n - 1; ++pp) {
      for (int q = pp + 1; q < n; ++q) {
        const double apq = a(pp, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(pp, pp)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int k = 0; k < n; ++k) {
          if (k == pp || k == q) continue;
          const double akp = a(k, pp);
          const double akq = a(k, q);
          a(k, pp) = a(pp, k) = c * akp - sn * akq;
          a(k, q) = a(q, k) = sn * akp + c * akq;
        }
        const double app = a(pp, pp);
        const double aqq = a(q, q);
        a(pp, pp) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(pp, q) = a(q, pp) = 0.0;
      }
    }
  }
  std::vector<double> evs(n);
  for (int i = 0; i < n; ++i) evs[i] = a(i, i);
  std::sort(evs.begin(), evs.end());
  return evs;
}

std::vector<double> residual(const LmiProblem& p, const LmiSolution& v) {
  check_triple_dims(p.n, p.m, v.X, v.Y, v.Z);
  std::vector<double> out;
  out.reserve(p.blocks.size() + 2);
  for (const auto& block : p.blocks)
    out.push_back(jacobi_eigenvalues(block.eval(v.X, v.Y, v.Z)).back());
  out.push_back(-jacobi_eigenvalues(v.X).front());
  if (p.m > 0) out.push_back(-v.Z.minCoeff());
  return out;
}

double schur_condition_residual(const AgentDynamics& d, const SectorBounds& s,
                                double eps, double lambda, const LmiSolution& v) {
  check_triple_dims(d.n(), d.m(), v.X, v.Y, v.Z);
  if (v.Z.minCoeff() <= 0.0)
    throw IllConditioned("Schur-complemented condition needs Z > 0");
  const Eigen::MatrixXd coupled = lambda * d.B * s.delta2.asDiagonal() * v.Y;
  const Eigen::MatrixXd g =
      d.B * v.Z.asDiagonal() + 0.5 * lambda * v.Y.transpose() * (s.delta1 - s.delta2).asDiagonal();
  Eigen::MatrixXd cond = v.X * d.A.transpose() + d.A * v.X + eps * v.X + coupled +
                         coupled.transpose() + g * v.Z.cwiseInverse().asDiagonal() * g.transpose();
  return jacobi_eigenvalues(cond).back();
}

std::vector<std::string> decision_labels(const LmiProblem& p) {
  std::vector<std::string> labels;
  labels.reserve(p.decision_count());
  for (int j = 0; j < p.n; ++j)
    for (int i = 0; i <= j; ++i)
      labels.push_back("X(" + std::to_string(i) + "," + std::to_string(j) + ")");
  for (int k = 0; k < p.m; ++k)
    for (int j = 0; j < p.n; ++j)
      labels.push_back("Y(" + std::to_string(k) + "," + std::to_string(j) + ")");
  for (int k = 0; k < p.m; ++k) labels.push_back("Z(" + std::to_string(k) + ")");
  return labels;
}

LmiSolution decision_basis(const LmiProblem& p, int idx) {
  const int x_count = p.n * (p.n + 1) / 2;
  const int y_count = p.m * p.n;
  if (idx < 0 || idx >= p.decision_count())
    throw DimensionMismatch("decision index out of range");
  LmiSolution v;
  v.X = Eigen::MatrixXd::Zero(p.n, p.n);
  v.Y = Eigen::MatrixXd::Zero(p.m, p.n);
  v.Z = Eigen::VectorXd::Zero(p.m);
  if (idx < x_count) {
    int rem = idx;
    for (int j = 0; j < p.n; ++j) {
      if (rem <= j) {
        v.X(rem, j) = 1.0;
        v.X(j, rem) = 1.0;
        return v;
      }
      rem -= j + 1;
    }
  } else if (idx < x_count + y_count) {
    const int rem = idx - x_count;
    v.Y(rem / p.n, rem % p.n) = 1.0;
  } else {
    v.Z(idx - x_count - y_count) = 1.0;
  }
  return v;
}

nlohmann::json problem_to_json(const LmiProblem& p) {
  nlohmann::json j;
  j["n"] = p.n;
  j["m"] = p.m;
  j["eta"] = p.eta;
  j["variables"] = decision_labels(p);
  const LmiSolution zero{Eigen::MatrixXd::Zero(p.n, p.n), Eigen::MatrixXd::Zero(p.m, p.n),
                         Eigen::VectorXd::Zero(p.m)};
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& block : p.blocks) {
    nlohmann::json entry;
    entry["name"] = block.name;
    entry["size"] = block.size;
    const Eigen::MatrixXd constant = block.eval(zero.X, zero.Y, zero.Z);
    entry["constant"] = matrix_to_json(constant);
    nlohmann::json coeffs = nlohmann::json::array();
    for (int idx = 0; idx < p.decision_count(); ++idx) {
      const LmiSolution basis = decision_basis(p, idx);
      coeffs.push_back(matrix_to_json(block.eval(basis.X, basis.Y, basis.Z) - constant));
    }
    entry["coefficients"] = std::move(coeffs);
    blocks.push_back(std::move(entry));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

}  // namespace lurenet
