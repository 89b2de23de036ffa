#include "lurenet/graph.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lurenet/errors.hpp"

namespace lurenet {

namespace {

constexpr double kWeightTol = 1e-12;

bool approx_zero_eig(const std::complex<double>& ev, double spectral_radius) {
  return std::abs(ev) <= 1e-9 * std::max(1.0, spectral_radius);
}

void sort_by_real_then_imag(std::vector<std::complex<double>>& evs) {
  std::sort(evs.begin(), evs.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

LaplacianSpectrum finish_spectrum(std::vector<std::complex<double>> evs) {
  sort_by_real_then_imag(evs);
  double radius = 0.0;
  for (const auto& ev : evs) radius = std::max(radius, std::abs(ev));
  int zeros = 0;
  for (const auto& ev : evs)
    if (approx_zero_eig(ev, radius)) ++zeros;
  if (zeros != 1)
    throw NoSpanningTree("expected exactly one zero Laplacian eigenvalue, found " +
                         std::to_string(zeros));
  LaplacianSpectrum s;
  s.eigenvalues = std::move(evs);
  // The zero eigenvalue sorts first for graphs with a spanning tree
  // (nonzero eigenvalues have positive real part), so the extremes are
  // simply the second and last entries.
  s.lambda2 = s.eigenvalues[1];
  s.lambdaN = s.eigenvalues.back();
  return s;
}

}  // namespace

Graph::Graph(Eigen::MatrixXd weights, bool directed)
    : weights_(std::move(weights)), directed_(directed) {
  const auto n = weights_.rows();
  if (n < 1 || weights_.cols() != n)
    throw BadParameter("weight matrix must be square and nonempty");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(weights_(i, i)) > kWeightTol)
      throw BadParameter("self-weight a_ii must be zero at vertex " + std::to_string(i + 1));
    weights_(i, i) = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (weights_(i, j) < 0.0)
        throw BadParameter("negative edge weight at (" + std::to_string(i + 1) + "," +
                           std::to_string(j + 1) + ")");
      if (!directed_ && std::abs(weights_(i, j) - weights_(j, i)) > kWeightTol)
        throw BadParameter("undirected graph requires a symmetric weight matrix");
    }
  }
}

Graph Graph::complete(int n_agents) {
  if (n_agents < 1) throw BadSize("complete graph needs at least one agent");
  Eigen::MatrixXd w = Eigen::MatrixXd::Ones(n_agents, n_agents);
  w.diagonal().setZero();
  return Graph(std::move(w), false);
}

Graph Graph::path(int n_agents) {
  if (n_agents < 1) throw BadSize("path graph needs at least one agent");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n_agents, n_agents);
  for (int i = 0; i + 1 < n_agents; ++i) {
    w(i, i + 1) = 1.0;
    w(i + 1, i) = 1.0;
  }
  return Graph(std::move(w), false);
}

Graph Graph::directed_cycle(int n_agents) {
  if (n_agents < 2) throw BadSize("directed cycle needs at least two agents");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n_agents, n_agents);
  for (int i = 0; i < n_agents; ++i) w(i, (i + 1) % n_agents) = 1.0;
  return Graph(std::move(w), true);
}

Eigen::MatrixXd laplacian(const Graph& g) {
  const Eigen::MatrixXd& a = g.weights();
  Eigen::MatrixXd lap = -a;
  lap.diagonal() = a.rowwise().sum();
  return lap;
}

bool is_balanced(const Graph& g) {
  const Eigen::MatrixXd& a = g.weights();
  const Eigen::VectorXd in = a.rowwise().sum();
  const Eigen::VectorXd out = a.colwise().sum().transpose();
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return ((in - out).cwiseAbs().maxCoeff() <= 1e-9 * scale);
}

bool has_spanning_tree(const Graph& g) {
  const Eigen::MatrixXd& a = g.weights();
  const int n = g.size();
  std::vector<char> seen(n);
  std::vector<int> stack;
  for (int root = 0; root < n; ++root) {
    std::fill(seen.begin(), seen.end(), 0);
    stack.assign(1, root);
    seen[root] = 1;
    int count = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      // v sends information to i when a_iv > 0.
      for (int i = 0; i < n; ++i) {
        if (!seen[i] && a(i, v) > 0.0) {
          seen[i] = 1;
          ++count;
          stack.push_back(i);
        }
      }
    }
    if (count == n) return true;
  }
  return false;
}

LaplacianSpectrum spectrum(const Graph& g) {
  const Eigen::MatrixXd lap = laplacian(g);
  std::vector<std::complex<double>> evs;
  evs.reserve(g.size());
  if (!g.directed()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
    if (solver.info() != Eigen::Success)
      throw NumericalBreakdown("symmetric eigensolver failed on Laplacian");
    for (Eigen::Index i = 0; i < lap.rows(); ++i)
      evs.emplace_back(solver.eigenvalues()(i), 0.0);
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(lap, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
      throw NumericalBreakdown("general eigensolver failed on Laplacian");
    for (Eigen::Index i = 0; i < lap.rows(); ++i) evs.push_back(solver.eigenvalues()(i));
  }
  return finish_spectrum(std::move(evs));
}

LaplacianSpectrum cycle_spectrum(int n_agents) {
  if (n_agents < 2) throw BadSize("cycle spectrum needs at least two agents");
  std::vector<std::complex<double>> evs;
  evs.reserve(n_agents);
  for (int i = 1; i <= n_agents; ++i) {
    const double theta = 2.0 * std::numbers::pi * (i - 1) / n_agents;
    evs.emplace_back(1.0 - std::cos(theta), -std::sin(theta));
  }
  evs[0] = {0.0, 0.0};
  return finish_spectrum(std::move(evs));
}

bool is_unweighted_directed_cycle(const Graph& g) {
  if (!g.directed() || g.size() < 2) return false;
  const Eigen::MatrixXd& a = g.weights();
  const int n = g.size();
  std::vector<int> successor(n, -1);  // successor[i] = the vertex i listens to
  std::vector<int> in_count(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (a(i, j) == 0.0) continue;
      if (std::abs(a(i, j) - 1.0) > kWeightTol) return false;
      if (successor[i] != -1) return false;
      successor[i] = j;
      ++in_count[j];
    }
    if (successor[i] == -1) return false;
  }
  for (int j = 0; j < n; ++j)
    if (in_count[j] != 1) return false;
  // Walk the permutation: a single cycle must visit all vertices.
  int v = 0;
  for (int step = 1; step < n; ++step) {
    v = successor[v];
    if (v == 0) return false;
  }
  return successor[v] == 0;
}

}  // namespace lurenet
