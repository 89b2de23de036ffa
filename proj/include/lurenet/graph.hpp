#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace lurenet {

/// Weighted communication digraph of N agents. weight(i, j) = a_ij > 0 means
/// agent i receives information from agent j. Immutable after construction.
class Graph {
 public:
  /// Validates nonnegative weights, zero diagonal, and (for undirected
  /// graphs) symmetry. Throws BadParameter on violation.
  Graph(Eigen::MatrixXd weights, bool directed);

  /// All-to-all undirected graph with unit weights.
  static Graph complete(int n_agents);
  /// Undirected chain 1 - 2 - ... - N with unit weights.
  static Graph path(int n_agents);
  /// Unweighted directed cycle where agent i receives from agent i+1 (mod N);
  /// its Laplacian is the circulant with first row (1, -1, 0, ..., 0).
  static Graph directed_cycle(int n_agents);

  int size() const { return static_cast<int>(weights_.rows()); }
  const Eigen::MatrixXd& weights() const { return weights_; }
  bool directed() const { return directed_; }

 private:
  Eigen::MatrixXd weights_;
  bool directed_;
};

/// Laplacian eigenvalues sorted by real part, then imaginary part.
/// lambda2 and lambdaN are the extreme nonzero eigenvalues in that order.
struct LaplacianSpectrum {
  std::vector<std::complex<double>> eigenvalues;
  std::complex<double> lambda2;
  std::complex<double> lambdaN;
};

/// L = D - A with D = diag(row sums of A). Every row sums to zero.
Eigen::MatrixXd laplacian(const Graph& g);

/// True iff in-degree equals out-degree at every vertex (within tolerance).
bool is_balanced(const Graph& g);

/// True iff some root vertex reaches every other vertex along the direction
/// of information flow (an edge a_ij > 0 carries information from j to i).
bool has_spanning_tree(const Graph& g);

/// All N Laplacian eigenvalues. Undirected graphs use a symmetric
/// eigensolver; directed graphs a general complex one. Throws NoSpanningTree
/// if more than one eigenvalue is zero within tolerance.
LaplacianSpectrum spectrum(const Graph& g);

/// Analytic spectrum of the unweighted directed N-cycle:
/// lambda_i = (1 - cos(2*pi*(i-1)/N)) - j*sin(2*pi*(i-1)/N). Throws BadSize
/// for N < 2.
LaplacianSpectrum cycle_spectrum(int n_agents);

/// Structural test used by synthesis to dispatch to the directed-cycle
/// theorem: directed flag set, every vertex has exactly one in-edge and one
/// out-edge of weight 1, and the edges form a single cycle.
bool is_unweighted_directed_cycle(const Graph& g);

}  // namespace lurenet
