#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lurenet {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoSpanningTree : public Error { public: using Error::Error; };
class BadSize : public Error { public: using Error::Error; };
class BadParameter : public Error { public: using Error::Error; };
class BadEigenvalues : public Error { public: using Error::Error; };
class DimensionMismatch : public Error { public: using Error::Error; };
class IllConditioned : public Error { public: using Error::Error; };
class NumericalBreakdown : public Error { public: using Error::Error; };
class SectorViolation : public Error { public: using Error::Error; };
class UnsupportedTopology : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };

/// One of the model assumptions (A1 stabilizable, A2 spectrum in the closed
/// left half plane, A3 balanced + spanning tree) does not hold.
class AssumptionViolated : public Error {
 public:
  AssumptionViolated(std::string assumption, const std::string& detail)
      : Error(assumption + " violated: " + detail), assumption_(std::move(assumption)) {}
  const std::string& assumption() const { return assumption_; }

 private:
  std::string assumption_;
};

/// The LMI problem was proven infeasible. Carries the best feasibility
/// margin seen and the index of the constraint that blocked it.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, double best_margin, int blocking_block)
      : Error(what), best_margin_(best_margin), blocking_block_(blocking_block) {}
  double best_margin() const { return best_margin_; }
  int blocking_block() const { return blocking_block_; }

 private:
  double best_margin_;
  int blocking_block_;
};

/// Simulation state norm blew past the divergence guard.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double time)
      : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

}  // namespace lurenet
