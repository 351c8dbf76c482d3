#pragma once

#include <functional>
#include <span>
#include <vector>

namespace levyprem {

struct NelderMeadOptions {
  int max_iterations = 5000;
  /// Converged once every vertex lies within this inf-norm distance of the best.
  double tolerance = 1e-8;
  /// Initial simplex edge along each coordinate.
  double initial_step = 0.1;
  /// Fresh simplexes rebuilt around the best point after convergence; a
  /// restart that moves the optimum guards against a collapsed simplex.
  int restarts = 1;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimises `f` from `start`. Non-finite objective values count as +inf.
/// The returned value never exceeds f(start).
NelderMeadResult nelder_mead_minimize(const Objective& f, std::vector<double> start,
                                      const NelderMeadOptions& options = {});

}  // namespace levyprem
