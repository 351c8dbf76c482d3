#include "levyprem/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "levyprem/errors.hpp"

namespace levyprem {
namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

struct Search {
  const Objective& f;
  int evaluations = 0;

  double eval(const std::vector<double>& x) {
    ++evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  }
};

double diameter(const std::vector<std::vector<double>>& simplex, std::size_t best) {
  double d = 0.0;
  for (const auto& vertex : simplex) {
    for (std::size_t i = 0; i < vertex.size(); ++i) {
      d = std::max(d, std::abs(vertex[i] - simplex[best][i]));
    }
  }
  return d;
}

// One Nelder-Mead run from `start`. Returns iterations used.
int run(Search& search, std::vector<double>& best_x, double& best_value, double step,
        int iteration_budget, double tolerance, bool& converged) {
  const std::size_t dim = best_x.size();
  std::vector<std::vector<double>> simplex(dim + 1, best_x);
  std::vector<double> values(dim + 1, best_value);
  for (std::size_t i = 0; i < dim; ++i) {
    simplex[i + 1][i] += step;
    values[i + 1] = search.eval(simplex[i + 1]);
  }

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), trial(dim), second(dim);
  int iterations = 0;
  converged = false;
  while (iterations < iteration_budget) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t lo = order.front();
    const std::size_t hi = order.back();
    const std::size_t next_hi = order[dim - 1];
    if (diameter(simplex, lo) < tolerance) {
      converged = true;
      break;
    }
    ++iterations;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t v = 0; v <= dim; ++v) {
      if (v == hi) continue;
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[v][i];
    }
    for (auto& c : centroid) c /= static_cast<double>(dim);

    for (std::size_t i = 0; i < dim; ++i) {
      trial[i] = centroid[i] + kReflect * (centroid[i] - simplex[hi][i]);
    }
    const double reflected = search.eval(trial);

    if (reflected < values[lo]) {
      for (std::size_t i = 0; i < dim; ++i) {
        second[i] = centroid[i] + kExpand * (trial[i] - centroid[i]);
      }
      const double expanded = search.eval(second);
      if (expanded < reflected) {
        simplex[hi] = second;
        values[hi] = expanded;
      } else {
        simplex[hi] = trial;
        values[hi] = reflected;
      }
      continue;
    }
    if (reflected < values[next_hi]) {
      simplex[hi] = trial;
      values[hi] = reflected;
      continue;
    }

    const bool outside = reflected < values[hi];
    const std::vector<double>& anchor = outside ? trial : simplex[hi];
    for (std::size_t i = 0; i < dim; ++i) {
      second[i] = centroid[i] + kContract * (anchor[i] - centroid[i]);
    }
    const double contracted = search.eval(second);
    if (contracted < std::min(reflected, values[hi])) {
      simplex[hi] = second;
      values[hi] = contracted;
      continue;
    }

    for (std::size_t v = 0; v <= dim; ++v) {
      if (v == lo) continue;
      for (std::size_t i = 0; i < dim; ++i) {
        simplex[v][i] = simplex[lo][i] + kShrink * (simplex[v][i] - simplex[lo][i]);
      }
      values[v] = search.eval(simplex[v]);
    }
  }

  const auto best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  if (values[best] < best_value) {
    best_value = values[best];
    best_x = simplex[best];
  }
  return iterations;
}

}  // namespace

NelderMeadResult nelder_mead_minimize(const Objective& f, std::vector<double> start,
                                      const NelderMeadOptions& options) {
  if (start.empty()) throw InvalidParameter("nelder_mead_minimize: empty start vector");
  Search search{f};
  NelderMeadResult result;
  result.x = std::move(start);
  result.value = search.eval(result.x);

  double step = options.initial_step;
  for (int attempt = 0; attempt <= options.restarts; ++attempt) {
    const double before = result.value;
    const std::vector<double> before_x = result.x;
    bool converged = false;
    result.iterations += run(search, result.x, result.value, step,
                             options.max_iterations - result.iterations, options.tolerance,
                             converged);
    result.converged = converged;
    if (!converged || result.iterations >= options.max_iterations) break;
    // A restart that cannot move the optimum confirms convergence.
    double moved = 0.0;
    for (std::size_t i = 0; i < before_x.size(); ++i) {
      moved = std::max(moved, std::abs(result.x[i] - before_x[i]));
    }
    if (attempt > 0 && moved < options.tolerance && before - result.value <= 0.0) break;
    step = std::max(options.tolerance * 100.0, std::min(step, 10.0 * moved));
  }
  result.evaluations = search.evaluations;
  return result;
}

}  // namespace levyprem
