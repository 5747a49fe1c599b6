#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace green {

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  std::size_t evals = 0;
  std::size_t restarts = 0;
};

// Derivative-free simplex descent with standard coefficients. The simplex is
// rebuilt around the incumbent with the initial step whenever it collapses
// (size or spread below tol), until max_evals objective calls are spent.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0, double step, std::size_t max_evals,
                             double tol = 1e-10);

}  // namespace green
