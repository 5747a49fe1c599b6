#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "green/function_handle.hpp"
#include "green/ideal.hpp"

namespace green::psh {

struct NegativeReport {
  bool pass = false;
  std::size_t samples = 0;
  std::size_t violations = 0;
  ExtReal max_value = ExtReal::neg_inf();
  Point worst;
};

inline constexpr double kNegativeTolerance = 1e-12;

// u <= 1e-12 at `samples` uniform interior points.
NegativeReport check_negative(const FunctionHandle& u, std::size_t samples, std::uint64_t seed);

struct PshViolation {
  Point center;
  Point direction;
  double radius = 0.0;
  double center_value = 0.0;
  double circle_mean = 0.0;
};

struct PshReport {
  bool pass = false;
  std::size_t checks = 0;   // (line, radius) pairs evaluated
  std::size_t skipped = 0;  // pairs with -inf on the circle
  double worst_excess = -std::numeric_limits<double>::infinity();  // max u(c) - mean
  std::vector<PshViolation> violations;
};

inline constexpr double kPshTolerance = 1e-7;

// Sub-mean-value inequality u(c) <= mean_{|t|=r} u(c + t v) + tol on random
// complex lines. Radii are shrunk per line so that circles stay inside the
// domain. A suspected violation is re-checked with 16x the circle points and
// at 0.97 r before it is reported.
PshReport check_psh_lines(const FunctionHandle& u, std::size_t lines, std::size_t circle_points,
                          const std::vector<double>& radii, double tol, std::uint64_t seed);

class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LogBoundReport {
  bool pass = false;
  double C_estimate = 0.0;
  std::vector<double> radii;
  std::vector<double> C_by_radius;  // max of u - log|psi| on the shell at each radius
  std::size_t samples_used = 0;
};

// Geometric radii 1e-1, 1e-2, 1e-3, 1e-4.
std::vector<double> default_log_bound_radii();

// max of u(x) - log|psi(x)| over shells r/2 <= |x - y| <= r around anchors
// y on |A|; pass iff finite and the values at the two smallest radii differ
// by less than 0.5.
LogBoundReport check_log_bound(const FunctionHandle& u, const ideal::IdealSpec& A,
                               const std::vector<Point>& anchors, const std::vector<double>& radii,
                               std::size_t samples, std::uint64_t seed = 0);

struct LelongReport {
  Point point;
  std::vector<double> radii;
  std::vector<double> sup_values;
  // secant slopes (S_i - S_{i-1}) / (log r_i - log r_{i-1}), one per consecutive pair
  std::vector<double> slope_estimates;
  // S_i / log r_i
  std::vector<double> ratios;
  double final = 0.0;       // last secant slope; +infinity when u is -inf near a
  bool stabilized = false;  // last two slopes within 0.05
};

std::vector<double> default_lelong_radii();

// Radial Lelong number estimate at a; the same sphere directions are used
// at every radius.
LelongReport lelong_radial(const FunctionHandle& u, PointView a, const std::vector<double>& radii,
                           std::size_t sphere_samples, std::uint64_t seed);

}  // namespace green::psh
