#include "green/psh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace green::psh {

using ideal::DomainKind;

NegativeReport check_negative(const FunctionHandle& u, std::size_t samples, std::uint64_t seed) {
  if (samples < 100) throw ContractViolation("check_negative: at least 100 samples required");
  Rng rng = make_rng(seed, 0x4E47);
  NegativeReport rep;
  for (std::size_t i = 0; i < samples; ++i) {
    const Point z = u.domain.sample(rng, 1.0);
    if (!u.domain.contains_open(z)) continue;
    const ExtReal v = u(z);
    ++rep.samples;
    if (rep.worst.empty() || v > rep.max_value) {
      rep.max_value = v;
      rep.worst = z;
    }
    if (v > ExtReal(kNegativeTolerance)) ++rep.violations;
  }
  rep.pass = rep.violations == 0;
  return rep;
}

namespace {

// Largest radius keeping the circle c + t v, |t| <= r, inside the domain.
double max_radius(const ideal::DomainSpec& d, PointView c, PointView v) {
  if (d.kind == DomainKind::ball) return 1.0 - norm(c);
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (std::abs(v[j]) > 0.0) r = std::min(r, (1.0 - std::abs(c[j])) / std::abs(v[j]));
  }
  return r;
}

// Trapezoid mean of u on the circle; nullopt if any sample is -inf.
std::optional<double> circle_mean(const FunctionHandle& u, PointView c, PointView v, double r,
                                  std::size_t points) {
  double s = 0.0;
  Point z(c.size());
  for (std::size_t i = 0; i < points; ++i) {
    const Complex t = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(points));
    for (std::size_t j = 0; j < c.size(); ++j) z[j] = c[j] + t * v[j];
    const ExtReal val = u(z);
    if (val.is_neg_inf()) return std::nullopt;
    s += val.value();
  }
  return s / static_cast<double>(points);
}

}  // namespace

PshReport check_psh_lines(const FunctionHandle& u, std::size_t lines, std::size_t circle_points,
                          const std::vector<double>& radii, double tol, std::uint64_t seed) {
  if (circle_points < 8) throw ContractViolation("check_psh_lines: too few circle points");
  if (radii.empty()) throw ContractViolation("check_psh_lines: no radii");
  Rng rng = make_rng(seed, 0x7053);
  PshReport rep;
  for (std::size_t l = 0; l < lines; ++l) {
    const Point c = u.domain.sample(rng, 0.95);
    const Point v = unit_sphere_point(rng, u.domain.dim);
    const ExtReal uc = u(c);
    const double rmax = 0.99 * max_radius(u.domain, c, v);
    for (double r0 : radii) {
      const double r = std::min(r0, rmax);
      if (!(r > 0.0)) continue;
      ++rep.checks;
      if (uc.is_neg_inf()) continue;
      auto m = circle_mean(u, c, v, r, circle_points);
      if (!m) {
        ++rep.skipped;
        continue;
      }
      double excess = uc.value() - *m;
      if (excess > tol) {
        // quadrature near a logarithmic pole can under-resolve the mean
        auto m2 = circle_mean(u, c, v, r, 16 * circle_points);
        if (m2 && uc.value() - *m2 <= tol) excess = uc.value() - *m2;
      }
      if (excess > tol) {
        auto m3 = circle_mean(u, c, v, 0.97 * r, 16 * circle_points);
        if (m3 && uc.value() - *m3 <= tol) excess = uc.value() - *m3;
      }
      rep.worst_excess = std::max(rep.worst_excess, excess);
      if (excess > tol) rep.violations.push_back({c, v, r, uc.value(), uc.value() - excess});
    }
  }
  rep.pass = rep.violations.empty();
  return rep;
}

std::vector<double> default_log_bound_radii() { return {1e-1, 1e-2, 1e-3, 1e-4}; }

LogBoundReport check_log_bound(const FunctionHandle& u, const ideal::IdealSpec& A,
                               const std::vector<Point>& anchors, const std::vector<double>& radii,
                               std::size_t samples, std::uint64_t seed) {
  if (anchors.empty()) throw ContractViolation("check_log_bound: no anchors");
  if (radii.size() < 2) throw ContractViolation("check_log_bound: at least two radii required");
  for (const auto& y : anchors) {
    if (!(A.abs_psi(y) < 1e-10)) throw ContractViolation("check_log_bound: anchor not on |A|");
  }
  Rng rng = make_rng(seed, 0x10B0);
  LogBoundReport rep;
  rep.radii = radii;
  for (double r : radii) {
    double C = -std::numeric_limits<double>::infinity();
    for (const auto& y : anchors) {
      for (std::size_t k = 0; k < samples; ++k) {
        const Point dir = unit_sphere_point(rng, A.dim());
        const double rho = r * (0.5 + 0.5 * uniform01(rng));
        Point x = y;
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += rho * dir[j];
        if (!A.domain().contains_open(x)) continue;
        const ExtReal lp = A.log_abs_psi(x);
        if (lp.is_neg_inf()) continue;
        const ExtReal v = u(x);
        if (v.is_neg_inf()) continue;
        ++rep.samples_used;
        C = std::max(C, v.value() - lp.value());
      }
    }
    rep.C_by_radius.push_back(C);
  }
  if (rep.samples_used == 0) throw InconclusiveError("check_log_bound: no valid sample points");
  const double last = rep.C_by_radius.back();
  const double prev = rep.C_by_radius[rep.C_by_radius.size() - 2];
  rep.C_estimate = *std::max_element(rep.C_by_radius.begin(), rep.C_by_radius.end());
  rep.pass = std::isfinite(last) && std::isfinite(prev) && std::abs(last - prev) < 0.5;
  return rep;
}

std::vector<double> default_lelong_radii() { return {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

LelongReport lelong_radial(const FunctionHandle& u, PointView a, const std::vector<double>& radii,
                           std::size_t sphere_samples, std::uint64_t seed) {
  if (!u.domain.contains_open(a)) throw ContractViolation("lelong_radial: point outside the domain");
  if (radii.empty() || sphere_samples == 0) throw ContractViolation("lelong_radial: empty sampling");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0 && radii[i] < 1.0) || (i > 0 && !(radii[i] < radii[i - 1]))) {
      throw ContractViolation("lelong_radial: radii must decrease strictly within (0, 1)");
    }
  }
  if (radii.back() < 1e-6) throw ContractViolation("lelong_radial: smallest radius below 1e-6");

  Rng rng = make_rng(seed, 0x1E10);
  std::vector<Point> dirs;
  for (std::size_t k = 0; k < sphere_samples; ++k) dirs.push_back(unit_sphere_point(rng, a.size()));

  LelongReport rep;
  rep.point.assign(a.begin(), a.end());
  rep.radii = radii;
  for (double r : radii) {
    ExtReal sup = ExtReal::neg_inf();
    bool any = false;
    Point x(a.size());
    for (const auto& d : dirs) {
      for (std::size_t j = 0; j < x.size(); ++j) x[j] = a[j] + r * d[j];
      if (!u.domain.contains_open(x)) continue;
      sup = max(sup, u(x));
      any = true;
    }
    if (!any || sup.is_neg_inf()) {
      rep.final = std::numeric_limits<double>::infinity();
      return rep;
    }
    rep.sup_values.push_back(sup.value());
    rep.ratios.push_back(sup.value() / std::log(r));
  }
  for (std::size_t i = 1; i < radii.size(); ++i) {
    rep.slope_estimates.push_back((rep.sup_values[i] - rep.sup_values[i - 1]) /
                                  (std::log(radii[i]) - std::log(radii[i - 1])));
  }
  if (rep.slope_estimates.empty()) {
    rep.final = rep.ratios.back();
  } else {
    rep.final = rep.slope_estimates.back();
    rep.stabilized = rep.slope_estimates.size() >= 2 &&
                     std::abs(rep.slope_estimates.back() - rep.slope_estimates[rep.slope_estimates.size() - 2]) < 0.05;
  }
  return rep;
}

}  // namespace green::psh
