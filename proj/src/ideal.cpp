#include "green/ideal.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace green::ideal {

using poly::MultiPoly;
using poly::Order;

// ------------------------------------------------------------------ domain

DomainSpec::DomainSpec(DomainKind k, std::size_t n) : kind(k), dim(n) {
  if (n == 0) throw ContractViolation("DomainSpec: dimension must be positive");
}

double DomainSpec::gauge(PointView z) const {
  if (z.size() != dim) throw ContractViolation("DomainSpec: dimension mismatch");
  if (kind == DomainKind::ball) return norm(z);
  double m = 0.0;
  for (const auto& c : z) m = std::max(m, std::abs(c));
  return m;
}

Point DomainSpec::sample(Rng& rng, double radius) const {
  if (kind == DomainKind::polydisc) {
    Point p(dim);
    for (auto& c : p) c = uniform_in_disc(rng, radius);
    return p;
  }
  Point p = unit_sphere_point(rng, dim);
  const double r = radius * std::pow(uniform01(rng), 1.0 / (2.0 * static_cast<double>(dim)));
  for (auto& c : p) c *= r;
  return p;
}

std::string to_string(DomainKind k) { return k == DomainKind::ball ? "ball" : "polydisc"; }

// ------------------------------------------------------------------- ideal

IdealSpec::IdealSpec(DomainSpec domain, std::vector<MultiPoly> generators)
    : domain_(domain), generators_(std::move(generators)) {
  if (generators_.empty()) throw ContractViolation("IdealSpec: at least one generator required");
  for (const auto& g : generators_) {
    if (g.n_vars() != domain_.dim) throw ContractViolation("IdealSpec: generator dimension mismatch");
    if (g.is_zero()) throw ContractViolation("IdealSpec: identically zero generator");
  }
}

int IdealSpec::max_degree() const {
  int d = 0;
  for (const auto& g : generators_) d = std::max(d, g.total_degree());
  return d;
}

Point IdealSpec::values(PointView z) const {
  Point v;
  v.reserve(generators_.size());
  for (const auto& g : generators_) v.push_back(poly::eval_multi(g, z));
  return v;
}

double IdealSpec::abs_psi(PointView z) const { return norm(values(z)); }

ProperMapSpec::ProperMapSpec(std::vector<std::uint32_t> k) : exponents(std::move(k)) {
  if (exponents.empty()) throw ContractViolation("ProperMapSpec: empty exponent list");
  for (auto e : exponents) {
    if (e < 1) throw ContractViolation("ProperMapSpec: exponents must be >= 1");
  }
}

Point ProperMapSpec::apply(PointView y) const {
  if (y.size() != exponents.size()) throw ContractViolation("ProperMapSpec: dimension mismatch");
  Point x(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    Complex p = 1.0;
    for (std::uint32_t t = 0; t < exponents[j]; ++t) p *= y[j];
    x[j] = p;
  }
  return x;
}

// -------------------------------------------------------------- operations

Order nu_tilde(const IdealSpec& A, PointView x, int max_order) {
  if (x.size() != A.dim()) throw ContractViolation("nu_tilde: dimension mismatch");
  if (max_order < 0) max_order = 2 * A.max_degree();
  Order best = Order::infinite();
  for (const auto& g : A.generators()) {
    const Order o = poly::vanishing_order(g, x, max_order);
    if (o.kind == Order::Kind::finite) {
      if (best.kind != Order::Kind::finite || o.value < best.value) best = o;
    } else if (o.kind == Order::Kind::exceeds_max && best.kind == Order::Kind::infinite) {
      best = o;
    }
  }
  return best;
}

std::vector<PulledBack> pullback_ideal(const IdealSpec& A, const AnalyticDisc& f) {
  if (f.dim() != A.dim()) throw ContractViolation("pullback_ideal: dimension mismatch");
  const auto comps = f.components();
  std::vector<PulledBack> out;
  for (const auto& g : A.generators()) {
    auto q = poly::compose_with_disc(g, comps);
    const bool zero = q.is_zero();
    out.push_back({std::move(q), zero});
  }
  return out;
}

IdealSpec pullback_ideal_map(const IdealSpec& A, const ProperMapSpec& phi) {
  if (phi.exponents.size() != A.dim()) {
    throw ContractViolation("pullback_ideal_map: exponent count must equal dimension");
  }
  std::vector<MultiPoly> gens;
  for (const auto& g : A.generators()) gens.push_back(g.substitute_powers(phi.exponents));
  return IdealSpec(A.domain(), std::move(gens));
}

std::optional<Point> descend_to_zero_set(const IdealSpec& A, Point z) {
  const std::size_t n = A.dim();
  const std::size_t m = A.size();
  if (z.size() != n) throw ContractViolation("descend_to_zero_set: dimension mismatch");
  std::vector<std::vector<MultiPoly>> jac(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) jac[i].push_back(poly::partial(A.generators()[i], j));
  }
  double res = A.abs_psi(z);
  for (int it = 0; it < 400 && res > 1e-15; ++it) {
    Eigen::MatrixXcd J(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    Eigen::VectorXcd F(static_cast<Eigen::Index>(m));
    const Point v = A.values(z);
    for (std::size_t i = 0; i < m; ++i) {
      F(static_cast<Eigen::Index>(i)) = v[i];
      for (std::size_t j = 0; j < n; ++j) {
        J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = poly::eval_multi(jac[i][j], z);
      }
    }
    const Eigen::VectorXcd step = J.completeOrthogonalDecomposition().solve(-F);
    double t = 1.0;
    bool improved = false;
    for (int h = 0; h < 40; ++h, t *= 0.5) {
      Point cand = z;
      for (std::size_t j = 0; j < n; ++j) cand[j] += t * step(static_cast<Eigen::Index>(j));
      const double r = A.abs_psi(cand);
      if (r < res) {
        z = std::move(cand);
        res = r;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  if (res > 1e-12 || !A.domain().contains_open(z)) return std::nullopt;
  // Newton converges only linearly onto multiple zeros; snap small
  // coordinates to exact zeros when that does not increase the residual
  Point snapped = z;
  for (auto& c : snapped) {
    if (std::abs(c) < 1e-6) c = Complex{};
  }
  if (A.abs_psi(snapped) <= res) z = std::move(snapped);
  return z;
}

std::vector<Point> find_zero_set_points(const IdealSpec& A, std::size_t starts, std::uint64_t seed,
                                        bool sparse_starts) {
  const std::size_t n = A.dim();
  std::vector<Point> found;
  for (std::size_t s = 0; s < starts; ++s) {
    Rng rng = make_rng(seed, s);
    Point z = A.domain().sample(rng, 0.9);
    if (sparse_starts) {
      for (auto& c : z) {
        if (uniform01(rng) < 0.5) c = Complex{};
      }
    }
    auto y = descend_to_zero_set(A, std::move(z));
    if (!y) continue;
    const bool dup = std::any_of(found.begin(), found.end(), [&](const Point& q) {
      double d = 0.0;
      for (std::size_t j = 0; j < n; ++j) d = std::max(d, std::abs(q[j] - (*y)[j]));
      return d < 1e-8;
    });
    if (!dup) found.push_back(std::move(*y));
  }
  return found;
}

namespace {

struct Probe {
  Point values;  // psi at the probe point
  double abs_psi;
};

std::vector<Probe> build_probes(const IdealSpec& A, const ProbeSpec& spec, std::uint64_t seed) {
  auto anchors = find_zero_set_points(A, 4 * spec.anchors, derive_seed(seed, 0xA11), true);
  if (anchors.size() > spec.anchors) anchors.resize(spec.anchors);
  Rng rng = make_rng(seed, 0xB22);
  std::vector<Probe> probes;
  auto add = [&](const Point& x) {
    Point v = A.values(x);
    const double a = norm(v);
    probes.push_back({std::move(v), a});
  };
  if (anchors.empty()) {
    // no zero set inside the domain: certify on a uniform sample instead
    for (std::size_t i = 0; i < spec.anchors * spec.per_radius * spec.log_radii.size(); ++i) {
      add(A.domain().sample(rng, 0.99));
    }
    return probes;
  }
  for (const auto& y : anchors) {
    for (double lr : spec.log_radii) {
      const double r = std::exp(lr);
      for (std::size_t k = 0; k < spec.per_radius; ++k) {
        for (int attempt = 0; attempt < 16; ++attempt) {
          const Point u = unit_sphere_point(rng, A.dim());
          Point x = y;
          for (std::size_t j = 0; j < x.size(); ++j) x[j] += r * u[j];
          if (A.domain().contains_open(x)) {
            add(x);
            break;
          }
        }
      }
    }
  }
  return probes;
}

}  // namespace

ReductionResult reduce_generators(const IdealSpec& A, std::size_t target_k, std::size_t trials,
                                  std::uint64_t seed, const ProbeSpec& probe_spec) {
  const std::size_t m = A.size();
  if (target_k < 1 || target_k > m) throw ContractViolation("reduce_generators: target_k out of range");
  if (trials < 1) throw ContractViolation("reduce_generators: trials must be >= 1");

  const auto probes = build_probes(A, probe_spec, seed);
  std::optional<ReductionResult> best;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = make_rng(seed, 0x1000 + t);
    std::vector<std::vector<Complex>> R(target_k, std::vector<Complex>(m));
    for (auto& row : R) {
      for (auto& c : row) c = complex_normal(rng);
      const double s = norm(row);
      for (auto& c : row) c /= s;
    }
    std::vector<MultiPoly> xi;
    bool degenerate = false;
    for (const auto& row : R) {
      MultiPoly g(A.dim());
      for (std::size_t l = 0; l < m; ++l) g = g + A.generators()[l] * row[l];
      if (g.is_zero()) degenerate = true;
      xi.push_back(std::move(g));
    }
    if (degenerate) continue;

    ReductionReport rep;
    rep.trial = t;
    rep.combination = R;
    double min_xi = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (const auto& p : probes) {
      Point xv(target_k);
      for (std::size_t i = 0; i < target_k; ++i) {
        for (std::size_t l = 0; l < m; ++l) xv[i] += R[i][l] * p.values[l];
      }
      const double ax = norm(xv);
      if (ax == 0.0 && p.abs_psi == 0.0) continue;
      ++rep.probes_used;
      if (ax == 0.0 || p.abs_psi == 0.0) {
        rep.max_log_diff = std::numeric_limits<double>::infinity();
        continue;
      }
      min_xi = std::min(min_xi, ax);
      const double d = std::abs(std::log(p.abs_psi) - std::log(ax));
      rep.max_log_diff = std::max(rep.max_log_diff, d);
      sum += d;
    }
    rep.mean_log_diff = rep.probes_used ? sum / static_cast<double>(rep.probes_used) : 0.0;
    rep.declared_bound = 20.0 + (std::isfinite(min_xi) ? std::abs(std::log(min_xi)) : 0.0);
    rep.success = std::isfinite(rep.max_log_diff) && rep.max_log_diff <= rep.declared_bound;

    ReductionResult cand{IdealSpec(A.domain(), std::move(xi)), std::move(rep)};
    const bool better =
        !best || (cand.report.success && !best->report.success) ||
        (cand.report.success == best->report.success &&
         cand.report.max_log_diff < best->report.max_log_diff);
    if (better) best = std::move(cand);
  }
  if (!best) throw std::runtime_error("reduce_generators: every draw was degenerate");
  return std::move(*best);
}

}  // namespace green::ideal
