#include "green/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace green::models {

using ideal::DomainKind;
using ideal::DomainSpec;
using ideal::IdealSpec;
using poly::Exponent;
using poly::MultiPoly;

namespace {

struct TagName {
  ModelTag tag;
  const char* name;
};

constexpr TagName kTagNames[] = {
    {ModelTag::intro_pair, "intro_pair"},
    {ModelTag::poly_powers, "poly_powers"},
    {ModelTag::poly_z1sq_z1z2, "poly_z1sq_z1z2"},
    {ModelTag::poly_three_axes, "poly_three_axes"},
    {ModelTag::ball_coords, "ball_coords"},
    {ModelTag::ball_z1sq_z2, "ball_z1sq_z2"},
};

Exponent unit(std::size_t n, std::size_t j, std::uint32_t k = 1) {
  Exponent e(n, 0);
  e[j] = k;
  return e;
}

Exponent sum(const Exponent& a, const Exponent& b) {
  Exponent e(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) e[j] = a[j] + b[j];
  return e;
}

std::vector<Exponent> model_exponents(const ModelId& m) {
  const std::size_t n = m.n;
  switch (m.tag) {
    case ModelTag::intro_pair:
      return {unit(n, 0, 2), unit(n, 1)};
    case ModelTag::poly_powers: {
      std::vector<Exponent> out;
      for (std::size_t k = 0; k < m.nu.size(); ++k) out.push_back(unit(n, k, m.nu[k]));
      return out;
    }
    case ModelTag::poly_z1sq_z1z2:
      return {unit(n, 0, 2), sum(unit(n, 0), unit(n, 1))};
    case ModelTag::poly_three_axes:
      return {sum(unit(n, 0), unit(n, 1)), sum(unit(n, 1), unit(n, 2)), sum(unit(n, 0), unit(n, 2))};
    case ModelTag::ball_coords: {
      std::vector<Exponent> out;
      for (std::size_t k = 0; k < m.p; ++k) out.push_back(unit(n, k));
      return out;
    }
    case ModelTag::ball_z1sq_z2:
      return {unit(n, 0, 2), unit(n, 1)};
  }
  return {};
}

double sq(double x) { return x * x; }

}  // namespace

std::string to_string(ModelTag t) {
  for (const auto& tn : kTagNames) {
    if (tn.tag == t) return tn.name;
  }
  return "unknown";
}

std::optional<ModelTag> parse_model_tag(const std::string& s) {
  for (const auto& tn : kTagNames) {
    if (s == tn.name) return tn.tag;
  }
  return std::nullopt;
}

ModelId ModelId::intro_pair() { return {ModelTag::intro_pair, 2, {}, 0}; }

ModelId ModelId::poly_powers(std::vector<unsigned> nu, std::size_t n) {
  if (nu.empty() || nu.size() > n) throw ContractViolation("poly_powers: need 1 <= p <= n");
  for (unsigned v : nu) {
    if (v < 1) throw ContractViolation("poly_powers: exponents must be positive");
  }
  return {ModelTag::poly_powers, n, std::move(nu), 0};
}

ModelId ModelId::poly_z1sq_z1z2(std::size_t n) {
  if (n < 2) throw ContractViolation("poly_z1sq_z1z2: n >= 2 required");
  return {ModelTag::poly_z1sq_z1z2, n, {}, 0};
}

ModelId ModelId::poly_three_axes() { return {ModelTag::poly_three_axes, 3, {}, 0}; }

ModelId ModelId::ball_coords(std::size_t p, std::size_t n) {
  if (p < 1 || p > n) throw ContractViolation("ball_coords: need 1 <= p <= n");
  return {ModelTag::ball_coords, n, {}, p};
}

ModelId ModelId::ball_z1sq_z2(std::size_t n) {
  if (n < 2) throw ContractViolation("ball_z1sq_z2: n >= 2 required");
  return {ModelTag::ball_z1sq_z2, n, {}, 0};
}

DomainSpec ModelId::domain() const {
  const bool ball = tag == ModelTag::ball_coords || tag == ModelTag::ball_z1sq_z2;
  return DomainSpec(ball ? DomainKind::ball : DomainKind::polydisc, n);
}

IdealSpec ModelId::ideal() const {
  std::vector<MultiPoly> gens;
  for (auto& e : model_exponents(*this)) gens.push_back(MultiPoly::monomial(n, std::move(e)));
  return IdealSpec(domain(), std::move(gens));
}

ExtReal oracle_eval(const ModelId& m, PointView z) {
  if (z.size() != m.n) throw ContractViolation("oracle_eval: dimension mismatch");
  if (!m.domain().contains_open(z)) throw ContractViolation("oracle_eval: point outside the open domain");
  switch (m.tag) {
    case ModelTag::intro_pair:
      return max(log_abs(z[0]) * 2.0, log_abs(z[1]));
    case ModelTag::poly_powers: {
      ExtReal v = ExtReal::neg_inf();
      for (std::size_t k = 0; k < m.nu.size(); ++k) v = max(v, log_abs(z[k]) * m.nu[k]);
      return v;
    }
    case ModelTag::poly_z1sq_z1z2:
      return log_abs(z[0]) + max(log_abs(z[0]), log_abs(z[1]));
    case ModelTag::poly_three_axes:
      return max(max(log_abs(z[0] * z[1]), log_abs(z[1] * z[2])), log_abs(z[0] * z[2]));
    case ModelTag::ball_coords: {
      double a = 0.0, b = 0.0;
      for (std::size_t j = 0; j < m.n; ++j) (j < m.p ? a : b) += std::norm(z[j]);
      if (a == 0.0) return ExtReal::neg_inf();
      return ExtReal(0.5 * std::log(a) - 0.5 * std::log(1.0 - b));
    }
    case ModelTag::ball_z1sq_z2: {
      double tail = 0.0;
      for (std::size_t j = 2; j < m.n; ++j) tail += std::norm(z[j]);
      const double s = 1.0 - tail;
      const double a = std::norm(z[0]) / s;  // |z1|^2 / s
      const double b = std::norm(z[1]) / s;  // |z2|^2 / s
      const double inner = sq(a) + 2.0 * b + a * std::sqrt(sq(a) + 4.0 * b);
      if (inner == 0.0) return ExtReal::neg_inf();
      return ExtReal(0.5 * std::log(inner) - 0.5 * std::numbers::ln2);
    }
  }
  throw ContractViolation("oracle_eval: unknown model");
}

FunctionHandle oracle_handle(const ModelId& m) {
  return {[m](PointView z) { return oracle_eval(m, z); }, m.domain(), "oracle:" + m.name()};
}

std::optional<ModelId> match_model(const IdealSpec& A) {
  const std::size_t n = A.dim();
  std::vector<Exponent> have;
  for (const auto& g : A.generators()) {
    if (g.terms().size() != 1) return std::nullopt;
    have.push_back(g.terms().begin()->first);
  }
  std::sort(have.begin(), have.end());
  have.erase(std::unique(have.begin(), have.end()), have.end());

  auto same = [&](const ModelId& m) {
    auto want = model_exponents(m);
    std::sort(want.begin(), want.end());
    return want == have;
  };

  if (A.domain().kind == DomainKind::polydisc) {
    if (n == 2 && same(ModelId::intro_pair())) return ModelId::intro_pair();
    // pure powers of the first p coordinates, one generator each
    std::vector<unsigned> nu(have.size(), 0);
    bool powers = have.size() <= n;
    for (const auto& e : have) {
      std::size_t support = 0, idx = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (e[j] != 0) {
          ++support;
          idx = j;
        }
      }
      if (support != 1 || idx >= nu.size() || nu[idx] != 0) {
        powers = false;
        break;
      }
      nu[idx] = e[idx];
    }
    if (powers && !have.empty()) return ModelId::poly_powers(nu, n);
    if (n >= 2 && same(ModelId::poly_z1sq_z1z2(n))) return ModelId::poly_z1sq_z1z2(n);
    if (n == 3 && same(ModelId::poly_three_axes())) return ModelId::poly_three_axes();
  } else {
    if (have.size() <= n && same(ModelId::ball_coords(have.size(), n))) {
      return ModelId::ball_coords(have.size(), n);
    }
    if (n >= 2 && same(ModelId::ball_z1sq_z2(n))) return ModelId::ball_z1sq_z2(n);
  }
  return std::nullopt;
}

FunctionHandle product_green(const FunctionHandle& g1, const FunctionHandle& g2) {
  if (g1.domain.kind != DomainKind::polydisc || g2.domain.kind != DomainKind::polydisc) {
    throw ContractViolation("product_green: factors must live on polydiscs");
  }
  const std::size_t n1 = g1.domain.dim;
  const std::size_t n2 = g2.domain.dim;
  FunctionHandle out;
  out.domain = DomainSpec(DomainKind::polydisc, n1 + n2);
  out.label = "max(" + g1.label + ", " + g2.label + ")";
  out.eval = [g1, g2, n1, n2](PointView z) {
    if (z.size() != n1 + n2) throw ContractViolation("product_green: dimension mismatch");
    return max(g1(z.subspan(0, n1)), g2(z.subspan(n1, n2)));
  };
  return out;
}

ExtReal pushforward_max(const FunctionHandle& v, const ideal::ProperMapSpec& phi, PointView x) {
  const std::size_t n = phi.exponents.size();
  if (x.size() != n) throw ContractViolation("pushforward_max: dimension mismatch");
  std::vector<std::vector<Complex>> roots(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::uint32_t k = phi.exponents[j];
    if (x[j] == Complex{}) {
      roots[j].push_back(Complex{});
      continue;
    }
    const double r = std::pow(std::abs(x[j]), 1.0 / k);
    const double th = std::arg(x[j]);
    for (std::uint32_t l = 0; l < k; ++l) {
      roots[j].push_back(std::polar(r, (th + 2.0 * std::numbers::pi * l) / k));
    }
  }
  ExtReal best = ExtReal::neg_inf();
  std::vector<std::size_t> idx(n, 0);
  Point y(n);
  while (true) {
    for (std::size_t j = 0; j < n; ++j) y[j] = roots[j][idx[j]];
    best = max(best, v(y));
    std::size_t j = 0;
    while (j < n && ++idx[j] == roots[j].size()) idx[j++] = 0;
    if (j == n) break;
  }
  return best;
}

PullbackReport pullback_equality_check(const IdealSpec& A, const ideal::ProperMapSpec& phi,
                                       const std::vector<Point>& grid) {
  const auto base = match_model(A);
  if (!base) throw UnsupportedModelError("pullback_equality_check: ideal has no closed form");
  const auto pulled = match_model(ideal::pullback_ideal_map(A, phi));
  if (!pulled) throw UnsupportedModelError("pullback_equality_check: pulled-back ideal has no closed form");
  PullbackReport rep;
  rep.base = *base;
  rep.pulled = *pulled;
  for (const auto& y : grid) {
    const double d = ext_distance(oracle_eval(*base, phi.apply(y)), oracle_eval(*pulled, y));
    rep.max_diff = std::max(rep.max_diff, d);
    ++rep.points;
  }
  rep.pass = rep.max_diff <= kPullbackTolerance;
  return rep;
}

std::vector<Point> modulus_grid(std::size_t n, std::size_t count, double lo, double hi,
                                const std::vector<double>& phases) {
  if (n == 0 || count == 0) throw ContractViolation("modulus_grid: empty grid");
  if (!phases.empty() && phases.size() != n) throw ContractViolation("modulus_grid: one phase per coordinate");
  std::vector<double> r(count);
  for (std::size_t i = 0; i < count; ++i) {
    r[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  std::vector<Point> out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    Point z(n);
    for (std::size_t j = 0; j < n; ++j) z[j] = std::polar(r[idx[j]], phases.empty() ? 0.0 : phases[j]);
    out.push_back(std::move(z));
    std::size_t j = n;
    while (j > 0 && ++idx[j - 1] == count) idx[--j] = 0;
    if (j == 0) break;
  }
  return out;
}

}  // namespace green::models
