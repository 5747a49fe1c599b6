#include "green/green1d.hpp"

#include <algorithm>
#include <cmath>

namespace green::oned {

WeightedZeroSet::WeightedZeroSet(std::vector<WeightedPoint> entries) {
  for (const auto& e : entries) {
    if (!(std::abs(e.a) < 1.0)) throw ContractViolation("WeightedZeroSet: pole outside the open disc");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw ContractViolation("WeightedZeroSet: weights must be positive and finite");
    }
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const WeightedPoint& q) { return q.a == e.a; });
    if (it != entries_.end()) {
      it->weight += e.weight;
    } else {
      entries_.push_back(e);
    }
  }
}

double WeightedZeroSet::total_weight() const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.weight;
  return s;
}

ExtReal green_kernel(Complex z, Complex w) {
  if (!(std::abs(z) < 1.0) || !(std::abs(w) < 1.0)) {
    throw ContractViolation("green_kernel: arguments must lie in the open unit disc");
  }
  if (z == w) return ExtReal::neg_inf();
  return ExtReal(std::log(std::abs(z - w) / std::abs(1.0 - std::conj(w) * z)));
}

ExtReal green_1d_eval(const WeightedZeroSet& S, Complex z) {
  if (!(std::abs(z) < 1.0)) throw ContractViolation("green_1d_eval: z outside the open disc");
  ExtReal acc = 0.0;
  for (const auto& e : S.entries()) {
    const ExtReal k = green_kernel(z, e.a);
    if (k.is_neg_inf()) return ExtReal::neg_inf();
    acc = acc + k * e.weight;
  }
  return acc;
}

std::optional<WeightedZeroSet> pullback_zero_set(const std::vector<ideal::PulledBack>& pullbacks) {
  struct Root {
    Complex z;
    int mult;
    std::size_t component;
  };
  std::vector<std::size_t> active;
  std::vector<Root> roots;
  for (std::size_t i = 0; i < pullbacks.size(); ++i) {
    if (pullbacks[i].identically_zero) continue;
    active.push_back(i);
    for (const auto& r : poly::roots_in_disc(pullbacks[i].poly, 1.0)) {
      roots.push_back({r.root, r.multiplicity, i});
    }
  }
  if (active.empty()) return std::nullopt;

  // Single-linkage clustering of the interior roots of all components.
  std::vector<int> label(roots.size(), -1);
  int n_labels = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (label[i] >= 0) continue;
    label[i] = n_labels;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      const std::size_t k = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < roots.size(); ++j) {
        if (label[j] < 0 && std::abs(roots[j].z - roots[k].z) < poly::kClusterRadius) {
          label[j] = n_labels;
          stack.push_back(j);
        }
      }
    }
    ++n_labels;
  }

  std::vector<WeightedPoint> zeros;
  for (int c = 0; c < n_labels; ++c) {
    int nu = -1;
    Complex centroid{};
    int total = 0;
    for (std::size_t comp : active) {
      int m = 0;
      for (std::size_t i = 0; i < roots.size(); ++i) {
        if (label[i] == c && roots[i].component == comp) {
          m += roots[i].mult;
          centroid += roots[i].z * static_cast<double>(roots[i].mult);
          total += roots[i].mult;
        }
      }
      nu = nu < 0 ? m : std::min(nu, m);
    }
    if (nu > 0) {
      Complex a = centroid / static_cast<double>(total);
      if (std::abs(a) >= 1.0) continue;
      zeros.push_back({a, static_cast<double>(nu)});
    }
  }
  return WeightedZeroSet(std::move(zeros));
}

ExtReal disc_functional_value(const std::vector<ideal::PulledBack>& pullbacks, Complex marked) {
  const auto S = pullback_zero_set(pullbacks);
  if (!S) return ExtReal::neg_inf();
  return green_1d_eval(*S, marked);
}

JensenPair poisson_jensen_check(const WeightedZeroSet& B) {
  poly::UniPoly num = poly::UniPoly::constant(1.0);
  poly::UniPoly den = poly::UniPoly::constant(1.0);
  ExtReal rhs = 0.0;
  bool pole_at_origin = false;
  for (const auto& e : B.entries()) {
    const double w = e.weight;
    if (w != std::round(w)) throw ContractViolation("poisson_jensen_check: integer weights required");
    if (e.a == Complex{}) pole_at_origin = true;
    const poly::UniPoly nf({e.a, -1.0});              // a - z
    const poly::UniPoly df({1.0, -std::conj(e.a)});   // 1 - conj(a) z
    for (int k = 0; k < static_cast<int>(w); ++k) {
      num = num * nf;
      den = den * df;
    }
    if (!pole_at_origin) rhs = rhs + log_abs(e.a) * w;
  }
  if (pole_at_origin) return {ExtReal::neg_inf(), ExtReal::neg_inf()};
  return {log_abs(num(0.0) / den(0.0)), rhs};
}

}  // namespace green::oned
