#pragma once

#include <vector>

#include "green/analytic_disc.hpp"
#include "green/envelope.hpp"
#include "green/ideal.hpp"
#include "green/poly.hpp"
#include "green/rng.hpp"

namespace testing_helpers {

using namespace green;

// Random polynomial disc of the given degree passing the default containment
// test. With an anchor y, the disc is y + sum_k u_k (t - a)^k so that it meets
// the anchor at a random parameter a.
inline AnalyticDisc random_contained_disc(Rng& rng, const ideal::DomainSpec& dom, std::size_t degree,
                                          const Point* anchor = nullptr) {
  const std::size_t n = dom.dim;
  for (int attempt = 0;; ++attempt) {
    const Complex a = anchor ? uniform_in_disc(rng, 0.8) : Complex{};
    const Point y = anchor ? *anchor : dom.sample(rng, 0.8);
    std::vector<std::vector<Complex>> u(n, std::vector<Complex>(degree + 1));
    for (auto& row : u) {
      for (std::size_t k = 1; k <= degree; ++k) row[k] = complex_normal(rng) * (0.5 / static_cast<double>(k));
    }
    for (double s = 1.0; s > 1e-3; s *= 0.7) {
      std::vector<poly::UniPoly> comps;
      const poly::UniPoly lin({-a, 1.0});
      for (std::size_t j = 0; j < n; ++j) {
        poly::UniPoly c = poly::UniPoly::constant(y[j]), pw = poly::UniPoly::constant(1.0);
        for (std::size_t k = 1; k <= degree; ++k) {
          pw = pw * lin;
          c = c + pw * (u[j][k] * s);
        }
        comps.push_back(c);
      }
      const auto f = AnalyticDisc::from_components(comps);
      if (envelope::containment(f, dom).ok) return f;
    }
  }
}

}  // namespace testing_helpers
