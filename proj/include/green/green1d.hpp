#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "green/ideal.hpp"
#include "green/types.hpp"

namespace green::oned {

struct WeightedPoint {
  Complex a;
  double weight = 0.0;
};

// Finite set of poles a in the unit disc with positive weights. Repeated
// points are merged on construction and their weights summed.
class WeightedZeroSet {
 public:
  WeightedZeroSet() = default;
  explicit WeightedZeroSet(std::vector<WeightedPoint> entries);

  const std::vector<WeightedPoint>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  double total_weight() const;

 private:
  std::vector<WeightedPoint> entries_;
};

// Green kernel of the unit disc, log|(z - w) / (1 - conj(w) z)|; -inf at z = w.
ExtReal green_kernel(Complex z, Complex w);

// sum_a nu(a) * green_kernel(z, a).
ExtReal green_1d_eval(const WeightedZeroSet& S, Complex z);

// Zero data of the ideal generated by the pulled-back components: common
// interior roots with weight = min multiplicity over the nonzero components.
// nullopt when every component vanishes identically (the disc lies in |A|).
std::optional<WeightedZeroSet> pullback_zero_set(const std::vector<ideal::PulledBack>& pullbacks);

// Value of the disc functional at the parameter `marked`:
// sum_a nu(a) * green_kernel(marked, a); marked = 0 gives sum nu(a) log|a|.
ExtReal disc_functional_value(const std::vector<ideal::PulledBack>& pullbacks,
                              Complex marked = Complex{});

struct JensenPair {
  ExtReal lhs;  // log|B(0)| from the expanded Blaschke product
  ExtReal rhs;  // sum nu log|a|
};

// Both sides of the Poisson-Jensen identity for the finite Blaschke product
// with zero data B. Weights must be positive integers.
JensenPair poisson_jensen_check(const WeightedZeroSet& B);

}  // namespace green::oned
