#pragma once

#include <vector>

#include "green/poly.hpp"
#include "green/types.hpp"

namespace green {

// Polynomial analytic disc f_j(t) = center_j + sum_{k=1..d} coeffs[j][k-1] t^k.
// Polynomial discs extend holomorphically past the closed unit disc.
class AnalyticDisc {
 public:
  AnalyticDisc() = default;
  // Constant disc t -> center.
  explicit AnalyticDisc(Point center);
  AnalyticDisc(Point center, std::vector<std::vector<Complex>> coeffs);
  // Disc from full component polynomials (constant terms become the center).
  static AnalyticDisc from_components(const std::vector<poly::UniPoly>& components);

  std::size_t dim() const { return center_.size(); }
  // Highest power of t present in any component.
  std::size_t degree() const;
  const Point& center() const { return center_; }
  const std::vector<std::vector<Complex>>& coeffs() const { return coeffs_; }

  Point operator()(Complex t) const;
  poly::DiscPolys components() const;

  // Same center, every non-constant coefficient multiplied by s.
  AnalyticDisc scaled(double s) const;

 private:
  Point center_;
  std::vector<std::vector<Complex>> coeffs_;  // coeffs_[j][k-1] multiplies t^k
};

}  // namespace green
