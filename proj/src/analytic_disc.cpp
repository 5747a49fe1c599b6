#include "green/analytic_disc.hpp"

#include <algorithm>
#include <cmath>

namespace green {

AnalyticDisc::AnalyticDisc(Point center)
    : center_(std::move(center)), coeffs_(center_.size()) {}

AnalyticDisc::AnalyticDisc(Point center, std::vector<std::vector<Complex>> coeffs)
    : center_(std::move(center)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != center_.size()) {
    throw ContractViolation("AnalyticDisc: one coefficient sequence per coordinate required");
  }
  for (auto& row : coeffs_) {
    for (const auto& c : row) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw ContractViolation("AnalyticDisc: non-finite coefficient");
      }
    }
    while (!row.empty() && row.back() == Complex{}) row.pop_back();
  }
}

AnalyticDisc AnalyticDisc::from_components(const std::vector<poly::UniPoly>& components) {
  Point center;
  std::vector<std::vector<Complex>> coeffs;
  for (const auto& p : components) {
    center.push_back(p.coeff(0));
    std::vector<Complex> row;
    for (std::size_t k = 1; k < p.coeffs().size(); ++k) row.push_back(p.coeffs()[k]);
    coeffs.push_back(std::move(row));
  }
  return AnalyticDisc(std::move(center), std::move(coeffs));
}

std::size_t AnalyticDisc::degree() const {
  std::size_t d = 0;
  for (const auto& row : coeffs_) d = std::max(d, row.size());
  return d;
}

Point AnalyticDisc::operator()(Complex t) const {
  Point out(center_.size());
  for (std::size_t j = 0; j < center_.size(); ++j) {
    Complex acc{};
    const auto& row = coeffs_[j];
    for (auto it = row.rbegin(); it != row.rend(); ++it) acc = (acc + *it) * t;
    out[j] = center_[j] + acc;
  }
  return out;
}

poly::DiscPolys AnalyticDisc::components() const {
  poly::DiscPolys f;
  for (std::size_t j = 0; j < center_.size(); ++j) {
    std::vector<Complex> c{center_[j]};
    c.insert(c.end(), coeffs_[j].begin(), coeffs_[j].end());
    f.components.emplace_back(std::move(c));
  }
  return f;
}

AnalyticDisc AnalyticDisc::scaled(double s) const {
  auto c = coeffs_;
  for (auto& row : c) {
    for (auto& v : row) v *= s;
  }
  return AnalyticDisc(center_, std::move(c));
}

}  // namespace green
