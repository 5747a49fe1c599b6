#include "green/types.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace green {

ExtReal::ExtReal(double v) : v_(v) {
  if (!std::isfinite(v)) {
    throw ContractViolation("ExtReal: non-finite double; use ExtReal::neg_inf()");
  }
}

double ExtReal::value() const {
  if (neg_inf_) throw std::domain_error("ExtReal::value() on -inf");
  return v_;
}

double ExtReal::to_double() const {
  return neg_inf_ ? -std::numeric_limits<double>::infinity() : v_;
}

ExtReal ExtReal::operator+(const ExtReal& o) const {
  if (neg_inf_ || o.neg_inf_) return neg_inf();
  return ExtReal(v_ + o.v_);
}

ExtReal ExtReal::operator*(double scale) const {
  if (!(scale > 0.0)) throw ContractViolation("ExtReal: scale must be positive");
  if (neg_inf_) return neg_inf();
  return ExtReal(v_ * scale);
}

std::string ExtReal::str() const {
  if (neg_inf_) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v_);
  return buf;
}

ExtReal log_abs(Complex z) { return log_abs(std::abs(z)); }

ExtReal log_abs(double r) {
  if (r == 0.0) return ExtReal::neg_inf();
  return ExtReal(std::log(r));
}

double ext_distance(const ExtReal& a, const ExtReal& b) {
  if (a.is_neg_inf() && b.is_neg_inf()) return 0.0;
  if (a.is_neg_inf() || b.is_neg_inf()) return std::numeric_limits<double>::infinity();
  return std::abs(a.value() - b.value());
}

double norm(PointView z) {
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace green
