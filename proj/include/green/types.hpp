#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace green {

using Complex = std::complex<double>;
using Point = std::vector<Complex>;
using PointView = std::span<const Complex>;

// Raised when a caller breaks an operation's precondition (dimension mismatch,
// argument outside the domain, bad parameter).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Real number extended by a bottom element -inf.
//
// -inf is carried as an explicit flag and only ever produced through
// ExtReal::neg_inf(); a finite ExtReal never holds a non-finite double.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  ExtReal(double v);  // NOLINT(google-explicit-constructor)

  static constexpr ExtReal neg_inf() {
    ExtReal r;
    r.neg_inf_ = true;
    return r;
  }

  constexpr bool is_neg_inf() const { return neg_inf_; }
  constexpr bool is_finite() const { return !neg_inf_; }

  // Finite value; throws for -inf so that callers must branch first.
  double value() const;
  // Value with -inf mapped to -std::numeric_limits<double>::infinity().
  double to_double() const;

  ExtReal operator+(const ExtReal& o) const;
  ExtReal operator*(double scale) const;  // scale must be > 0

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ == b.neg_inf_;
    return a.v_ == b.v_;
  }
  friend bool operator<(const ExtReal& a, const ExtReal& b) {
    if (a.neg_inf_) return !b.neg_inf_;
    if (b.neg_inf_) return false;
    return a.v_ < b.v_;
  }
  friend bool operator>(const ExtReal& a, const ExtReal& b) { return b < a; }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) { return !(b < a); }
  friend bool operator>=(const ExtReal& a, const ExtReal& b) { return !(a < b); }

  // "%.17g" for finite values, "-inf" otherwise.
  std::string str() const;

 private:
  double v_ = 0.0;
  bool neg_inf_ = false;
};

inline ExtReal max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }
inline ExtReal min(const ExtReal& a, const ExtReal& b) { return a < b ? a : b; }

// log|z| with log 0 -> -inf sentinel.
ExtReal log_abs(Complex z);
ExtReal log_abs(double r);

// |a - b| with -inf treated as equal to itself; +infinity if exactly one is -inf.
double ext_distance(const ExtReal& a, const ExtReal& b);

// Euclidean norm of a point.
double norm(PointView z);

}  // namespace green
