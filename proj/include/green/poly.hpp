#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "green/types.hpp"

namespace green::poly {

using Exponent = std::vector<std::uint32_t>;

// Univariate polynomial c_0 + c_1 t + ... + c_d t^d.
// Canonical form: no trailing zero coefficients; the zero polynomial is empty.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Complex> coeffs);

  static UniPoly constant(Complex c);
  static UniPoly monomial(Complex c, std::size_t degree);
  // prod (t - r_i)^{m_i}
  static UniPoly from_roots(std::span<const Complex> roots, std::span<const int> mults);

  bool is_zero() const { return coeffs_.empty(); }
  // Degree of the polynomial; -1 for zero.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Complex{}; }

  Complex operator()(Complex t) const;
  UniPoly derivative() const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator*(Complex s) const;

  // Drops coefficients with modulus < rel_tol * (max coefficient modulus).
  UniPoly trimmed(double rel_tol) const;

 private:
  void canonicalize();
  std::vector<Complex> coeffs_;
};

// Relative trim applied after composing with a disc.
inline constexpr double kTrimTolerance = 1e-13;

// Sparse multivariate polynomial in n_vars variables. Terms are kept in an
// ordered map so iteration (and therefore evaluation) order is fixed.
class MultiPoly {
 public:
  using Terms = std::map<Exponent, Complex>;

  explicit MultiPoly(std::size_t n_vars);
  MultiPoly(std::size_t n_vars, const std::vector<std::pair<Exponent, Complex>>& terms);

  static MultiPoly monomial(std::size_t n_vars, Exponent e, Complex c = 1.0);
  static MultiPoly variable(std::size_t n_vars, std::size_t index);
  static MultiPoly constant(std::size_t n_vars, Complex c);

  std::size_t n_vars() const { return n_vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Maximal total degree; -1 for zero.
  int total_degree() const;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(Complex s) const;

  // Replaces z_j by z_j^{k_j}.
  MultiPoly substitute_powers(std::span<const std::uint32_t> k) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.n_vars_ == b.n_vars_ && a.terms_ == b.terms_;
  }

 private:
  void add_term(const Exponent& e, Complex c);
  std::size_t n_vars_;
  Terms terms_;
};

// Sum of coefficient * z^exponent in sorted exponent order.
Complex eval_multi(const MultiPoly& p, PointView z);

// Partial derivative d p / d z_j.
MultiPoly partial(const MultiPoly& p, std::size_t j);

// Result of a vanishing-order query.
struct Order {
  enum class Kind { finite, infinite, exceeds_max };
  Kind kind = Kind::finite;
  int value = 0;  // meaningful for Kind::finite

  static Order finite(int v) { return {Kind::finite, v}; }
  static Order infinite() { return {Kind::infinite, 0}; }
  static Order exceeds() { return {Kind::exceeds_max, 0}; }
  bool is_finite() const { return kind == Kind::finite; }
  friend bool operator==(const Order&, const Order&) = default;
};

// Relative zero test for shifted Taylor coefficients.
inline constexpr double kVanishingZeroTol = 1e-10;

// Smallest total degree k <= max_order of a nonzero Taylor coefficient of p at a.
Order vanishing_order(const MultiPoly& p, PointView a, int max_order);

// Ambient description consumed by compose_with_disc: f_j(t) = sum_k coeffs[j][k] t^k.
struct DiscPolys {
  std::vector<UniPoly> components;
};

// t -> p(f(t)), trimmed with kTrimTolerance.
UniPoly compose_with_disc(const MultiPoly& p, const DiscPolys& f);

struct RootCluster {
  Complex root;
  int multiplicity = 1;
};

// Raised by roots_in_disc for the identically zero polynomial.
class ZeroPolynomialError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Radius within which raw eigenvalues are merged into one cluster.
inline constexpr double kClusterRadius = 1e-6;

// All roots of q; each cluster reported once with its multiplicity.
std::vector<RootCluster> all_roots(const UniPoly& q);

// Roots of q with |root| < radius.
std::vector<RootCluster> roots_in_disc(const UniPoly& q, double radius);

}  // namespace green::poly
