#pragma once

#include <optional>
#include <string>
#include <vector>

#include "green/function_handle.hpp"
#include "green/ideal.hpp"

namespace green::models {

enum class ModelTag {
  intro_pair,       // (z1^2, z2) on D^2
  poly_powers,      // (z_1^{nu_1}, ..., z_p^{nu_p}) on D^n
  poly_z1sq_z1z2,   // (z1^2, z1 z2) on D^n, n >= 2
  poly_three_axes,  // (z1 z2, z2 z3, z1 z3) on D^3
  ball_coords,      // (z_1, ..., z_p) on B_n
  ball_z1sq_z2,     // (z1^2, z2) on B_n, n >= 2
};

std::string to_string(ModelTag t);
std::optional<ModelTag> parse_model_tag(const std::string& s);

// Closed-form models with their parameters.
struct ModelId {
  ModelTag tag = ModelTag::intro_pair;
  std::size_t n = 2;
  std::vector<unsigned> nu;  // poly_powers exponents, length p
  std::size_t p = 0;         // ball_coords split dimension

  static ModelId intro_pair();
  static ModelId poly_powers(std::vector<unsigned> nu, std::size_t n);
  static ModelId poly_z1sq_z1z2(std::size_t n = 2);
  static ModelId poly_three_axes();
  static ModelId ball_coords(std::size_t p, std::size_t n);
  static ModelId ball_z1sq_z2(std::size_t n = 2);

  std::string name() const { return to_string(tag); }
  ideal::DomainSpec domain() const;
  ideal::IdealSpec ideal() const;

  friend bool operator==(const ModelId&, const ModelId&) = default;
};

// Closed-form Green function value; -inf exactly on |A|.
ExtReal oracle_eval(const ModelId& m, PointView z);
FunctionHandle oracle_handle(const ModelId& m);

// Recognises an ideal as one of the closed-form models by exact comparison of
// its normalised monomial generators. Generators must be single monomials.
std::optional<ModelId> match_model(const ideal::IdealSpec& A);

// (x1, x2) -> max{g1(x1), g2(x2)} on the product polydisc.
FunctionHandle product_green(const FunctionHandle& g1, const FunctionHandle& g2);

// max of v over the full fibre of the coordinate power map above x.
ExtReal pushforward_max(const FunctionHandle& v, const ideal::ProperMapSpec& phi, PointView x);

class UnsupportedModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PullbackReport {
  bool pass = false;
  double max_diff = 0.0;
  std::size_t points = 0;
  ModelId base;
  ModelId pulled;
};

inline constexpr double kPullbackTolerance = 1e-12;

// max over the grid of |G_A(phi(y)) - G_{phi*A}(y)|, both sides from oracles.
PullbackReport pullback_equality_check(const ideal::IdealSpec& A, const ideal::ProperMapSpec& phi,
                                       const std::vector<Point>& grid);

// Row-major grid of points whose coordinates have moduli on
// linspace(lo, hi, count) and the given fixed arguments (radians).
std::vector<Point> modulus_grid(std::size_t n, std::size_t count, double lo, double hi,
                                const std::vector<double>& phases = {});

}  // namespace green::models
