#include <gtest/gtest.h>

#include <cmath>

#include "green/models.hpp"
#include "green/rng.hpp"

using namespace green;
using namespace green::models;
using ideal::DomainKind;
using ideal::DomainSpec;
using ideal::IdealSpec;
using poly::MultiPoly;

namespace {

MultiPoly mono(std::size_t n, poly::Exponent e, Complex c = 1.0) { return MultiPoly::monomial(n, std::move(e), c); }

std::vector<ModelId> all_models() {
  return {ModelId::intro_pair(),         ModelId::poly_powers({1, 2}, 3), ModelId::poly_z1sq_z1z2(3),
          ModelId::poly_three_axes(),    ModelId::ball_coords(2, 3),      ModelId::ball_z1sq_z2(2),
          ModelId::ball_z1sq_z2(4)};
}

}  // namespace

TEST(Oracle, Examples) {
  EXPECT_NEAR(oracle_eval(ModelId::intro_pair(), Point{0.5, 0.5}).value(), -0.69314718055994531, 1e-15);
  EXPECT_NEAR(oracle_eval(ModelId::poly_three_axes(), Point{0.4, 0.4, 0.2}).value(), -1.8325814637483101, 1e-15);
  EXPECT_NEAR(oracle_eval(ModelId::ball_z1sq_z2(2), Point{0.5, 0.25}).value(), -0.90508253606028717, 1e-14);
  EXPECT_NEAR(oracle_eval(ModelId::ball_coords(1, 2), Point{0.3, 0.4}).value(), -1.1167961107535471, 1e-15);
  EXPECT_THROW(oracle_eval(ModelId::intro_pair(), Point{1.0, 0.0}), ContractViolation);
  EXPECT_THROW(oracle_eval(ModelId::ball_coords(1, 2), Point{0.8, 0.7}), ContractViolation);
  EXPECT_THROW(ModelId::ball_coords(3, 2), ContractViolation);
  EXPECT_THROW(ModelId::poly_powers({0}, 2), ContractViolation);
}

TEST(Oracle, FifthExampleMatchesItsExtremalDisc) {
  // t -> (t, c t^2) leaves the ball at R with R^2 + |c|^2 R^4 = 1; the value is 2 log(|z1| / R)
  Rng rng = make_rng(31);
  const ModelId m = ModelId::ball_z1sq_z2(2);
  for (int i = 0; i < 50; ++i) {
    Point z = m.domain().sample(rng, 0.95);
    if (z[0] == Complex{}) continue;
    const double c2 = std::norm(z[1] / (z[0] * z[0]));
    const double R2 = c2 > 0 ? (std::sqrt(1.0 + 4.0 * c2) - 1.0) / (2.0 * c2) : 1.0;
    EXPECT_NEAR(oracle_eval(m, z).value(), std::log(std::norm(z[0]) / R2), 1e-12);
  }
}

TEST(Oracle, NonPositiveAndMinusInfinityExactlyOnZeroSet) {
  Rng rng = make_rng(32);
  for (const auto& m : all_models()) {
    const auto A = m.ideal();
    for (int i = 0; i < 300; ++i) {
      Point z = m.domain().sample(rng, 0.99);
      // hit coordinate subspaces often
      for (auto& c : z) {
        if (uniform01(rng) < 0.3) c = Complex{};
      }
      const ExtReal v = oracle_eval(m, z);
      EXPECT_LE(v, ExtReal(0.0));
      const bool on_A = ideal::nu_tilde(A, z).value != 0 || !ideal::nu_tilde(A, z).is_finite();
      EXPECT_EQ(v.is_neg_inf(), on_A) << m.name();
    }
  }
}

TEST(Oracle, PowersMonotoneInExponents) {
  Rng rng = make_rng(33);
  const ModelId a = ModelId::poly_powers({1, 2}, 2), b = ModelId::poly_powers({2, 3}, 2);
  for (int i = 0; i < 1000; ++i) {
    const Point z = a.domain().sample(rng, 0.999);
    EXPECT_LE(oracle_eval(b, z), oracle_eval(a, z));
  }
}

TEST(Oracle, FourthExampleDecaysAtTheBoundary) {
  Rng rng = make_rng(34);
  const ModelId m = ModelId::ball_coords(1, 3);
  for (int i = 0; i < 100; ++i) {
    Point u = unit_sphere_point(rng, 3);
    // the decay is -(1 - r^2) / (2 |z1|^2) to first order, so stay off |A|
    if (std::abs(u[0]) < 0.2) continue;
    for (auto& c : u) c *= 1.0 - 1e-6;
    EXPECT_LT(std::abs(oracle_eval(m, u).value()), 1e-4);
  }
}

TEST(Oracle, FifthExampleVanishesOnTheSphere) {
  Rng rng = make_rng(35);
  const ModelId m = ModelId::ball_z1sq_z2(3);
  for (int i = 0; i < 200; ++i) {
    const double a = uniform01(rng), b = (1.0 - a) * uniform01(rng);
    if (a + b == 0.0) continue;
    // the formula in the "a/(a+b)" form, independent of the implementation
    const double inner = a * a / ((a + b) * (a + b)) + 2.0 * b / (a + b) + a / (a + b) * (2.0 - a / (a + b));
    EXPECT_NEAR(0.5 * std::log(inner) - 0.5 * std::log(2.0), 0.0, 1e-12);
  }
  // and the implementation at radius -> 1
  for (int i = 0; i < 200; ++i) {
    Point u = unit_sphere_point(rng, 3);
    for (auto& c : u) c *= 1.0 - 1e-13;
    EXPECT_LT(std::abs(oracle_eval(m, u).value()), 1e-10);
  }
}

TEST(Oracle, SecondExampleTropicalForm) {
  Rng rng = make_rng(36);
  const ModelId m = ModelId::poly_z1sq_z1z2(2);
  for (int i = 0; i < 500; ++i) {
    const Point z = m.domain().sample(rng);
    const double l1 = std::log(std::abs(z[0])), l2 = std::log(std::abs(z[1]));
    EXPECT_NEAR(oracle_eval(m, z).value(), std::max(2.0 * l1, l1 + l2), 1e-12);
  }
}

TEST(Matcher, RecognisesModels) {
  const DomainSpec D2(DomainKind::polydisc, 2), D3(DomainKind::polydisc, 3), B2(DomainKind::ball, 2);
  EXPECT_EQ(match_model(IdealSpec(D2, {mono(2, {0, 1}), mono(2, {2, 0}, 3.0)})), ModelId::intro_pair());
  EXPECT_EQ(match_model(IdealSpec(D2, {mono(2, {1, 0}), mono(2, {0, 1})})), ModelId::poly_powers({1, 1}, 2));
  EXPECT_EQ(match_model(IdealSpec(D3, {mono(3, {0, 3, 0}), mono(3, {1, 0, 0})})), ModelId::poly_powers({1, 3}, 3));
  EXPECT_EQ(match_model(IdealSpec(B2, {mono(2, {2, 0}), mono(2, {0, 1})})), ModelId::ball_z1sq_z2(2));
  EXPECT_EQ(match_model(IdealSpec(B2, {mono(2, {1, 0})})), ModelId::ball_coords(1, 2));
  for (const auto& m : all_models()) EXPECT_EQ(match_model(m.ideal()), m) << m.name();
  // z2 alone is not a leading-coordinate model; sums are not monomial
  EXPECT_FALSE(match_model(IdealSpec(D2, {mono(2, {0, 1})})));
  EXPECT_FALSE(match_model(IdealSpec(D2, {mono(2, {1, 0}) + mono(2, {0, 1})})));
  EXPECT_FALSE(match_model(IdealSpec(B2, {mono(2, {1, 1})})));
}

TEST(Product, Examples) {
  auto logabs = [](double w) {
    return FunctionHandle{[w](PointView z) { return log_abs(z[0]) * w; }, DomainSpec(DomainKind::polydisc, 1), "g"};
  };
  const auto p = product_green(logabs(1.0), logabs(1.0));
  EXPECT_NEAR(p(Point{0.5, 0.25}).value(), std::log(0.5), 1e-15);
  EXPECT_NEAR(p(Point{0.0, 0.25}).value(), std::log(0.25), 1e-15);
  EXPECT_TRUE(p(Point{0.0, 0.0}).is_neg_inf());
  // Example 1 from one-dimensional factors
  const auto q = product_green(logabs(1.0), logabs(2.0));
  const ModelId m = ModelId::poly_powers({1, 2}, 2);
  for (const auto& z : modulus_grid(2, 20, 0.0, 0.95, {0.4, -1.1})) EXPECT_EQ(q(z), oracle_eval(m, z));
  const auto ball = oracle_handle(ModelId::ball_coords(1, 2));
  EXPECT_THROW(product_green(ball, logabs(1.0)), ContractViolation);
}

TEST(Pushforward, Examples) {
  const FunctionHandle v{[](PointView z) { return log_abs(z[0]); }, DomainSpec(DomainKind::polydisc, 1), "log"};
  EXPECT_NEAR(pushforward_max(v, ideal::ProperMapSpec({2}), Point{0.25}).value(), std::log(0.5), 1e-15);
  const FunctionHandle v2{[](PointView z) { return log_abs(z[0]) * 2.0; }, DomainSpec(DomainKind::polydisc, 1), "2log"};
  EXPECT_NEAR(pushforward_max(v2, ideal::ProperMapSpec({2}), Point{0.25}).value(), std::log(0.25), 1e-15);
  EXPECT_EQ(pushforward_max(v, ideal::ProperMapSpec({1}), Point{0.3}), v(Point{0.3}));
  // the fibre of (z1^2, z2^3) over a point has 6 elements; Re z1 picks a maximiser
  const FunctionHandle re{[](PointView z) { return ExtReal(z[0].real() + z[1].real()); },
                          DomainSpec(DomainKind::polydisc, 2), "re"};
  const Complex x1(0.0, 0.25), x2(-0.125, 0.0);
  const double expect = std::sqrt(0.25) * std::cos(M_PI / 4) + 0.5 * std::cos(M_PI / 3);
  EXPECT_NEAR(pushforward_max(re, ideal::ProperMapSpec({2, 3}), Point{x1, x2}).value(), expect, 1e-15);
}

TEST(Pullback, EqualityOnCoordinateIdeal) {
  const auto A = ModelId::poly_powers({1, 1}, 2).ideal();
  const auto grid = modulus_grid(2, 20, 0.0, 0.95, {0.3, 0.6});
  for (const auto& k : std::vector<std::vector<std::uint32_t>>{{2, 1}, {3, 2}, {1, 1}}) {
    const auto r = pullback_equality_check(A, ideal::ProperMapSpec(k), grid);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.points, 400u);
    EXPECT_LE(r.max_diff, 1e-12);
  }
  const auto r = pullback_equality_check(A, ideal::ProperMapSpec({2, 1}), grid);
  EXPECT_EQ(r.pulled, ModelId::intro_pair());
  const auto B = ModelId::poly_z1sq_z1z2(2).ideal();
  EXPECT_THROW(pullback_equality_check(B, ideal::ProperMapSpec({2, 2}), grid), UnsupportedModelError);
}

TEST(Grid, RowMajorOrder) {
  const auto g = modulus_grid(2, 3, 0.0, 0.5);
  ASSERT_EQ(g.size(), 9u);
  EXPECT_EQ(g[1], (Point{0.0, 0.25}));
  EXPECT_EQ(g[3], (Point{0.25, 0.0}));
}
