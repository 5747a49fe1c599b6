#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "green/poly.hpp"
#include "green/rng.hpp"
#include "oracles.hpp"

using namespace green;
using namespace green::poly;

namespace {

MultiPoly mono(std::size_t n, Exponent e, Complex c = 1.0) { return MultiPoly::monomial(n, std::move(e), c); }

MultiPoly random_sparse(Rng& rng, std::size_t n, int terms, unsigned max_exp) {
  MultiPoly p(n);
  for (int t = 0; t < terms; ++t) {
    Exponent e(n);
    for (auto& k : e) k = static_cast<std::uint32_t>(uniform01(rng) * (max_exp + 1)) % (max_exp + 1);
    p = p + mono(n, e, complex_normal(rng));
  }
  return p;
}

}  // namespace

TEST(MultiPoly, CanonicalTerms) {
  const MultiPoly p = mono(2, {1, 0}, 2.0) + mono(2, {1, 0}, -2.0) + mono(2, {0, 1});
  EXPECT_EQ(p.terms().size(), 1u);
  EXPECT_EQ(p.total_degree(), 1);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(MultiPoly(3).total_degree(), -1);
  EXPECT_THROW(mono(2, {1, 0}, Complex(std::nan(""), 0.0)), ContractViolation);
}

TEST(MultiPoly, EvalExamples) {
  const Point a{2.0, 3.0};
  EXPECT_EQ(eval_multi(mono(2, {2, 1}), a), Complex(12.0));
  const Point zero{0.0, 0.0};
  EXPECT_EQ(eval_multi(mono(2, {2, 0}) + mono(2, {0, 1}), zero), Complex(0.0));
  const Point b{1.0, 1.0, -1.0};
  EXPECT_EQ(eval_multi(mono(3, {1, 1, 0}) + mono(3, {0, 1, 1}), b), Complex(0.0));
  const Point bad{1.0};
  EXPECT_THROW(eval_multi(mono(2, {1, 0}), bad), ContractViolation);
}

TEST(MultiPoly, EvalIsLinear) {
  Rng rng = make_rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_sparse(rng, 3, 5, 4), q = random_sparse(rng, 3, 5, 4);
    Point z{uniform_in_disc(rng), uniform_in_disc(rng), uniform_in_disc(rng)};
    const Complex lhs = eval_multi(p + q, z), rhs = eval_multi(p, z) + eval_multi(q, z);
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(VanishingOrder, Examples) {
  const Point o{0.0, 0.0};
  EXPECT_EQ(vanishing_order(mono(2, {2, 1}), o, 10), Order::finite(3));
  EXPECT_EQ(vanishing_order(mono(2, {2, 0}) + mono(2, {0, 1}), o, 10), Order::finite(1));
  const Point a{0.0, 0.5};
  EXPECT_EQ(vanishing_order(mono(2, {2, 0}), a, 10), Order::finite(2));
  EXPECT_EQ(vanishing_order(MultiPoly(2), a, 10), Order::infinite());
  EXPECT_EQ(vanishing_order(mono(2, {5, 0}), o, 3), Order::exceeds());
}

TEST(VanishingOrder, AdditiveUnderProducts) {
  Rng rng = make_rng(12);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + i % 4;
    // vanish to known orders at a by building from shifted linear factors
    Point a(n);
    for (auto& c : a) c = uniform01(rng) < 0.5 ? Complex{} : uniform_in_disc(rng, 0.5);
    auto shifted_factor = [&](int power) {
      MultiPoly p = MultiPoly::constant(n, 1.0);
      for (int k = 0; k < power; ++k) {
        MultiPoly lin(n);
        for (std::size_t j = 0; j < n; ++j) lin = lin + MultiPoly::variable(n, j) * complex_normal(rng);
        MultiPoly shift = MultiPoly::constant(n, -eval_multi(lin, a));
        p = p * (lin + shift);
      }
      return p + random_sparse(rng, n, 0, 1);
    };
    const int kp = i % 3, kq = (i / 3) % 3;
    const MultiPoly p = shifted_factor(kp), q = shifted_factor(kq);
    const auto op = vanishing_order(p, a, 12), oq = vanishing_order(q, a, 12), opq = vanishing_order(p * q, a, 12);
    ASSERT_TRUE(op.is_finite() && oq.is_finite() && opq.is_finite());
    EXPECT_EQ(op.value, kp);
    EXPECT_EQ(opq.value, op.value + oq.value);
  }
}

TEST(Compose, Examples) {
  DiscPolys f{{UniPoly({0.0, 1.0}), UniPoly::constant(0.5)}};
  EXPECT_EQ(compose_with_disc(mono(2, {2, 0}), f).coeffs(), (std::vector<Complex>{0.0, 0.0, 1.0}));
  const Complex c(0.3, -0.2);
  DiscPolys g{{UniPoly({0.0, 1.0}), UniPoly({0.0, 0.0, c})}};
  EXPECT_EQ(compose_with_disc(mono(2, {0, 1}), g).coeffs(), (std::vector<Complex>{0.0, 0.0, c}));
  const Complex a(0.25, 0.1);
  DiscPolys h{{UniPoly({0.0, 1.0}), UniPoly({-a, 1.0})}};
  const auto q = compose_with_disc(mono(2, {1, 1}), h);
  ASSERT_EQ(q.degree(), 2);
  EXPECT_LT(std::abs(q.coeff(1) + a), 1e-15);
  EXPECT_EQ(q.coeff(2), Complex(1.0));
}

TEST(Compose, CommutesWithEvaluation) {
  Rng rng = make_rng(13);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_sparse(rng, 3, 4, 3);
    DiscPolys f;
    for (int j = 0; j < 3; ++j) {
      std::vector<Complex> c(4);
      for (auto& v : c) v = 0.4 * complex_normal(rng);
      f.components.emplace_back(c);
    }
    const Complex t = uniform_in_disc(rng);
    Point z;
    for (const auto& comp : f.components) z.push_back(comp(t));
    const Complex lhs = compose_with_disc(p, f)(t), rhs = eval_multi(p, z);
    double scale = 0.0;
    for (const auto& [e, c] : p.terms()) {
      double m = std::abs(c);
      for (std::size_t j = 0; j < 3; ++j) m *= std::pow(1.0 + std::abs(z[j]), e[j]);
      scale += m;
    }
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * scale);
  }
}

TEST(Roots, Examples) {
  auto r = roots_in_disc(UniPoly({-0.25, 0.0, 1.0}), 1.0);
  ASSERT_EQ(r.size(), 2u);
  std::sort(r.begin(), r.end(), [](auto& x, auto& y) { return x.root.real() < y.root.real(); });
  EXPECT_NEAR(r[0].root.real(), -0.5, 1e-14);
  EXPECT_NEAR(r[1].root.real(), 0.5, 1e-14);
  EXPECT_EQ(r[0].multiplicity, 1);

  auto c = roots_in_disc(UniPoly::monomial(1.0, 3), 1.0);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].root, Complex{});
  EXPECT_EQ(c[0].multiplicity, 3);

  EXPECT_THROW(roots_in_disc(UniPoly(), 1.0), ZeroPolynomialError);
}

TEST(Roots, DoubleRootWithExteriorRoot) {
  // (t - 0.5)^2 (t - 2) = t^3 - 3 t^2 + 2.25 t - 0.5
  const std::vector<Complex> coeffs{-0.5, 2.25, -3.0, 1.0};
  const auto ref = oracle::durand_kerner(coeffs);
  int inside = 0;
  for (const auto& z : ref) inside += std::abs(z) < 1.0;
  ASSERT_EQ(inside, 2);
  const auto r = roots_in_disc(UniPoly(coeffs), 1.0);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].multiplicity, 2);
  EXPECT_NEAR(std::abs(r[0].root - 0.5), 0.0, 1e-8);
}

TEST(Roots, RecoversKnownFactorisations) {
  Rng rng = make_rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Complex> roots;
    std::vector<int> mults;
    int degree = 0;
    while (true) {
      const int m = 1 + static_cast<int>(uniform01(rng) * 4) % 4;
      if (degree + m > 20) break;
      Complex z;
      bool ok;
      int guard = 0;
      do {
        z = uniform_in_disc(rng, 1.5);
        ok = std::all_of(roots.begin(), roots.end(), [&](Complex w) { return std::abs(w - z) > 0.2; });
      } while (!ok && ++guard < 100);
      if (!ok) break;
      roots.push_back(z);
      mults.push_back(m);
      degree += m;
      if (uniform01(rng) < 0.15) break;
    }
    const auto q = UniPoly::from_roots(roots, mults);
    const auto found = roots_in_disc(q, 1.0);
    std::size_t expect = 0;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (std::abs(roots[i]) >= 1.0) continue;
      ++expect;
      // multiple roots are only resolved to the cluster radius
      const double tol = mults[i] == 1 ? 1e-10 : kClusterRadius;
      const auto it = std::find_if(found.begin(), found.end(),
                                   [&](const RootCluster& c) { return std::abs(c.root - roots[i]) < tol; });
      ASSERT_NE(it, found.end()) << "trial " << trial << " root " << roots[i];
      EXPECT_EQ(it->multiplicity, mults[i]) << "trial " << trial;
    }
    EXPECT_EQ(found.size(), expect) << "trial " << trial;
  }
}

TEST(UniPoly, TrimDropsDust) {
  const UniPoly p({1.0, 1e-15, 2.0, 1e-14});
  EXPECT_EQ(p.trimmed(kTrimTolerance).degree(), 2);
  EXPECT_EQ(p.trimmed(kTrimTolerance).coeff(1), Complex{});
}
