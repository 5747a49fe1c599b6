#include "green/poly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace green::poly {

namespace {

void require_finite(Complex c) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
    throw ContractViolation("polynomial coefficient is not finite");
  }
}

double binomial(unsigned n, unsigned k) {
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Coefficients of q(c + u) in powers of u (repeated synthetic division).
std::vector<Complex> taylor_shift(const std::vector<Complex>& a, Complex c) {
  std::vector<Complex> b = a;
  const std::size_t n = b.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) b[j - 1] += c * b[j];
  }
  return b;
}

std::vector<double> taylor_shift_abs(const std::vector<Complex>& a, double c) {
  std::vector<double> b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) b[i] = std::abs(a[i]);
  const std::size_t n = b.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) b[j - 1] += c * b[j];
  }
  return b;
}

}  // namespace

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) require_finite(c);
  canonicalize();
}

void UniPoly::canonicalize() {
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

UniPoly UniPoly::constant(Complex c) { return UniPoly({c}); }

UniPoly UniPoly::monomial(Complex c, std::size_t degree) {
  std::vector<Complex> v(degree + 1);
  v[degree] = c;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::from_roots(std::span<const Complex> roots, std::span<const int> mults) {
  if (roots.size() != mults.size()) throw ContractViolation("from_roots: size mismatch");
  UniPoly p = constant(1.0);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const UniPoly factor({-roots[i], 1.0});
    for (int m = 0; m < mults[i]; ++m) p = p * factor;
  }
  return p;
}

Complex UniPoly::operator()(Complex t) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
  return UniPoly(std::move(d));
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<Complex> r(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = coeff(k) + o.coeff(k);
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + o * Complex(-1.0); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Complex> r(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(Complex s) const {
  std::vector<Complex> r = coeffs_;
  for (auto& c : r) c *= s;
  return UniPoly(std::move(r));
}

UniPoly UniPoly::trimmed(double rel_tol) const {
  double mx = 0.0;
  for (const auto& c : coeffs_) mx = std::max(mx, std::abs(c));
  std::vector<Complex> r = coeffs_;
  for (auto& c : r) {
    if (std::abs(c) < rel_tol * mx) c = Complex{};
  }
  return UniPoly(std::move(r));
}

// -------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(std::size_t n_vars) : n_vars_(n_vars) {
  if (n_vars == 0) throw ContractViolation("MultiPoly: n_vars must be positive");
}

MultiPoly::MultiPoly(std::size_t n_vars, const std::vector<std::pair<Exponent, Complex>>& terms)
    : MultiPoly(n_vars) {
  for (const auto& [e, c] : terms) add_term(e, c);
}

MultiPoly MultiPoly::monomial(std::size_t n_vars, Exponent e, Complex c) {
  MultiPoly p(n_vars);
  p.add_term(e, c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t n_vars, std::size_t index) {
  if (index >= n_vars) throw ContractViolation("MultiPoly::variable: index out of range");
  Exponent e(n_vars, 0);
  e[index] = 1;
  return monomial(n_vars, std::move(e));
}

MultiPoly MultiPoly::constant(std::size_t n_vars, Complex c) {
  return monomial(n_vars, Exponent(n_vars, 0), c);
}

void MultiPoly::add_term(const Exponent& e, Complex c) {
  require_finite(c);
  if (e.size() != n_vars_) throw ContractViolation("MultiPoly: exponent length mismatch");
  if (c == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    d = std::max(d, static_cast<int>(std::accumulate(e.begin(), e.end(), 0u)));
  }
  return d;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  if (o.n_vars_ != n_vars_) throw ContractViolation("MultiPoly: dimension mismatch");
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + o * Complex(-1.0); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (o.n_vars_ != n_vars_) throw ContractViolation("MultiPoly: dimension mismatch");
  MultiPoly r(n_vars_);
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      Exponent e(n_vars_);
      for (std::size_t j = 0; j < n_vars_; ++j) e[j] = e1[j] + e2[j];
      r.add_term(e, c1 * c2);
    }
  }
  return r;
}

MultiPoly MultiPoly::operator*(Complex s) const {
  MultiPoly r(n_vars_);
  for (const auto& [e, c] : terms_) r.add_term(e, c * s);
  return r;
}

MultiPoly MultiPoly::substitute_powers(std::span<const std::uint32_t> k) const {
  if (k.size() != n_vars_) throw ContractViolation("substitute_powers: dimension mismatch");
  MultiPoly r(n_vars_);
  for (const auto& [e, c] : terms_) {
    Exponent ne(n_vars_);
    for (std::size_t j = 0; j < n_vars_; ++j) ne[j] = e[j] * k[j];
    r.add_term(ne, c);
  }
  return r;
}

Complex eval_multi(const MultiPoly& p, PointView z) {
  if (z.size() != p.n_vars()) throw ContractViolation("eval_multi: dimension mismatch");
  Complex acc{};
  for (const auto& [e, c] : p.terms()) {
    Complex m = c;
    for (std::size_t j = 0; j < e.size(); ++j) {
      for (std::uint32_t t = 0; t < e[j]; ++t) m *= z[j];
    }
    acc += m;
  }
  return acc;
}

MultiPoly partial(const MultiPoly& p, std::size_t j) {
  if (j >= p.n_vars()) throw ContractViolation("partial: index out of range");
  std::vector<std::pair<Exponent, Complex>> terms;
  for (const auto& [e, c] : p.terms()) {
    if (e[j] == 0) continue;
    Exponent ne = e;
    ne[j] -= 1;
    terms.emplace_back(ne, c * static_cast<double>(e[j]));
  }
  return MultiPoly(p.n_vars(), terms);
}

Order vanishing_order(const MultiPoly& p, PointView a, int max_order) {
  if (a.size() != p.n_vars()) throw ContractViolation("vanishing_order: dimension mismatch");
  if (max_order < 0) throw ContractViolation("vanishing_order: max_order must be >= 0");
  if (p.is_zero()) return Order::infinite();

  const std::size_t n = p.n_vars();
  double scale = 0.0;
  std::map<Exponent, Complex> shifted;  // Taylor coefficients at a, |beta| <= max_order
  for (const auto& [alpha, c] : p.terms()) {
    double s = std::abs(c);
    for (std::size_t j = 0; j < n; ++j) s *= std::pow(1.0 + std::abs(a[j]), alpha[j]);
    scale += s;

    // Enumerate beta <= alpha componentwise with |beta| <= max_order.
    Exponent beta(n, 0);
    while (true) {
      const auto total = std::accumulate(beta.begin(), beta.end(), 0u);
      if (static_cast<int>(total) <= max_order) {
        Complex t = c;
        for (std::size_t j = 0; j < n; ++j) {
          t *= binomial(alpha[j], beta[j]);
          for (std::uint32_t q = beta[j]; q < alpha[j]; ++q) t *= a[j];
        }
        shifted[beta] += t;
      }
      std::size_t j = 0;
      while (j < n && beta[j] == alpha[j]) beta[j++] = 0;
      if (j == n) break;
      ++beta[j];
    }
  }

  int best = -1;
  for (const auto& [beta, t] : shifted) {
    if (std::abs(t) < kVanishingZeroTol * scale) continue;
    const int k = static_cast<int>(std::accumulate(beta.begin(), beta.end(), 0u));
    if (best < 0 || k < best) best = k;
  }
  if (best < 0) return Order::exceeds();
  return Order::finite(best);
}

UniPoly compose_with_disc(const MultiPoly& p, const DiscPolys& f) {
  if (f.components.size() != p.n_vars()) {
    throw ContractViolation("compose_with_disc: dimension mismatch");
  }
  const std::size_t n = p.n_vars();
  // powers[j][k] = f_j^k, built lazily
  std::vector<std::vector<UniPoly>> powers(n, std::vector<UniPoly>{UniPoly::constant(1.0)});
  UniPoly acc;
  for (const auto& [e, c] : p.terms()) {
    UniPoly term = UniPoly::constant(c);
    for (std::size_t j = 0; j < n; ++j) {
      auto& pw = powers[j];
      while (pw.size() <= e[j]) pw.push_back(pw.back() * f.components[j]);
      if (e[j] > 0) term = term * pw[e[j]];
    }
    acc = acc + term;
  }
  return acc.trimmed(kTrimTolerance);
}

// ------------------------------------------------------------------ roots

namespace {

struct RawCluster {
  Complex center;
  int mult;
  std::vector<Complex> members;
};

// Newton on q^{(m-1)} from c; a root of multiplicity m of q is a simple root
// there. Steps are confined to a ball of radius `reach` around the start.
Complex refine_multiple_root(const std::vector<Complex>& coeffs, Complex c, int m, double reach) {
  UniPoly d(coeffs);
  for (int k = 0; k < m - 1; ++k) d = d.derivative();
  const UniPoly dd = d.derivative();
  const Complex start = c;
  for (int it = 0; it < 30; ++it) {
    const Complex fv = d(c);
    const Complex fp = dd(c);
    if (fp == Complex{}) break;
    const Complex step = fv / fp;
    const Complex next = c - step;
    if (std::abs(next - start) > reach) break;
    c = next;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(c))) break;
  }
  return c;
}

// True when the Taylor coefficients of q at c of order < m are negligible,
// i.e. c is numerically a root of multiplicity at least m.
bool is_multiple_root(const std::vector<Complex>& coeffs, Complex c, int m) {
  const auto t = taylor_shift(coeffs, c);
  const auto s = taylor_shift_abs(coeffs, std::abs(c));
  for (int k = 0; k < m && k < static_cast<int>(t.size()); ++k) {
    if (std::abs(t[k]) > 1e-7 * std::max(s[k], 1e-300)) return false;
  }
  return true;
}

}  // namespace

namespace {

// Parlett-Reinsch diagonal similarity scaling by powers of two; companion
// matrices of polynomials with rapidly decaying coefficients are otherwise
// badly conditioned.
void balance(Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(m(j, i));
        r += std::abs(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      while (c < r / 2.0) {
        c *= 2.0;
        r /= 2.0;
        f *= 2.0;
      }
      while (c >= r * 2.0) {
        c /= 2.0;
        r *= 2.0;
        f /= 2.0;
      }
      if (c + r < 0.95 * s) {
        done = false;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
}

}  // namespace

std::vector<RootCluster> all_roots(const UniPoly& q) {
  if (q.is_zero()) throw ZeroPolynomialError("roots requested for the zero polynomial");
  const auto& full = q.coeffs();
  std::size_t zeros = 0;
  while (full[zeros] == Complex{}) ++zeros;
  std::vector<Complex> a(full.begin() + static_cast<std::ptrdiff_t>(zeros), full.end());
  const int d = static_cast<int>(a.size()) - 1;

  std::vector<RootCluster> out;
  if (zeros > 0) out.push_back({Complex{}, static_cast<int>(zeros)});
  if (d <= 0) return out;

  std::vector<Complex> raw;
  if (d == 1) {
    raw.push_back(-a[0] / a[1]);
  } else {
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -a[static_cast<std::size_t>(i)] / a.back();
    balance(comp);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);
    const auto& ev = es.eigenvalues();
    for (int i = 0; i < d; ++i) raw.push_back(ev(i));
  }

  // One Newton polish per root, kept only if it reduces the residual.
  const UniPoly r(a);
  const UniPoly rp = r.derivative();
  for (auto& z : raw) {
    const Complex fp = rp(z);
    if (fp == Complex{}) continue;
    const Complex cand = z - r(z) / fp;
    if (std::abs(r(cand)) < std::abs(r(z))) z = cand;
  }

  // Stage 1: single-linkage clustering at kClusterRadius.
  std::sort(raw.begin(), raw.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  std::vector<int> label(raw.size(), -1);
  int n_labels = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (label[i] >= 0) continue;
    label[i] = n_labels;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      const std::size_t k = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < raw.size(); ++j) {
        if (label[j] < 0 && std::abs(raw[j] - raw[k]) < kClusterRadius) {
          label[j] = n_labels;
          stack.push_back(j);
        }
      }
    }
    ++n_labels;
  }
  std::vector<RawCluster> clusters(static_cast<std::size_t>(n_labels));
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto& c = clusters[static_cast<std::size_t>(label[i])];
    c.members.push_back(raw[i]);
  }
  for (auto& c : clusters) {
    c.mult = static_cast<int>(c.members.size());
    Complex s{};
    for (const auto& z : c.members) s += z;
    c.center = s / static_cast<double>(c.mult);
  }

  // Stage 2: eigenvalues of an m-fold root scatter at scale eps^(1/m), which
  // for m >= 3 exceeds kClusterRadius. Nearby clusters are merged when the
  // merged centre is verified to be a numerically multiple root.
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < clusters.size() && !merged; ++i) {
      const double reach = 1e-2 * std::max(1.0, std::abs(clusters[i].center));
      std::vector<std::size_t> group{i};
      for (std::size_t j = 0; j < clusters.size(); ++j) {
        if (j != i && std::abs(clusters[j].center - clusters[i].center) < reach) group.push_back(j);
      }
      if (group.size() < 2) continue;
      int m = 0;
      Complex s{};
      for (auto g : group) {
        m += clusters[g].mult;
        s += clusters[g].center * static_cast<double>(clusters[g].mult);
      }
      const Complex c = refine_multiple_root(a, s / static_cast<double>(m), m, reach);
      if (!is_multiple_root(a, c, m)) continue;
      RawCluster nc{c, m, {}};
      std::sort(group.begin(), group.end(), std::greater<>());
      for (auto g : group) clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(g));
      clusters.push_back(std::move(nc));
      merged = true;
    }
  }

  for (auto& c : clusters) {
    if (c.mult > 1) {
      const double reach = 1e-2 * std::max(1.0, std::abs(c.center));
      c.center = refine_multiple_root(a, c.center, c.mult, reach);
    }
    out.push_back({c.center, c.mult});
  }
  std::sort(out.begin(), out.end(), [](const RootCluster& x, const RootCluster& y) {
    if (x.root.real() != y.root.real()) return x.root.real() < y.root.real();
    return x.root.imag() < y.root.imag();
  });
  return out;
}

std::vector<RootCluster> roots_in_disc(const UniPoly& q, double radius) {
  auto roots = all_roots(q);
  std::erase_if(roots, [radius](const RootCluster& r) { return !(std::abs(r.root) < radius); });
  return roots;
}

}  // namespace green::poly
