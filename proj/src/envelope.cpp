#include "green/envelope.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <thread>

#include "green/green1d.hpp"
#include "green/nelder_mead.hpp"

namespace green::envelope {

using ideal::DomainKind;
using ideal::DomainSpec;
using ideal::IdealSpec;
using poly::UniPoly;

std::string to_string(EstimateKind k) {
  switch (k) {
    case EstimateKind::oracle_exact:
      return "oracle_exact";
    case EstimateKind::disc_upper_bound:
      return "disc_upper_bound";
    case EstimateKind::candidate_lower:
      return "candidate_lower";
  }
  return "unknown";
}

Containment containment(const AnalyticDisc& f, const DomainSpec& domain, std::size_t samples,
                        double slack) {
  if (samples < 64) throw ContractViolation("containment: at least 64 samples required");
  if (f.dim() != domain.dim) throw ContractViolation("containment: dimension mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(samples);
    worst = std::max(worst, domain.gauge(f(std::polar(1.0, th))));
  }
  Containment c;
  c.margin = 1.0 - worst;
  c.ok = c.margin > slack;
  return c;
}

namespace {

// Functional value at b without the containment check.
ExtReal functional_at(const AnalyticDisc& f, const IdealSpec& A, Complex b) {
  const auto S = oned::pullback_zero_set(ideal::pullback_ideal(A, f));
  if (!S) return ExtReal::neg_inf();
  return oned::green_1d_eval(*S, b);
}

GreenEstimate make_disc_estimate(const AnalyticDisc& f, ExtReal v, Complex b, double slack) {
  GreenEstimate e;
  e.value = v;
  e.kind = EstimateKind::disc_upper_bound;
  e.disc = DiscWitness{f, b, slack};
  return e;
}

}  // namespace

GreenEstimate evaluate_disc_at(const AnalyticDisc& f, const IdealSpec& A, Complex b, double slack) {
  if (f.dim() != A.dim()) throw ContractViolation("evaluate_disc: dimension mismatch");
  if (!(std::abs(b) < 1.0)) throw ContractViolation("evaluate_disc: marked parameter outside the disc");
  const auto c = containment(f, A.domain(), kContainmentSamples, slack);
  if (!c.ok) {
    throw ContainmentError("evaluate_disc: disc not contained in the domain (margin " +
                           ExtReal(c.margin).str() + ")");
  }
  return make_disc_estimate(f, functional_at(f, A, b), b, slack);
}

GreenEstimate evaluate_disc(const AnalyticDisc& f, const IdealSpec& A, double slack) {
  return evaluate_disc_at(f, A, Complex{}, slack);
}

ExtReal reevaluate(const DiscWitness& w, const IdealSpec& A) {
  return evaluate_disc_at(w.disc, A, w.marked, w.slack).value;
}

AnalyticDisc recenter(const AnalyticDisc& f, Complex b, std::size_t degree_cap) {
  const double rb = std::abs(b);
  if (!(rb < 1.0)) throw ContractViolation("recenter: |b| must be < 1");
  if (b == Complex{}) return f;

  const auto comps = f.components().components;
  // Cauchy bound on |t| = R for the composed component, R in (1, 1/|b|).
  auto tail = [&](std::size_t D) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 1; i < 40; ++i) {
      const double R = 1.0 + (1.0 / rb - 1.0) * i / 40.0;
      const double W = (R + rb) / (1.0 - rb * R);
      double worst = 0.0;
      for (const auto& p : comps) {
        double M = 0.0, Wk = 1.0;
        for (const auto& c : p.coeffs()) {
          M += std::abs(c) * Wk;
          Wk *= W;
        }
        worst = std::max(worst, M * std::pow(R, -static_cast<double>(D + 1)) / (1.0 - 1.0 / R));
      }
      best = std::min(best, worst);
    }
    return best;
  };
  std::size_t D = 1;
  while (D <= degree_cap && !(tail(D) < 1e-10)) ++D;
  if (D > degree_cap) throw DegreeCapError("recenter: truncation tail exceeds 1e-10 at the degree cap");

  // m_b(t) = b + (1 - |b|^2) sum_{k>=1} (-conj b)^{k-1} t^k
  std::vector<Complex> s(D + 1);
  s[0] = b;
  Complex q = 1.0 - rb * rb;
  for (std::size_t k = 1; k <= D; ++k) {
    s[k] = q;
    q *= -std::conj(b);
  }
  auto mul_trunc = [&](const std::vector<Complex>& a, const std::vector<Complex>& c) {
    std::vector<Complex> out(D + 1);
    for (std::size_t i = 0; i <= D; ++i) {
      if (a[i] == Complex{}) continue;
      for (std::size_t j = 0; i + j <= D; ++j) out[i + j] += a[i] * c[j];
    }
    return out;
  };
  std::vector<UniPoly> out;
  for (const auto& p : comps) {
    std::vector<Complex> acc(D + 1), pw(D + 1);
    pw[0] = 1.0;
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
      if (k > 0) pw = mul_trunc(pw, s);
      for (std::size_t i = 0; i <= D; ++i) acc[i] += p.coeffs()[k] * pw[i];
    }
    out.emplace_back(std::move(acc));
  }
  return AnalyticDisc::from_components(out);
}

std::optional<MonomialDisc> monomial_disc(PointView x, const std::vector<unsigned>& m,
                                          const DomainSpec& domain, double boundary_gap) {
  const std::size_t n = x.size();
  if (m.size() != n || domain.dim != n) throw ContractViolation("monomial_disc: dimension mismatch");
  const double target = 1.0 - boundary_gap;
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k] > 0 && x[k] != Complex{}) active.push_back(k);
  }
  if (active.empty()) return std::nullopt;

  double b = 0.0;
  if (domain.kind == DomainKind::polydisc) {
    for (std::size_t k = 0; k < n; ++k) {
      if (m[k] == 0 && !(std::abs(x[k]) < target)) return std::nullopt;
    }
    for (auto k : active) b = std::max(b, std::pow(std::abs(x[k]) / target, 1.0 / m[k]));
  } else {
    double fixed = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (m[k] == 0) fixed += std::norm(x[k]);
    }
    auto h = [&](double t) {
      double v = fixed;
      for (auto k : active) v += std::norm(x[k]) / std::pow(t, 2.0 * m[k]);
      return v;
    };
    const double t2 = target * target;
    if (!(h(1.0) < t2)) return std::nullopt;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      (h(mid) < t2 ? hi : lo) = mid;
    }
    b = hi;
  }
  if (!(b < 1.0) || !(b > 0.0)) return std::nullopt;

  Point center(n);
  std::vector<std::vector<Complex>> coeffs(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k] == 0 || x[k] == Complex{}) {
      center[k] = x[k];
      continue;
    }
    coeffs[k].assign(m[k], Complex{});
    coeffs[k][m[k] - 1] = x[k] / std::pow(b, m[k]);
  }
  return MonomialDisc{AnalyticDisc(std::move(center), std::move(coeffs)), b};
}

namespace {

std::vector<unsigned> model_template(const models::ModelId& mid, PointView x) {
  using models::ModelTag;
  std::vector<unsigned> m(mid.n, 0);
  switch (mid.tag) {
    case ModelTag::intro_pair:
      m[0] = 1;
      m[1] = 2;
      break;
    case ModelTag::poly_powers: {
      unsigned L = 1;
      for (unsigned v : mid.nu) L = std::lcm(L, v);
      for (std::size_t k = 0; k < mid.nu.size(); ++k) m[k] = L / mid.nu[k];
      break;
    }
    case ModelTag::poly_z1sq_z1z2:
      m[0] = m[1] = 1;
      break;
    case ModelTag::poly_three_axes:
      m = {1, 1, 1};
      break;
    case ModelTag::ball_coords:
      for (std::size_t k = 0; k < mid.p; ++k) m[k] = 1;
      break;
    case ModelTag::ball_z1sq_z2:
      if (x[0] == Complex{}) {
        m[1] = 1;
      } else {
        m[0] = 1;
        m[1] = 2;
      }
      break;
  }
  return m;
}

struct Candidate {
  ExtReal value = 0.0;
  std::optional<DiscWitness> witness;
};

void offer(Candidate& best, ExtReal v, const AnalyticDisc& f, Complex b, double slack) {
  if (v.is_neg_inf()) return;
  if (!best.witness || v < best.value) {
    best.value = v;
    best.witness = DiscWitness{f, b, slack};
  }
}

void run_templates(const IdealSpec& A, PointView x, const std::optional<models::ModelId>& mid,
                   std::size_t samples, Candidate& best) {
  const std::size_t n = A.dim();
  auto try_m = [&](const std::vector<unsigned>& m) {
    const auto md = monomial_disc(x, m, A.domain());
    if (!md) return;
    if (!containment(md->disc, A.domain(), samples, kTemplateSlack).ok) return;
    offer(best, functional_at(md->disc, A, md->b), md->disc, md->b, kTemplateSlack);
  };
  if (mid) try_m(model_template(*mid, x));
  // every exponent vector in {0..M}^n with at most 4096 combinations
  unsigned M = 4;
  while (M > 1 && std::pow(M + 1.0, static_cast<double>(n)) > 4096.0) --M;
  if (std::pow(M + 1.0, static_cast<double>(n)) > 4096.0) return;
  std::vector<unsigned> m(n, 0);
  while (true) {
    std::size_t j = 0;
    while (j < n && ++m[j] > M) m[j++] = 0;
    if (j == n) break;
    try_m(m);
  }
}

// Random polynomial discs through x at a free parameter b, optionally passing
// through a point y of |A| at a parameter a with prescribed contact orders.
struct Plan {
  std::size_t deg = 1;
  bool anchored = false;
  Point y;
  std::vector<std::size_t> order;
  bool free_a = false;
  // (coordinate, power) for each free complex coefficient
  std::vector<std::pair<std::size_t, std::size_t>> slots;
};

struct Built {
  AnalyticDisc disc;
  Complex b;
};

std::optional<Built> build(const Plan& P, PointView x, const std::vector<double>& p) {
  const Complex b(p[0], p[1]);
  if (!(std::abs(b) < 1.0)) return std::nullopt;
  std::size_t off = 2;
  Complex a{};
  if (P.anchored && P.free_a) {
    a = Complex(p[2], p[3]);
    off = 4;
    if (!(std::abs(a) < 1.0)) return std::nullopt;
  }
  const Complex base_root = P.anchored ? a : b;
  const Complex w = b - a;
  if (P.anchored && std::abs(w) < 1e-9) return std::nullopt;

  const std::size_t n = x.size();
  std::vector<UniPoly> pw{UniPoly::constant(1.0)};
  const UniPoly lin({-base_root, 1.0});
  for (std::size_t k = 1; k <= P.deg; ++k) pw.push_back(pw.back() * lin);

  std::vector<std::vector<Complex>> u(n, std::vector<Complex>(P.deg + 1));
  for (std::size_t s = 0; s < P.slots.size(); ++s) {
    u[P.slots[s].first][P.slots[s].second] = Complex(p[off + 2 * s], p[off + 2 * s + 1]);
  }
  std::vector<UniPoly> comps;
  for (std::size_t j = 0; j < n; ++j) {
    UniPoly c;
    if (P.anchored) {
      const std::size_t o = P.order[j];
      Complex rest{};
      for (std::size_t k = o + 1; k <= P.deg; ++k) rest += u[j][k] * std::pow(w, static_cast<int>(k));
      u[j][o] = (x[j] - P.y[j] - rest) / std::pow(w, static_cast<int>(o));
      c = UniPoly::constant(P.y[j]);
      for (std::size_t k = o; k <= P.deg; ++k) c = c + pw[k] * u[j][k];
    } else {
      c = UniPoly::constant(x[j]);
      for (std::size_t k = 1; k <= P.deg; ++k) c = c + pw[k] * u[j][k];
    }
    comps.push_back(std::move(c));
  }
  for (const auto& c : comps) {
    for (const auto& v : c.coeffs()) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return std::nullopt;
    }
  }
  return Built{AnalyticDisc::from_components(comps), b};
}

// Enumerated plan: a near anchor with fixed contact orders, anchor parameter 0.
struct SystematicPlan {
  std::size_t anchor = 0;
  std::vector<std::size_t> order;
};

// Near anchors times contact orders in {1,2,3}^n, lowest total order first.
std::vector<SystematicPlan> systematic_plans(std::size_t n_near, std::size_t n, std::size_t limit) {
  std::vector<SystematicPlan> out;
  if (n_near == 0 || n > 8 || limit == 0) return out;
  std::vector<std::vector<std::size_t>> orders;
  std::vector<std::size_t> o(n, 1);
  while (true) {
    orders.push_back(o);
    std::size_t j = 0;
    while (j < n && ++o[j] > 3) o[j++] = 1;
    if (j == n) break;
  }
  auto total = [](const std::vector<std::size_t>& v) { return std::accumulate(v.begin(), v.end(), std::size_t{0}); };
  std::stable_sort(orders.begin(), orders.end(), [&](const auto& a, const auto& b) { return total(a) < total(b); });
  for (const auto& ord : orders) {
    for (std::size_t a = 0; a < n_near; ++a) {
      if (out.size() == limit) return out;
      out.push_back({a, ord});
    }
  }
  return out;
}

// pool[0 .. n_near) are points of |A| obtained from x itself.
Candidate run_restart(const IdealSpec& A, PointView x, const std::vector<Point>& pool, std::size_t n_near,
                      const SystematicPlan* sys, const EnvelopeOptions& opt, std::size_t r) {
  Rng rng = make_rng(opt.seed, 0x5000 + r);
  const std::size_t n = A.dim();
  Plan P;
  P.deg = 1 + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(opt.degree));
  P.deg = std::min(P.deg, opt.degree);
  P.anchored = !pool.empty() && uniform01(rng) < 0.75;
  std::vector<double> p0{0.0, 0.0};
  if (sys) {
    P.anchored = true;
    P.y = pool[sys->anchor];
    P.order = sys->order;
    P.deg = std::min(opt.degree, *std::max_element(P.order.begin(), P.order.end()) + 1);
    for (auto& o : P.order) o = std::min(o, P.deg);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = P.order[j] + 1; k <= P.deg; ++k) P.slots.emplace_back(j, k);
    }
  } else if (P.anchored) {
    const std::size_t span = n_near > 0 && uniform01(rng) < 0.5 ? n_near : pool.size();
    P.y = pool[static_cast<std::size_t>(uniform01(rng) * static_cast<double>(span)) % span];
    auto draw_order = [&] {
      const double t = uniform01(rng);
      return t < 0.5 ? std::size_t{1} : (t < 0.8 ? std::size_t{2} : std::size_t{3});
    };
    const bool common = uniform01(rng) < 0.5;
    const std::size_t o_common = draw_order();
    for (std::size_t j = 0; j < n; ++j) P.order.push_back(std::min(common ? o_common : draw_order(), P.deg));
    P.free_a = uniform01(rng) < 0.5;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = P.order[j] + 1; k <= P.deg; ++k) P.slots.emplace_back(j, k);
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 1; k <= P.deg; ++k) P.slots.emplace_back(j, k);
    }
  }
  Complex b0 = uniform_in_disc(rng, 0.9);
  Complex a0 = P.free_a ? uniform_in_disc(rng, 0.5) : Complex{};
  if (P.anchored) {
    for (int t = 0; t < 16 && std::abs(b0 - a0) < 0.05; ++t) b0 = uniform_in_disc(rng, 0.9);
  }
  p0 = {b0.real(), b0.imag()};
  if (P.anchored && P.free_a) {
    p0.push_back(a0.real());
    p0.push_back(a0.imag());
  }
  const std::size_t coeff_off = p0.size();
  for (const auto& sl : P.slots) {
    const Complex c = complex_normal(rng) * (0.1 / static_cast<double>(sl.second));
    p0.push_back(c.real());
    p0.push_back(c.imag());
  }

  Candidate best;
  std::size_t used = 0;
  auto objective = [&](const std::vector<double>& p) -> double {
    ++used;
    const auto B = build(P, x, p);
    if (!B) return 3.0;
    const auto c = containment(B->disc, A.domain(), opt.containment_samples, opt.slack);
    if (!c.ok) return 1.0 + (opt.slack - c.margin);
    const ExtReal v = functional_at(B->disc, A, B->b);
    if (v.is_neg_inf()) return 3.0;
    offer(best, v, B->disc, B->b, opt.slack);
    return v.value();
  };

  // shrink the free coefficients until the starting disc is contained
  for (int t = 0; t < 8 && used < opt.budget; ++t) {
    if (objective(p0) <= 0.0) break;
    for (std::size_t i = coeff_off; i < p0.size(); ++i) p0[i] *= 0.5;
  }
  if (used < opt.budget) nelder_mead(objective, p0, 0.1, opt.budget - used);
  return best;
}

}  // namespace

GreenEstimate optimize_envelope(const IdealSpec& A, PointView x, const EnvelopeOptions& opt) {
  if (x.size() != A.dim()) throw ContractViolation("optimize_envelope: dimension mismatch");
  if (!A.domain().contains_open(x)) throw ContractViolation("optimize_envelope: x outside the open domain");
  if (opt.degree < 1) throw ContractViolation("optimize_envelope: degree must be >= 1");

  const Point xp(x.begin(), x.end());
  const auto mid = models::match_model(A);
  const auto nu = ideal::nu_tilde(A, x);
  if (!(nu.is_finite() && nu.value == 0)) {
    GreenEstimate e;
    e.value = ExtReal::neg_inf();
    e.kind = EstimateKind::oracle_exact;
    e.model = mid;
    return e;
  }

  GreenEstimate vac;
  vac.value = 0.0;
  vac.kind = EstimateKind::disc_upper_bound;
  vac.disc = DiscWitness{AnalyticDisc(xp), Complex{}, opt.slack};
  vac.vacuous = true;
  if (opt.budget == 0) return vac;

  Candidate best;
  if (opt.templates) run_templates(A, x, mid, opt.containment_samples, best);

  std::vector<Point> pool = ideal::find_zero_set_points(A, 32, derive_seed(opt.seed, 0x700), true);
  // points of |A| near x: descents from x with each subset of coordinates zeroed
  std::vector<Point> near;
  auto add_near = [&](Point q) {
    const bool dup = std::any_of(near.begin(), near.end(), [&](const Point& r) {
      double d = 0.0;
      for (std::size_t j = 0; j < q.size(); ++j) d = std::max(d, std::abs(q[j] - r[j]));
      return d < 1e-8;
    });
    if (!dup) near.push_back(std::move(q));
  };
  const Point origin(A.dim());
  if (A.abs_psi(origin) == 0.0) add_near(origin);
  const std::size_t n = A.dim();
  if (n <= 10) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      Point s = xp;
      for (std::size_t j = 0; j < n; ++j) {
        if (mask >> j & 1) s[j] = Complex{};
      }
      if (auto q = ideal::descend_to_zero_set(A, std::move(s))) add_near(std::move(*q));
    }
  }
  pool.insert(pool.begin(), near.begin(), near.end());

  const auto sys = systematic_plans(near.size(), n, (opt.restarts + 1) / 2);
  std::vector<Candidate> per(opt.restarts);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < opt.restarts; r = next++) {
      // even restarts walk the enumerated plans, so restart r is the same for any restart count
      const SystematicPlan* plan = r % 2 == 0 && r / 2 < sys.size() ? &sys[r / 2] : nullptr;
      per[r] = run_restart(A, xp, pool, near.size(), plan, opt, r);
    }
  };
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads = std::min<std::size_t>(hw, std::max<std::size_t>(1, opt.restarts));
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < n_threads; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  for (const auto& c : per) {
    if (c.witness) offer(best, c.value, c.witness->disc, c.witness->marked, c.witness->slack);
  }
  if (!best.witness || !(best.value < ExtReal(0.0))) return vac;
  GreenEstimate e = make_disc_estimate(best.witness->disc, best.value, best.witness->marked,
                                       best.witness->slack);
  e.model = mid;
  return e;
}

}  // namespace green::envelope
