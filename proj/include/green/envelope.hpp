#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "green/analytic_disc.hpp"
#include "green/ideal.hpp"
#include "green/models.hpp"

namespace green::envelope {

inline constexpr double kContainmentSlack = 1e-3;
inline constexpr std::size_t kContainmentSamples = 256;
// Slack for boundary-scaled templates; their boundary modulus is constant on
// the circle, so sampling is exact.
inline constexpr double kTemplateSlack = 5e-10;

struct Containment {
  bool ok = false;
  double margin = 0.0;  // 1 - max boundary gauge
};

// Boundary sampling of the gauge of f at `samples` equispaced points of the
// unit circle; ok iff margin > slack.
Containment containment(const AnalyticDisc& f, const ideal::DomainSpec& domain,
                        std::size_t samples = kContainmentSamples, double slack = kContainmentSlack);

class ContainmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegreeCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EstimateKind { oracle_exact, disc_upper_bound, candidate_lower };
std::string to_string(EstimateKind k);

// A disc together with the parameter at which it passes through the target.
struct DiscWitness {
  AnalyticDisc disc;
  Complex marked{};
  double slack = kContainmentSlack;
};

struct GreenEstimate {
  ExtReal value = 0.0;
  EstimateKind kind = EstimateKind::disc_upper_bound;
  std::optional<DiscWitness> disc;
  std::optional<models::ModelId> model;
  // True when no disc improved on the constant-disc value 0.
  bool vacuous = false;
};

// G_{f*A}(0); refuses discs failing containment.
GreenEstimate evaluate_disc(const AnalyticDisc& f, const ideal::IdealSpec& A,
                            double slack = kContainmentSlack);

// G_{f*A}(b): the functional of f precomposed with the automorphism sending
// 0 to b, computed directly from the roots of f*A.
GreenEstimate evaluate_disc_at(const AnalyticDisc& f, const ideal::IdealSpec& A, Complex b,
                               double slack = kContainmentSlack);

// Re-evaluates a witness under its own slack.
ExtReal reevaluate(const DiscWitness& w, const ideal::IdealSpec& A);

// g(t) = f((b + t) / (1 + conj(b) t)) as a polynomial truncated at the first
// degree whose Cauchy tail bound on the closed unit disc is below 1e-10.
AnalyticDisc recenter(const AnalyticDisc& f, Complex b, std::size_t degree_cap = 256);

// Monomial disc t -> (x_k (t / b)^{m_k})_k with real b in (0,1) minimal so
// that the gauge on the circle equals 1 - slack'. nullopt if no such b.
struct MonomialDisc {
  AnalyticDisc disc;
  double b = 0.0;
};
std::optional<MonomialDisc> monomial_disc(PointView x, const std::vector<unsigned>& m,
                                          const ideal::DomainSpec& domain,
                                          double boundary_gap = 1e-9);

struct EnvelopeOptions {
  std::size_t degree = 4;
  std::size_t restarts = 20;
  std::size_t budget = 500;  // objective evaluations per restart
  std::uint64_t seed = 0;
  bool templates = true;
  std::size_t containment_samples = kContainmentSamples;
  double slack = kContainmentSlack;
};

// Best certified upper bound for G_A(x) over structural templates and seeded
// random restarts with simplex descent.
GreenEstimate optimize_envelope(const ideal::IdealSpec& A, PointView x, const EnvelopeOptions& opt);

inline GreenEstimate optimize_envelope(const ideal::IdealSpec& A, PointView x, std::size_t degree,
                                       std::size_t restarts, std::size_t budget, std::uint64_t seed) {
  EnvelopeOptions o;
  o.degree = degree;
  o.restarts = restarts;
  o.budget = budget;
  o.seed = seed;
  return optimize_envelope(A, x, o);
}

}  // namespace green::envelope
