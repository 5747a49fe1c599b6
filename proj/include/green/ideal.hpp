#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "green/analytic_disc.hpp"
#include "green/poly.hpp"
#include "green/rng.hpp"
#include "green/types.hpp"

namespace green::ideal {

enum class DomainKind { polydisc, ball };

// Unit polydisc D^n or unit ball B_n.
struct DomainSpec {
  DomainKind kind = DomainKind::polydisc;
  std::size_t dim = 1;

  DomainSpec() = default;
  DomainSpec(DomainKind k, std::size_t n);

  // Gauge of the domain: max_j |z_j| (polydisc) or |z| (ball).
  double gauge(PointView z) const;
  bool contains_open(PointView z) const { return z.size() == dim && gauge(z) < 1.0; }
  bool contains_closed(PointView z) const { return z.size() == dim && gauge(z) <= 1.0; }
  // Uniform sample of the region {gauge < radius}.
  Point sample(Rng& rng, double radius = 1.0) const;

  friend bool operator==(const DomainSpec&, const DomainSpec&) = default;
};

std::string to_string(DomainKind k);

// A closed complex subspace given by global generators on a domain.
class IdealSpec {
 public:
  IdealSpec(DomainSpec domain, std::vector<poly::MultiPoly> generators);

  const DomainSpec& domain() const { return domain_; }
  const std::vector<poly::MultiPoly>& generators() const { return generators_; }
  std::size_t dim() const { return domain_.dim; }
  std::size_t size() const { return generators_.size(); }
  int max_degree() const;

  // (psi_1(z), ..., psi_m(z))
  Point values(PointView z) const;
  // Euclidean norm |psi(z)|.
  double abs_psi(PointView z) const;
  ExtReal log_abs_psi(PointView z) const { return log_abs(abs_psi(z)); }

 private:
  DomainSpec domain_;
  std::vector<poly::MultiPoly> generators_;
};

// Coordinate power map (z_1,...,z_n) -> (z_1^{k_1}, ..., z_n^{k_n}).
struct ProperMapSpec {
  std::vector<std::uint32_t> exponents;

  explicit ProperMapSpec(std::vector<std::uint32_t> k);
  Point apply(PointView y) const;
};

// Minimal vanishing order of the generators at x (0 off |A|).
// max_order < 0 selects the default 2 * max generator degree.
poly::Order nu_tilde(const IdealSpec& A, PointView x, int max_order = -1);

struct PulledBack {
  poly::UniPoly poly;
  bool identically_zero = false;
};

// Generators composed with the disc; zero components retained and flagged.
std::vector<PulledBack> pullback_ideal(const IdealSpec& A, const AnalyticDisc& f);

// Generators composed with the coordinate power map.
IdealSpec pullback_ideal_map(const IdealSpec& A, const ProperMapSpec& phi);

// Points of |A| in the open domain, by damped Gauss-Newton on psi = 0 from
// random starts. With sparse starts, each start has a random subset of its
// coordinates set to zero first. Results are deduplicated at 1e-8.
std::vector<Point> find_zero_set_points(const IdealSpec& A, std::size_t starts, std::uint64_t seed,
                                        bool sparse_starts = true);

// The same Gauss-Newton descent from a given start; nullopt if it does not
// reach |A| inside the open domain.
std::optional<Point> descend_to_zero_set(const IdealSpec& A, Point start);

struct ProbeSpec {
  std::size_t anchors = 10;          // points of |A| to probe around
  std::size_t per_radius = 25;       // probes per anchor and log-radius
  std::vector<double> log_radii{-1.0, -2.0, -4.0, -8.0};
};

struct ReductionReport {
  bool success = false;
  double max_log_diff = 0.0;         // +infinity when xi vanishes off |A|
  double mean_log_diff = 0.0;
  double declared_bound = 0.0;
  std::size_t probes_used = 0;
  std::size_t trial = 0;             // index of the retained draw
  std::vector<std::vector<Complex>> combination;  // target_k rows of length m
};

struct ReductionResult {
  IdealSpec reduced;
  ReductionReport report;
};

// Random complex linear combinations xi = R psi with target_k rows, certified
// on a probe grid near |A|. All `trials` draws are evaluated; the best report
// (SUCCESS first, then smallest max difference) is returned.
ReductionResult reduce_generators(const IdealSpec& A, std::size_t target_k, std::size_t trials,
                                  std::uint64_t seed, const ProbeSpec& probes = {});

}  // namespace green::ideal
