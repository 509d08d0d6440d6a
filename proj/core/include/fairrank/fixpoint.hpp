#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fairrank/ranking.hpp"
#include "fairrank/tournament.hpp"

namespace fairrank {

// A point of the standard simplex over V: values in [0,1] summing to 1.
class SimplicialRanking {
 public:
  // Throws kDomainMismatch when the values leave the simplex by more than
  // `tolerance`.
  explicit SimplicialRanking(std::vector<double> values,
                             double tolerance = kDefaultEpsilon);

  static SimplicialRanking uniform(std::size_t n);
  static SimplicialRanking vertex(std::size_t n, Vertex x);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  Ranking to_ranking(double epsilon = kDefaultEpsilon) const {
    return Ranking::floating(values_, epsilon);
  }

 private:
  std::vector<double> values_;
};

// max_x |r(x) - r'(x)|
double max_distance(std::span<const double> a, std::span<const double> b);

struct RecalcConfig {
  double tolerance = 1e-12;
  std::size_t max_iterations = 100'000;
  // Added to the diagonal of the out-neighbourhood matrix during power
  // iteration. Fixed points are unchanged by the shift.
  double shift = 1.0;
};

using Recalculation =
    std::function<SimplicialRanking(const SimplicialRanking&)>;

// lambda_r = sum_x sum_{z in x+} r(z).
double recalc_normalizer(const Tournament& t, const SimplicialRanking& r);

// r_phi(x) = lambda_r^-1 * sum_{z in x+} r(z). Throws kZeroNormalizer when
// lambda_r == 0, kDomainMismatch on size mismatch.
SimplicialRanking recalc_apply(const Tournament& t, const SimplicialRanking& r);

// r -> normalize(A r + shift * r); shift = 0 gives recalc_apply.
Recalculation shifted_recalculation(const Tournament& t, double shift);

struct FixedPointResult {
  SimplicialRanking ranking;
  std::size_t iterations = 0;
};

// Iterates r <- recalc(r) until d(recalc(r), r) <= cfg.tolerance.
// Throws kNoConvergence after cfg.max_iterations updates. cfg.shift is not
// consulted; bake it into `recalc` instead.
FixedPointResult iterate_to_fixed_point(const Recalculation& recalc,
                                        const SimplicialRanking& r0,
                                        const RecalcConfig& cfg);

struct PerronResult {
  SimplicialRanking ranking;
  double eigenvalue = 0.0;
  // max_x |lambda r(x) - (A r)(x)|
  double residual = 0.0;
  std::size_t iterations = 0;
};

// Dominant eigenpair of the 0/1 tournament matrix by shifted power
// iteration from the uniform vector. Requires a strongly connected
// tournament with at least 3 vertices (kNotStronglyConnected otherwise).
PerronResult perron_fixed_point(const Tournament& t,
                                const RecalcConfig& cfg = {});

struct ComponentSolve {
  std::vector<Vertex> vertices;
  double eigenvalue = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
};

struct LinearFairResult {
  Ranking ranking;
  std::vector<ComponentSolve> components;
  std::vector<double> mu;
  bool verified = false;
  std::size_t escalations = 0;
};

struct LinearFairOptions {
  RecalcConfig recalc;
  double epsilon = kDefaultEpsilon;
  double gap_factor = 2.0;
  std::size_t max_escalations = 20;
};

// Positive linear fair ranking: per-component Perron vectors (singletons get
// rank 1) stacked by positive scale factors mu_i so that every component
// sits strictly above the ones it beats. The assembly is checked with
// is_fair(kLin); on failure the gap factor is squared and the assembly
// retried. Throws kVerificationFailed when escalations run out.
LinearFairResult linear_fair_ranking(const Tournament& t,
                                     const LinearFairOptions& options = {});

std::string to_json(const LinearFairResult& result);

}  // namespace fairrank
