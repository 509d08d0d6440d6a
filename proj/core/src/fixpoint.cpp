#include "fairrank/fixpoint.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fairrank/error.hpp"
#include "json.hpp"

namespace fairrank {

SimplicialRanking::SimplicialRanking(std::vector<double> values, double tolerance)
    : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorCode::kDomainMismatch, "empty simplicial ranking");
  double sum = 0.0;
  for (double v : values_) {
    if (!(v >= -tolerance && v <= 1.0 + tolerance)) {
      throw Error(ErrorCode::kDomainMismatch, "simplicial rank outside [0,1]");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > tolerance) {
    throw Error(ErrorCode::kDomainMismatch, "simplicial ranks sum to " + std::to_string(sum));
  }
}

SimplicialRanking SimplicialRanking::uniform(std::size_t n) {
  return SimplicialRanking(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

SimplicialRanking SimplicialRanking::vertex(std::size_t n, Vertex x) {
  if (x < 1 || x > n) throw Error(ErrorCode::kUnknownVertex, std::to_string(x));
  std::vector<double> v(n, 0.0);
  v[x - 1] = 1.0;
  return SimplicialRanking(std::move(v));
}

double max_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDomainMismatch, "size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

namespace {

// (A r)(x) = sum of r over x+.
std::vector<double> apply_matrix(const Tournament& t, std::span<const double> r) {
  const std::size_t n = t.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (t.beats(i, j)) s += r[j];
    }
    out[i] = s;
  }
  return out;
}

void check_size(const Tournament& t, const SimplicialRanking& r) {
  if (t.size() != r.size()) {
    throw Error(ErrorCode::kDomainMismatch, "simplicial ranking size differs from tournament");
  }
}

std::vector<double> normalized(std::vector<double> v) {
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  if (!(total > 0.0)) throw Error(ErrorCode::kZeroNormalizer, "normalizer is zero");
  for (double& x : v) x /= total;
  return v;
}

}  // namespace

double recalc_normalizer(const Tournament& t, const SimplicialRanking& r) {
  check_size(t, r);
  const auto sums = apply_matrix(t, r.values());
  return std::accumulate(sums.begin(), sums.end(), 0.0);
}

SimplicialRanking recalc_apply(const Tournament& t, const SimplicialRanking& r) {
  check_size(t, r);
  return SimplicialRanking(normalized(apply_matrix(t, r.values())));
}

Recalculation shifted_recalculation(const Tournament& t, double shift) {
  return [&t, shift](const SimplicialRanking& r) {
    check_size(t, r);
    auto next = apply_matrix(t, r.values());
    for (std::size_t i = 0; i < next.size(); ++i) next[i] += shift * r[i];
    return SimplicialRanking(normalized(std::move(next)));
  };
}

FixedPointResult iterate_to_fixed_point(const Recalculation& recalc,
                                        const SimplicialRanking& r0,
                                        const RecalcConfig& cfg) {
  if (!(cfg.tolerance > 0.0) || cfg.max_iterations < 1) {
    throw Error(ErrorCode::kDomainMismatch, "invalid recalculation config");
  }
  SimplicialRanking current = r0;
  for (std::size_t k = 0;; ++k) {
    SimplicialRanking next = recalc(current);
    if (max_distance(next.values(), current.values()) <= cfg.tolerance) {
      return {std::move(current), k};
    }
    if (k == cfg.max_iterations) {
      throw Error(ErrorCode::kNoConvergence,
                  "no fixed point within " + std::to_string(cfg.max_iterations) + " iterations");
    }
    current = std::move(next);
  }
}

PerronResult perron_fixed_point(const Tournament& t, const RecalcConfig& cfg) {
  if (!(cfg.tolerance > 0.0) || cfg.max_iterations < 1 || cfg.shift < 0.0) {
    throw Error(ErrorCode::kDomainMismatch, "invalid recalculation config");
  }
  if (t.size() < 3 || !is_strongly_connected(t)) {
    throw Error(ErrorCode::kNotStronglyConnected,
                "Perron solve needs a strongly connected tournament with n >= 3");
  }
  const std::size_t n = t.size();
  std::vector<double> r(n, 1.0 / static_cast<double>(n));
  for (std::size_t k = 0;; ++k) {
    std::vector<double> image = apply_matrix(t, r);
    const double lambda = std::accumulate(image.begin(), image.end(), 0.0);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      residual = std::max(residual, std::abs(lambda * r[i] - image[i]));
    }
    if (residual <= cfg.tolerance) {
      return PerronResult{SimplicialRanking(std::move(r)), lambda, residual, k};
    }
    if (k == cfg.max_iterations) {
      throw Error(ErrorCode::kNoConvergence,
                  "power iteration residual " + std::to_string(residual) + " after " +
                      std::to_string(k) + " iterations");
    }
    for (std::size_t i = 0; i < n; ++i) image[i] += cfg.shift * r[i];
    r = normalized(std::move(image));
  }
}

LinearFairResult linear_fair_ranking(const Tournament& t, const LinearFairOptions& options) {
  const auto scc = scc_decompose(t);
  const std::size_t k = scc.components.size();

  std::vector<ComponentSolve> solves;
  std::vector<std::vector<double>> internal;
  solves.reserve(k);
  internal.reserve(k);
  for (const auto& component : scc.components) {
    ComponentSolve solve{component, 0.0, 0.0, 0};
    if (component.size() == 1) {
      internal.push_back({1.0});
    } else {
      const PerronResult perron = perron_fixed_point(t.induced(component), options.recalc);
      solve.eigenvalue = perron.eigenvalue;
      solve.residual = perron.residual;
      solve.iterations = perron.iterations;
      internal.emplace_back(perron.ranking.values().begin(), perron.ranking.values().end());
    }
    solves.push_back(std::move(solve));
  }

  double gap = options.gap_factor;
  for (std::size_t escalation = 0;; ++escalation) {
    std::vector<double> mu(k, 1.0);
    for (std::size_t i = 0; i + 1 < k; ++i) {
      const double top = *std::max_element(internal[i].begin(), internal[i].end());
      const double bottom = *std::min_element(internal[i + 1].begin(), internal[i + 1].end());
      mu[i + 1] = mu[i] * (top / bottom) * gap;
    }
    if (!std::all_of(mu.begin(), mu.end(), [](double m) { return std::isfinite(m); })) {
      throw Error(ErrorCode::kVerificationFailed,
                  "component scale factors overflowed after " + std::to_string(escalation) +
                      " escalations");
    }
    std::vector<double> values(t.size(), 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      const auto& comp = scc.components[i];
      for (std::size_t p = 0; p < comp.size(); ++p) {
        values[comp[p] - 1] = mu[i] * internal[i][p];
      }
    }
    Ranking ranking = Ranking::floating(std::move(values), options.epsilon);
    const FairnessVerdict verdict = is_fair(t, ranking, FairnessClass::kLin);
    if (verdict.fair) {
      return LinearFairResult{std::move(ranking), std::move(solves), std::move(mu), true,
                              escalation};
    }
    if (escalation == options.max_escalations) {
      const auto& v = *verdict.violation;
      throw Error(ErrorCode::kVerificationFailed,
                  "linear fairness fails at (" + std::to_string(v.x) + "," +
                      std::to_string(v.y) + "): " + v.rule);
    }
    gap *= gap;
  }
}

std::string to_json(const LinearFairResult& result) {
  nlohmann::json components = nlohmann::json::array();
  for (const auto& c : result.components) {
    components.push_back({{"vertices", c.vertices},
                          {"lambda", c.eigenvalue},
                          {"residual", c.residual},
                          {"iterations", c.iterations}});
  }
  std::vector<double> ranking;
  for (Vertex x = 1; x <= result.ranking.size(); ++x) ranking.push_back(result.ranking.as_double(x));
  nlohmann::json j;
  j["components"] = std::move(components);
  j["mu"] = result.mu;
  j["ranking"] = std::move(ranking);
  j["verified"] = result.verified;
  j["escalations"] = result.escalations;
  return j.dump();
}

}  // namespace fairrank
