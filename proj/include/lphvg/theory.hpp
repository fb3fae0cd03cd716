#pragma once

#include <cstdint>

#include "lphvg/series.hpp"

// Closed-form predictions for graphs built from i.i.d. series drawn from a
// continuous density. All functions are pure.
namespace lphvg::theory {

// Smallest possible degree of an interior node: 2(rho+1).
constexpr std::int64_t min_degree(Penetrability rho) { return 2 * (static_cast<std::int64_t>(rho.rho) + 1); }

// Exponential decay rate of the degree distribution, ln((2rho+3)/(2rho+2)).
double decay_rate(Penetrability rho);

// P(k) = 1/(2rho+3) * ((2rho+2)/(2rho+3))^(k - 2(rho+1)) for k >= 2(rho+1), else 0.
double degree_pmf(Penetrability rho, std::int64_t k);

// 4(rho+1).
double mean_degree(Penetrability rho);

// Mean degree for a periodic series with `period` distinct values per period:
// 4(rho+1)(1 - (2rho+1)/(2T)). Requires period > 2rho+1.
double mean_degree_periodic(Penetrability rho, std::int64_t period);

// The clustering bounds are established for rho in {0,1,2}. kUnvalidated
// evaluates the same expressions for larger rho.
enum class Scope { kStrict, kUnvalidated };

struct ClusteringBound {
  double value = 0.0;
  // Max bound evaluated below k = 2(2rho+1) and clamped to 1.
  bool extrapolated = false;
  // rho outside {0,1,2}.
  bool unvalidated = false;
};

// C_min(k) = 2/k + 2rho(k-2)/(k(k-1)), k >= 2(rho+1).
ClusteringBound clustering_min(Penetrability rho, std::int64_t k, Scope scope = Scope::kStrict);
// C_max(k) = 2/k + 4rho(k-3)/(k(k-1)), k >= 2(2rho+1); for
// 2(rho+1) <= k < 2(2rho+1) the value is min(1, C_max(k)) and flagged.
ClusteringBound clustering_max(Penetrability rho, std::int64_t k, Scope scope = Scope::kStrict);

// Distribution of the bound values, i.e. P(k) evaluated at the degree k(c)
// recovered from the quadratic C k^2 - (C + phi0) k + 2 c0 = 0. `c` must be
// an attainable bound value; otherwise ValidationError.
double clustering_pmf_min(Penetrability rho, double c, Scope scope = Scope::kStrict);
double clustering_pmf_max(Penetrability rho, double c, Scope scope = Scope::kStrict);

// Probability that two samples `sep` indices apart are linked:
// 1 for sep <= rho+1, otherwise (2rho(rho+1)+2)/(sep(sep+1)) clamped to [0,1].
// `sep` is the index separation j - i (sep - 1 values lie between).
double long_visibility_prob(Penetrability rho, std::int64_t sep);

// Same probability by rank counting: the smaller endpoint must rank among
// the top rho+2 of the sep+1 values, giving (rho+1)(rho+2)/(sep(sep+1)).
// Coincides with long_visibility_prob for rho <= 1 only.
double long_visibility_prob_exact(Penetrability rho, std::int64_t sep);

}  // namespace lphvg::theory
