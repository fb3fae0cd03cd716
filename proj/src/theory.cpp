#include "lphvg/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lphvg/error.hpp"

namespace lphvg::theory {
namespace {

double rho_of(Penetrability rho) { return static_cast<double>(rho.rho); }

bool check_scope(Penetrability rho, Scope scope) {
  if (rho.rho <= 2) return false;
  if (scope == Scope::kStrict) {
    throw ValidationError("clustering bounds hold for rho in {0,1,2}; got rho=" +
                          std::to_string(rho.rho) + " (use the unvalidated scope to evaluate anyway)");
  }
  return true;
}

// Root k of C k^2 - (C + linear) k + 2 constant = 0 taking the larger branch.
double invert_bound(double c, double linear, double constant) {
  const double phi = c + linear;
  const double disc = phi * phi - 8.0 * c * constant;
  if (!(c > 0.0) || disc < 0.0) return std::nan("");
  return (phi + std::sqrt(disc)) / (2.0 * c);
}

double pmf_at_real_degree(Penetrability rho, double k) {
  const double r = rho_of(rho);
  return std::exp((k - 2.0 * (r + 1.0)) * std::log((2.0 * r + 2.0) / (2.0 * r + 3.0))) / (2.0 * r + 3.0);
}

template <class Bound>
double clustering_pmf(Penetrability rho, double c, Scope scope, double linear, double constant,
                      std::int64_t k_min, Bound bound, const char* which) {
  check_scope(rho, scope);
  const double k = invert_bound(c, linear, constant);
  const auto k_int = static_cast<std::int64_t>(std::llround(k));
  const bool attainable = std::isfinite(k) && std::abs(k - static_cast<double>(k_int)) < 1e-6 &&
                          k_int >= k_min &&
                          std::abs(bound(rho, k_int, scope).value - c) <= 1e-9;
  if (!attainable) {
    throw ValidationError(std::string("clustering value ") + std::to_string(c) + " is not an attainable C_" +
                          which + " for rho=" + std::to_string(rho.rho));
  }
  return pmf_at_real_degree(rho, k);
}

}  // namespace

double decay_rate(Penetrability rho) {
  const double r = rho_of(rho);
  return std::log((2.0 * r + 3.0) / (2.0 * r + 2.0));
}

double degree_pmf(Penetrability rho, std::int64_t k) {
  const std::int64_t k0 = min_degree(rho);
  if (k < k0) return 0.0;
  const double r = rho_of(rho);
  return std::pow((2.0 * r + 2.0) / (2.0 * r + 3.0), static_cast<double>(k - k0)) / (2.0 * r + 3.0);
}

double mean_degree(Penetrability rho) { return 4.0 * (rho_of(rho) + 1.0); }

double mean_degree_periodic(Penetrability rho, std::int64_t period) {
  const std::int64_t span = 2 * static_cast<std::int64_t>(rho.rho) + 1;
  if (period <= span) {
    throw ValidationError("periodic mean degree needs period > 2rho+1 (period=" + std::to_string(period) +
                          ", rho=" + std::to_string(rho.rho) + ")");
  }
  return mean_degree(rho) * (1.0 - static_cast<double>(span) / (2.0 * static_cast<double>(period)));
}

ClusteringBound clustering_min(Penetrability rho, std::int64_t k, Scope scope) {
  const bool unvalidated = check_scope(rho, scope);
  if (k < min_degree(rho)) {
    throw ValidationError("C_min needs k >= 2(rho+1); got k=" + std::to_string(k));
  }
  const double r = rho_of(rho);
  const double kd = static_cast<double>(k);
  return {2.0 / kd + 2.0 * r * (kd - 2.0) / (kd * (kd - 1.0)), false, unvalidated};
}

ClusteringBound clustering_max(Penetrability rho, std::int64_t k, Scope scope) {
  const bool unvalidated = check_scope(rho, scope);
  if (k < min_degree(rho)) {
    throw ValidationError("C_max needs k >= 2(rho+1); got k=" + std::to_string(k));
  }
  const double r = rho_of(rho);
  const double kd = static_cast<double>(k);
  const double value = 2.0 / kd + 4.0 * r * (kd - 3.0) / (kd * (kd - 1.0));
  if (k < 2 * (2 * static_cast<std::int64_t>(rho.rho) + 1)) {
    return {std::min(1.0, value), true, unvalidated};
  }
  return {value, false, unvalidated};
}

double clustering_pmf_min(Penetrability rho, double c, Scope scope) {
  const double r = rho_of(rho);
  return clustering_pmf(rho, c, scope, 2.0 * r + 2.0, 2.0 * r + 1.0, min_degree(rho), clustering_min, "min");
}

double clustering_pmf_max(Penetrability rho, double c, Scope scope) {
  const double r = rho_of(rho);
  return clustering_pmf(rho, c, scope, 4.0 * r + 2.0, 6.0 * r + 1.0,
                        2 * (2 * static_cast<std::int64_t>(rho.rho) + 1), clustering_max, "max");
}

double long_visibility_prob(Penetrability rho, std::int64_t sep) {
  if (sep < 1) throw ValidationError("separation must be >= 1; got " + std::to_string(sep));
  if (sep <= static_cast<std::int64_t>(rho.rho) + 1) return 1.0;
  const double r = rho_of(rho);
  const double s = static_cast<double>(sep);
  return std::clamp((2.0 * r * (r + 1.0) + 2.0) / (s * (s + 1.0)), 0.0, 1.0);
}

double long_visibility_prob_exact(Penetrability rho, std::int64_t sep) {
  if (sep < 1) throw ValidationError("separation must be >= 1; got " + std::to_string(sep));
  if (sep <= static_cast<std::int64_t>(rho.rho) + 1) return 1.0;
  const double r = rho_of(rho);
  const double s = static_cast<double>(sep);
  return (r + 1.0) * (r + 2.0) / (s * (s + 1.0));
}

}  // namespace lphvg::theory
