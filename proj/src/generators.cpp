#include "lphvg/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lphvg/error.hpp"
#include "lphvg/random.hpp"

namespace lphvg {
namespace {

constexpr double kDivergence = 1e10;

void require_length(std::size_t n) {
  if (n < 2) throw ValidationError("series length must be >= 2, got " + std::to_string(n));
}

}  // namespace

TimeSeries gen_iid(const IidSpec& spec) {
  require_length(spec.n);
  if (spec.family == IidFamily::kGaussian && !(spec.sd > 0.0)) {
    throw ValidationError("gaussian sd must be > 0");
  }
  if (spec.family == IidFamily::kPowerLaw) {
    if (!(spec.alpha > 1.0)) throw ValidationError("power-law alpha must be > 1");
    if (!(spec.xmin > 0.0)) throw ValidationError("power-law xmin must be > 0");
  }
  Rng rng(spec.rng);
  std::vector<double> values(spec.n);
  for (double& v : values) {
    switch (spec.family) {
      case IidFamily::kUniform: v = rng.uniform(); break;
      case IidFamily::kGaussian: v = rng.normal(spec.mean, spec.sd); break;
      case IidFamily::kPowerLaw: v = rng.pareto(spec.alpha, spec.xmin); break;
    }
  }
  return TimeSeries(std::move(values));
}

TimeSeries gen_periodic(std::size_t period, std::size_t n, const RngConfig& rng_config) {
  if (period < 2 || period > n) {
    throw ValidationError("periodic series needs 2 <= period <= n (period=" + std::to_string(period) +
                          ", n=" + std::to_string(n) + ")");
  }
  Rng rng(rng_config);
  std::vector<double> cycle;
  std::set<double> seen;
  while (cycle.size() < period) {
    const double v = rng.uniform();
    if (seen.insert(v).second) cycle.push_back(v);
  }
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = cycle[i % period];
  return TimeSeries(std::move(values));
}

TimeSeries gen_logistic(std::size_t n, double x0, double mu, std::size_t transient) {
  require_length(n);
  if (!(x0 > 0.0 && x0 < 1.0)) throw ValidationError("logistic x0 must lie in (0,1)");
  if (!(mu > 0.0 && mu <= 4.0)) throw ValidationError("logistic mu must lie in (0,4]");
  double x = x0;
  for (std::size_t t = 0; t < transient; ++t) x = mu * x * (1.0 - x);
  std::vector<double> values(n);
  values[0] = x;
  for (std::size_t t = 1; t < n; ++t) {
    values[t] = mu * values[t - 1] * (1.0 - values[t - 1]);
    if (values[t] == values[t - 1]) {
      throw ValidationError("logistic orbit from x0=" + std::to_string(x0) + " reaches the fixed point " +
                            std::to_string(values[t]) + " at step " + std::to_string(t));
    }
  }
  return TimeSeries(std::move(values));
}

TimeSeries gen_henon(std::size_t n, double x0, double y0, double a, double b, std::size_t transient) {
  require_length(n);
  double x = x0;
  double y = y0;
  auto step = [&](std::size_t t) {
    const double nx = 1.0 + y - a * x * x;
    y = b * x;
    x = nx;
    if (!std::isfinite(x) || std::abs(x) > kDivergence) {
      throw NumericError("Henon orbit diverged at step " + std::to_string(t));
    }
  };
  for (std::size_t t = 0; t < transient; ++t) step(t);
  std::vector<double> values(n);
  values[0] = x;
  for (std::size_t t = 1; t < n; ++t) {
    step(transient + t);
    values[t] = x;
  }
  return TimeSeries(std::move(values));
}

State3 rk4_step(const VectorField& f, const State3& s, double dt) {
  auto axpy = [](const State3& base, double h, const State3& d) {
    return State3{base[0] + h * d[0], base[1] + h * d[1], base[2] + h * d[2]};
  };
  const State3 k1 = f(s);
  const State3 k2 = f(axpy(s, dt / 2.0, k1));
  const State3 k3 = f(axpy(s, dt / 2.0, k2));
  const State3 k4 = f(axpy(s, dt, k3));
  State3 out;
  for (std::size_t i = 0; i < 3; ++i) out[i] = s[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

std::map<std::string, double> default_flow_params(FlowSystem system) {
  switch (system) {
    case FlowSystem::kLorenz:
      return {{"a", 10.0}, {"b", 8.0 / 3.0}, {"c", 28.0}};
    case FlowSystem::kEnergy:
      return {{"a1", 0.3},  {"a2", 0.5563}, {"a3", 0.15}, {"b1", 0.4},  {"b2", 0.6073}, {"b3", 0.3},
              {"c1", 0.3},  {"c2", 0.006},  {"C", 27.0},  {"K1", 15.0}, {"K2", 15.0},   {"L", 19.0}};
  }
  return {};
}

VectorField flow_field(FlowSystem system, const std::map<std::string, double>& overrides) {
  auto p = default_flow_params(system);
  for (const auto& [name, value] : overrides) {
    if (!p.contains(name)) throw ValidationError("unknown flow parameter '" + name + "'");
    p[name] = value;
  }
  switch (system) {
    case FlowSystem::kLorenz: {
      const double a = p["a"], b = p["b"], c = p["c"];
      return [=](const State3& s) {
        return State3{a * (s[1] - s[0]), c * s[0] - s[1] - s[0] * s[2], s[0] * s[1] - b * s[2]};
      };
    }
    case FlowSystem::kEnergy: {
      // Energy price-supply-economic growth system.
      const double a1 = p["a1"], a2 = p["a2"], a3 = p["a3"], b1 = p["b1"], b2 = p["b2"], b3 = p["b3"];
      const double c1 = p["c1"], c2 = p["c2"], C = p["C"], K1 = p["K1"], K2 = p["K2"], L = p["L"];
      return [=](const State3& s) {
        const double x = s[0], y = s[1], z = s[2];
        return State3{a1 * x + a2 * (C - y) + a3 * (z - K1),
                      -b1 * y + b2 * x - b3 * z * (1.0 - z / K2),
                      c1 * z * (1.0 - z / L) + c2 * y * z};
      };
    }
  }
  throw ValidationError("unknown flow system");
}

FlowSpec FlowSpec::lorenz(std::size_t n) {
  FlowSpec spec;
  spec.system = FlowSystem::kLorenz;
  spec.init = {1.0, 1.0, 1.0};
  spec.n = n;
  return spec;
}

FlowSpec FlowSpec::energy(std::size_t n) {
  FlowSpec spec;
  spec.system = FlowSystem::kEnergy;
  spec.init = {10.0, 20.0, 14.0};
  spec.n = n;
  return spec;
}

double seeded_logistic_x0(const RngConfig& rng) { return Rng(rng).uniform(); }

std::array<double, 2> seeded_henon_start(const RngConfig& rng) { return {0.2 * Rng(rng).uniform(), 0.0}; }

State3 seeded_flow_init(FlowSystem system, const RngConfig& rng) {
  State3 init = system == FlowSystem::kLorenz ? FlowSpec::lorenz(0).init : FlowSpec::energy(0).init;
  init[0] += Rng(rng).uniform();
  return init;
}

TimeSeries gen_flow(const FlowSpec& spec) {
  require_length(spec.n);
  if (!(spec.dt > 0.0)) throw ValidationError("flow dt must be > 0");
  if (spec.stride < 1) throw ValidationError("flow stride must be >= 1");
  if (spec.component > 2) throw ValidationError("flow component must be 0, 1 or 2");
  const VectorField f = flow_field(spec.system, spec.params);
  const State3 d0 = f(spec.init);
  if (d0[0] == 0.0 && d0[1] == 0.0 && d0[2] == 0.0) {
    throw ValidationError("initial state is an equilibrium; the orbit would be constant");
  }
  State3 s = spec.init;
  std::size_t step = 0;
  auto advance = [&] {
    s = rk4_step(f, s, spec.dt);
    ++step;
    if (!std::isfinite(s[0]) || !std::isfinite(s[1]) || !std::isfinite(s[2])) {
      throw NumericError("flow state became non-finite at step " + std::to_string(step));
    }
  };
  for (std::size_t t = 0; t < spec.transient; ++t) advance();
  std::vector<double> values(spec.n);
  values[0] = s[spec.component];
  for (std::size_t i = 1; i < spec.n; ++i) {
    for (std::size_t k = 0; k < spec.stride; ++k) advance();
    values[i] = s[spec.component];
  }
  return TimeSeries(std::move(values));
}

}  // namespace lphvg
