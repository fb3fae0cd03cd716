#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "lphvg/series.hpp"

namespace lphvg {

enum class IidFamily { kUniform, kGaussian, kPowerLaw };

struct IidSpec {
  IidFamily family = IidFamily::kUniform;
  std::size_t n = 0;
  RngConfig rng;
  double mean = 0.0;   // gaussian
  double sd = 1.0;     // gaussian, > 0
  double alpha = 2.5;  // power law, > 1
  double xmin = 1.0;   // power law, > 0
};

// Uniform(0,1), Gaussian(mean, sd) or Pareto(alpha, xmin) draws.
TimeSeries gen_iid(const IidSpec& spec);

// One period of distinct uniform(0,1) draws tiled to length n.
TimeSeries gen_periodic(std::size_t period, std::size_t n, const RngConfig& rng);

// x_{t+1} = mu x_t (1 - x_t), starting from values[0] = x0 in (0,1).
// An orbit that lands on a fixed point (e.g. x0 = 0.5 at mu = 4) is rejected.
TimeSeries gen_logistic(std::size_t n, double x0, double mu = 4.0, std::size_t transient = 0);

// x_{t+1} = 1 + y_t - a x_t^2, y_{t+1} = b x_t; records x, values[0] = x0.
TimeSeries gen_henon(std::size_t n, double x0 = 0.0, double y0 = 0.0, double a = 1.4, double b = 0.3,
                     std::size_t transient = 0);

using State3 = std::array<double, 3>;
using VectorField = std::function<State3(const State3&)>;

// One classical fourth-order Runge-Kutta step.
State3 rk4_step(const VectorField& f, const State3& state, double dt);

enum class FlowSystem { kLorenz, kEnergy };

struct FlowSpec {
  FlowSystem system = FlowSystem::kLorenz;
  std::map<std::string, double> params;  // overrides of the named defaults
  State3 init{1.0, 1.0, 1.0};
  double dt = 0.01;
  std::size_t transient = 10000;
  std::size_t stride = 1;
  std::size_t component = 0;  // 0 = x, 1 = y, 2 = z
  std::size_t n = 0;

  static FlowSpec lorenz(std::size_t n);
  static FlowSpec energy(std::size_t n);
};

// Seed-driven starts for the deterministic systems: an ensemble over seeds
// samples different orbits of the same attractor.
double seeded_logistic_x0(const RngConfig& rng);          // uniform (0, 1)
std::array<double, 2> seeded_henon_start(const RngConfig& rng);  // x0 in (0, 0.2), y0 = 0
State3 seeded_flow_init(FlowSystem system, const RngConfig& rng);  // default init, x shifted by (0, 1)

// Default parameter set for each system.
std::map<std::string, double> default_flow_params(FlowSystem system);
VectorField flow_field(FlowSystem system, const std::map<std::string, double>& params);

// Fixed-step RK4 integration: drop `transient` steps, then record
// `component` every `stride` steps until n samples.
TimeSeries gen_flow(const FlowSpec& spec);

}  // namespace lphvg
