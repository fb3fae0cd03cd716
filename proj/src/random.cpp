#include "lphvg/random.hpp"

#include <cmath>
#include <numbers>

namespace lphvg {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t stream) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(const RngConfig& config) : engine_(seeded(config.seed, config.stream)) {}

RngConfig derive_stream(const RngConfig& config, std::uint64_t member) {
  return {config.seed, splitmix64(config.stream ^ splitmix64(member + 1))};
}

double Rng::uniform() {
  constexpr double kScale = 0x1.0p-53;
  return (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
}

double Rng::normal(double mean, double sd) {
  if (has_spare_) {
    has_spare_ = false;
    return mean + sd * spare_;
  }
  // Box-Muller; uniform() never returns 0 so the log is finite.
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double phi = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return mean + sd * r * std::cos(phi);
}

double Rng::pareto(double alpha, double xmin) {
  return xmin * std::pow(uniform(), -1.0 / alpha);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % bound;
}

}  // namespace lphvg
