#pragma once

#include <cstdint>
#include <random>

#include "lphvg/series.hpp"

namespace lphvg {

// Portable random source. std::mt19937_64 and std::seed_seq are fully
// specified by the standard; the variate transforms below are written out
// so results do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(const RngConfig& config);

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform();
  double normal(double mean, double sd);
  // Pareto(alpha, xmin) by inversion; support [xmin, inf).
  double pareto(double alpha, double xmin);
  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Sub-stream `member` of `config` (e.g. one per ensemble run): same seed,
// stream id mixed with the member index.
RngConfig derive_stream(const RngConfig& config, std::uint64_t member);

}  // namespace lphvg
