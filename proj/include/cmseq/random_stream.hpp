#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace cmseq {

// Seeded pseudo-random stream. Streams are never shared between threads; a
// parallel consumer derives one stream per work item from (master, index).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  // Independent stream for work item `index` under `master`. The mapping is a
  // pure function of its arguments, so results never depend on scheduling.
  static RandomStream derived(std::uint64_t master, std::uint64_t index);

  double normal() { return normal_(engine_); }
  void fill_normal(std::span<double> out);
  double uniform(double lo, double hi);
  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace cmseq
