#include "cmseq/random_stream.hpp"

namespace cmseq {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

RandomStream RandomStream::derived(std::uint64_t master, std::uint64_t index) {
  return RandomStream(splitmix64(master) ^ splitmix64(~index));
}

void RandomStream::fill_normal(std::span<double> out) {
  for (double& v : out) v = normal_(engine_);
}

double RandomStream::uniform(double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return u(engine_);
}

}  // namespace cmseq
