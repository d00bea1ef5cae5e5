#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "ginprod/sampler.hpp"
#include "ginprod/types.hpp"

namespace ginprod {
namespace detail {

// Substream layout: sample_radii owns stream 1; Monte Carlo estimators take
// one stream per fixed-size block so results do not depend on thread count.
inline constexpr std::uint64_t kStreamValidateMatrix = 1000000;
inline constexpr std::uint64_t kStreamHoleMc = 2000000;
inline constexpr std::uint64_t kStreamOvercrowdMc = 3000000;
inline constexpr long kMcBlock = 65536;

template <typename DrawPred>
long mc_count(long samples, std::uint64_t seed, std::uint64_t stream_base,
              int threads, DrawPred&& pred) {
  const long blocks = (samples + kMcBlock - 1) / kMcBlock;
  std::atomic<long> next{0};
  std::atomic<long> hits{0};
  auto worker = [&] {
    for (;;) {
      const long b = next.fetch_add(1);
      if (b >= blocks) return;
      RngStream rng(seed, stream_base + std::uint64_t(b));
      const long lo = b * kMcBlock;
      const long hi = std::min(samples, lo + kMcBlock);
      long local = 0;
      for (long i = lo; i < hi; ++i)
        if (pred(rng)) ++local;
      hits.fetch_add(local);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return hits.load();
}

// Point estimate with a symmetric envelope of the 99% Wilson interval, so
// that [estimate - halfwidth, estimate + halfwidth] covers it.
inline McResult mc_from_counts(long hits, long samples) {
  const double z = 2.5758293035489008;
  const double nn = double(samples);
  const double ph = double(hits) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (ph + z2 / (2.0 * nn)) / denom;
  const double hw =
      z / denom * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn));
  McResult out;
  out.estimate = ph;
  out.halfwidth = std::max(center + hw - ph, ph - (center - hw));
  out.samples = samples;
  return out;
}

}  // namespace detail
}  // namespace ginprod
