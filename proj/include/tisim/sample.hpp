#pragma once

// Counter-based trial sampling. Philox4x32-10 generates one 53-bit draw per
// trial index, so trial t's outcome depends only on (seed, t) — execution
// order and batching cannot change results. Outcome classification uses
// integer thresholds M_k = ceil(C_k * 2^53) precomputed from the exact
// cumulative weights C_k: comparing the integer draw m against M_k is
// provably equivalent to comparing the real draw m*2^-53 against C_k, so the
// hot loop is pure uint64 arithmetic and vectorizes. Counting kernels come
// in a scalar reference flavor and AVX2/NEON variants selected at runtime;
// all flavors produce bit-identical counts.

#include "tisim/exact.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace tisim {

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

/// One keyed Philox4x32 block: 10 rounds, round r using key
/// (k0 + r*W0, k1 + r*W1).
inline std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> x,
                                                  std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint64_t p0 = std::uint64_t(kPhiloxM0) * x[0];
    std::uint64_t p1 = std::uint64_t(kPhiloxM1) * x[2];
    std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
    std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
    x = {hi1 ^ x[1] ^ key[0], lo1, hi0 ^ x[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return x;
}

/// The 53-bit integer draw for trial t under `seed`; the uniform variate is
/// draw53 * 2^-53 in [0,1).
inline std::uint64_t philox_draw53(std::uint64_t seed, std::uint64_t trial) {
  auto y = philox4x32_10({std::uint32_t(trial), std::uint32_t(trial >> 32), 0, 0},
                         {std::uint32_t(seed), std::uint32_t(seed >> 32)});
  return ((std::uint64_t(y[1]) << 32) | y[0]) >> 11;
}

inline double philox_uniform(std::uint64_t seed, std::uint64_t trial) {
  return double(philox_draw53(seed, trial)) * 0x1p-53;
}

inline constexpr const char* kRngId = "philox4x32-10";

/// Exclusive upper bounds of the outcome buckets on the 53-bit integer
/// scale; upper.back() = 2^53 so every draw classifies.
struct ThresholdTable {
  std::vector<std::uint64_t> upper;
  std::size_t classify(std::uint64_t m) const {
    std::size_t k = 0;
    while (m >= upper[k]) ++k;
    return k;
  }
};

/// Thresholds from exact weights (must be nonnegative and sum to exactly 1).
ThresholdTable make_thresholds(const std::vector<ExactReal>& weights);

/// Thresholds from float weights (normalized by their sum first).
ThresholdTable make_thresholds(const std::vector<double>& weights);

enum class Kernel { scalar, avx2, neon };

const char* kernel_name(Kernel k);

/// Kernels usable on this machine (scalar always; avx2/neon when both
/// compiled in and reported by the CPU).
std::vector<Kernel> available_kernels();

/// The fastest available kernel.
Kernel best_kernel();

/// Adds the bucket counts of trials [first, last) under `seed` into
/// `counts` (size upper.size()). Bit-identical across kernels.
void count_trials(Kernel k, const ThresholdTable& table, std::uint64_t seed,
                  std::uint64_t first, std::uint64_t last, std::vector<std::uint64_t>& counts);

}  // namespace tisim
