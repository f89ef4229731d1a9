// NEON counting kernel: 4 Philox lanes per iteration, mirroring the AVX2
// layout. Built only on aarch64, where NEON is architecturally guaranteed.

#include "sample_kernels.hpp"

#ifdef TISIM_HAVE_NEON

#include <arm_neon.h>

namespace tisim::kernels {

namespace {

inline uint32x4_t mulhilo(uint32x4_t x, std::uint32_t m, uint32x4_t* hi) {
  uint64x2_t p01 = vmull_n_u32(vget_low_u32(x), m);
  uint64x2_t p23 = vmull_n_u32(vget_high_u32(x), m);
  *hi = vcombine_u32(vshrn_n_u64(p01, 32), vshrn_n_u64(p23, 32));
  return vcombine_u32(vmovn_u64(p01), vmovn_u64(p23));
}

inline std::uint64_t hsum64(uint64x2_t v) { return vgetq_lane_u64(v, 0) + vgetq_lane_u64(v, 1); }

}  // namespace

void count_neon(const ThresholdTable& table, std::uint64_t seed, std::uint64_t first,
                std::uint64_t last, std::vector<std::uint64_t>& counts) {
  const std::size_t n_buckets = table.upper.size();
  const uint32x4_t key0_init = vdupq_n_u32(std::uint32_t(seed));
  const uint32x4_t key1_init = vdupq_n_u32(std::uint32_t(seed >> 32));

  struct Reg {
    uint64x2_t v;
  };
  std::vector<Reg> acc(n_buckets ? n_buckets - 1 : 0, Reg{vdupq_n_u64(0)});

  std::uint64_t t = first;
  std::uint64_t vec_trials = 0;
  for (; t + 4 <= last; t += 4) {
    std::uint32_t lo[4], hi[4];
    for (int i = 0; i < 4; ++i) {
      std::uint64_t ti = t + std::uint64_t(i);
      lo[i] = std::uint32_t(ti);
      hi[i] = std::uint32_t(ti >> 32);
    }
    uint32x4_t x0 = vld1q_u32(lo);
    uint32x4_t x1 = vld1q_u32(hi);
    uint32x4_t x2 = vdupq_n_u32(0);
    uint32x4_t x3 = vdupq_n_u32(0);
    uint32x4_t k0 = key0_init;
    uint32x4_t k1 = key1_init;
    for (int round = 0; round < 10; ++round) {
      uint32x4_t hi0, hi1;
      uint32x4_t lo0 = mulhilo(x0, kPhiloxM0, &hi0);
      uint32x4_t lo1 = mulhilo(x2, kPhiloxM1, &hi1);
      x0 = veorq_u32(veorq_u32(hi1, x1), k0);
      x1 = lo1;
      x2 = veorq_u32(veorq_u32(hi0, x3), k1);
      x3 = lo0;
      k0 = vaddq_u32(k0, vdupq_n_u32(kPhiloxW0));
      k1 = vaddq_u32(k1, vdupq_n_u32(kPhiloxW1));
    }
    uint32x4x2_t zipped = vzipq_u32(x0, x1);
    uint64x2_t ma = vshrq_n_u64(vreinterpretq_u64_u32(zipped.val[0]), 11);
    uint64x2_t mb = vshrq_n_u64(vreinterpretq_u64_u32(zipped.val[1]), 11);
    for (std::size_t b = 0; b < acc.size(); ++b) {
      uint64x2_t bound = vdupq_n_u64(table.upper[b]);
      acc[b].v = vsubq_u64(acc[b].v, vcgeq_u64(ma, bound));
      acc[b].v = vsubq_u64(acc[b].v, vcgeq_u64(mb, bound));
    }
    vec_trials += 4;
  }

  std::uint64_t prev_exceed = vec_trials;
  for (std::size_t b = 0; b < acc.size(); ++b) {
    std::uint64_t exceed = hsum64(acc[b].v);
    counts[b] += prev_exceed - exceed;
    prev_exceed = exceed;
  }
  if (n_buckets) counts[n_buckets - 1] += prev_exceed;

  count_scalar(table, seed, t, last, counts);
}

}  // namespace tisim::kernels

#endif  // TISIM_HAVE_NEON
