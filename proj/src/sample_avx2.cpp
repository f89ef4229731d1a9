// AVX2 counting kernel: 8 Philox lanes per iteration in struct-of-arrays
// form, then per-boundary exceed counting on the 53-bit draws. Compiled with
// -mavx2 only when the toolchain supports it; the dispatcher guards the call
// with a runtime CPU check.

#include "sample_kernels.hpp"

#ifdef TISIM_HAVE_AVX2

#include <immintrin.h>

namespace tisim::kernels {

namespace {

// 32x32 -> 64 multiply of every 32-bit lane by constant m; returns the low
// halves, stores the high halves.
inline __m256i mulhilo(__m256i x, __m256i m, __m256i* hi) {
  __m256i even = _mm256_mul_epu32(x, m);
  __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), m);
  *hi = _mm256_blend_epi32(_mm256_srli_epi64(even, 32), odd, 0xAA);
  return _mm256_blend_epi32(even, _mm256_slli_epi64(odd, 32), 0xAA);
}

inline std::uint64_t hsum64(__m256i v) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

}  // namespace

void count_avx2(const ThresholdTable& table, std::uint64_t seed, std::uint64_t first,
                std::uint64_t last, std::vector<std::uint64_t>& counts) {
  const std::size_t n_buckets = table.upper.size();
  const __m256i m0 = _mm256_set1_epi32(int(kPhiloxM0));
  const __m256i m1 = _mm256_set1_epi32(int(kPhiloxM1));
  const __m256i w0 = _mm256_set1_epi32(int(kPhiloxW0));
  const __m256i w1 = _mm256_set1_epi32(int(kPhiloxW1));
  const __m256i key0_init = _mm256_set1_epi32(int(std::uint32_t(seed)));
  const __m256i key1_init = _mm256_set1_epi32(int(std::uint32_t(seed >> 32)));

  // Exceed counts: boundaries[b] accumulates #(draw >= upper[b]); the last
  // bucket's bound 2^53 is never exceeded, so it needs no accumulator.
  struct Reg {
    __m256i v;
  };
  std::vector<Reg> bound(n_buckets ? n_buckets - 1 : 0);
  std::vector<Reg> acc(bound.size(), Reg{_mm256_setzero_si256()});
  for (std::size_t b = 0; b < bound.size(); ++b)
    bound[b].v = _mm256_set1_epi64x(static_cast<long long>(table.upper[b]) - 1);

  std::uint64_t t = first;
  std::uint64_t vec_trials = 0;
  for (; t + 8 <= last; t += 8) {
    alignas(32) std::uint32_t lo[8], hi[8];
    for (int i = 0; i < 8; ++i) {
      std::uint64_t ti = t + std::uint64_t(i);
      lo[i] = std::uint32_t(ti);
      hi[i] = std::uint32_t(ti >> 32);
    }
    __m256i x0 = _mm256_load_si256(reinterpret_cast<const __m256i*>(lo));
    __m256i x1 = _mm256_load_si256(reinterpret_cast<const __m256i*>(hi));
    __m256i x2 = _mm256_setzero_si256();
    __m256i x3 = _mm256_setzero_si256();
    __m256i k0 = key0_init;
    __m256i k1 = key1_init;
    for (int round = 0; round < 10; ++round) {
      __m256i hi0, hi1;
      __m256i lo0 = mulhilo(x0, m0, &hi0);
      __m256i lo1 = mulhilo(x2, m1, &hi1);
      x0 = _mm256_xor_si256(_mm256_xor_si256(hi1, x1), k0);
      x1 = lo1;
      x2 = _mm256_xor_si256(_mm256_xor_si256(hi0, x3), k1);
      x3 = lo0;
      k0 = _mm256_add_epi32(k0, w0);
      k1 = _mm256_add_epi32(k1, w1);
    }
    // draw53 = ((y1 << 32) | y0) >> 11, assembled four per register. Lane
    // order within a block is irrelevant for counting.
    __m256i ma = _mm256_srli_epi64(_mm256_unpacklo_epi32(x0, x1), 11);
    __m256i mb = _mm256_srli_epi64(_mm256_unpackhi_epi32(x0, x1), 11);
    for (std::size_t b = 0; b < acc.size(); ++b) {
      acc[b].v = _mm256_sub_epi64(acc[b].v, _mm256_cmpgt_epi64(ma, bound[b].v));
      acc[b].v = _mm256_sub_epi64(acc[b].v, _mm256_cmpgt_epi64(mb, bound[b].v));
    }
    vec_trials += 8;
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

#endif  // TISIM_HAVE_AVX2
