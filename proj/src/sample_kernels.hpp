#pragma once

// Internal kernel entry points shared by the dispatcher; not installed.

#include "tisim/sample.hpp"

namespace tisim::kernels {

void count_scalar(const ThresholdTable& table, std::uint64_t seed, std::uint64_t first,
                  std::uint64_t last, std::vector<std::uint64_t>& counts);

#ifdef TISIM_HAVE_AVX2
void count_avx2(const ThresholdTable& table, std::uint64_t seed, std::uint64_t first,
                std::uint64_t last, std::vector<std::uint64_t>& counts);
#endif

#ifdef TISIM_HAVE_NEON
void count_neon(const ThresholdTable& table, std::uint64_t seed, std::uint64_t first,
                std::uint64_t last, std::vector<std::uint64_t>& counts);
#endif

}  // namespace tisim::kernels
