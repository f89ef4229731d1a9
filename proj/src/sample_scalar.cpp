#include "tisim/sample.hpp"

namespace tisim::kernels {

// Reference implementation; the SIMD flavors are equivalence-tested
// against this one.
void count_scalar(const ThresholdTable& table, std::uint64_t seed, std::uint64_t first,
                  std::uint64_t last, std::vector<std::uint64_t>& counts) {
  for (std::uint64_t t = first; t < last; ++t)
    ++counts[table.classify(philox_draw53(seed, t))];
}

}  // namespace tisim::kernels
