#include "sample_kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace tisim {

ThresholdTable make_thresholds(const std::vector<ExactReal>& weights) {
  std::vector<ExactReal> cums;
  cums.reserve(weights.size());
  ExactReal cum(0);
  for (const auto& w : weights) {
    if (w.sign() < 0) throw std::invalid_argument("negative outcome weight");
    cum = cum + w;
    cums.push_back(cum);
  }
  if (!(cum == ExactReal(1))) throw std::logic_error("outcome weights do not sum to 1");
  ThresholdTable t;
  t.upper.reserve(cums.size());
  // ceil(C_k * 2^53) makes the integer test m < M_k equivalent to the real
  // test m*2^-53 < C_k; C_n = 1 lands exactly on 2^53.
  for (const auto& c : cums)
    t.upper.push_back(c.ceil_scaled_pow2(53).convert_to<std::uint64_t>());
  return t;
}

ThresholdTable make_thresholds(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("negative outcome weight");
    total += w;
  }
  if (!(total > 0.0)) throw std::invalid_argument("all outcome weights are zero");
  constexpr double kScale = 9007199254740992.0;  // 2^53
  ThresholdTable t;
  t.upper.reserve(weights.size());
  double cum = 0.0;
  for (double w : weights) {
    cum += w;
    double scaled = std::ceil(cum / total * kScale);
    t.upper.push_back(scaled >= kScale ? std::uint64_t(1) << 53
                                       : std::uint64_t(scaled));
  }
  t.upper.back() = std::uint64_t(1) << 53;
  return t;
}

const char* kernel_name(Kernel k) {
  switch (k) {
    case Kernel::scalar: return "scalar";
    case Kernel::avx2: return "avx2";
    case Kernel::neon: return "neon";
  }
  return "?";
}

std::vector<Kernel> available_kernels() {
  std::vector<Kernel> ks{Kernel::scalar};
#ifdef TISIM_HAVE_AVX2
  if (__builtin_cpu_supports("avx2")) ks.push_back(Kernel::avx2);
#endif
#ifdef TISIM_HAVE_NEON
  ks.push_back(Kernel::neon);
#endif
  return ks;
}

Kernel best_kernel() { return available_kernels().back(); }

void count_trials(Kernel k, const ThresholdTable& table, std::uint64_t seed,
                  std::uint64_t first, std::uint64_t last, std::vector<std::uint64_t>& counts) {
  if (counts.size() != table.upper.size())
    throw std::invalid_argument("counts size does not match threshold table");
  if (table.upper.empty() || first > last)
    throw std::invalid_argument("bad trial range or empty table");
  switch (k) {
    case Kernel::scalar:
      kernels::count_scalar(table, seed, first, last, counts);
      return;
    case Kernel::avx2:
#ifdef TISIM_HAVE_AVX2
      if (__builtin_cpu_supports("avx2")) {
        kernels::count_avx2(table, seed, first, last, counts);
        return;
      }
#endif
      break;
    case Kernel::neon:
#ifdef TISIM_HAVE_NEON
      kernels::count_neon(table, seed, first, last, counts);
      return;
#else
      break;
#endif
  }
  throw std::runtime_error(std::string("kernel '") + kernel_name(k) +
                           "' is not available on this machine");
}

}  // namespace tisim
