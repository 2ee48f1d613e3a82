#include "chscan/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace chscan::kernels {

namespace {

MinPlusResult min_plus_argmin_scalar(const double* a, const double* b, std::int32_t n) {
  MinPlusResult r{__builtin_inf(), -1};
  for (std::int32_t i = 0; i < n; ++i) {
    double s = a[i] + b[i];
    if (s < r.value) {
      r.value = s;
      r.index = i;
    }
  }
  return r;
}

std::int64_t relax_lanes_scalar(const double* from, double w, double tol, double* to,
                                std::int32_t* mark, std::int32_t mark_value, std::int32_t n) {
  std::int64_t updates = 0;
  for (std::int32_t i = 0; i < n; ++i) {
    double cand = from[i] + w;
    if (cand < to[i] - tol) {
      to[i] = cand;
      mark[i] = mark_value;
      ++updates;
    }
  }
  return updates;
}

void min_plus_accumulate_scalar(double* out, std::int32_t* arg, double base, const double* add,
                                std::int32_t arg_value, std::int32_t n) {
  for (std::int32_t i = 0; i < n; ++i) {
    double cand = base + add[i];
    if (cand < out[i]) {
      out[i] = cand;
      arg[i] = arg_value;
    }
  }
}

const Ops kScalar{"scalar", min_plus_argmin_scalar, relax_lanes_scalar, min_plus_accumulate_scalar};

}  // namespace

const Ops& scalar_ops() { return kScalar; }

bool avx2_available() {
#if defined(CHSCAN_HAVE_AVX2_TU) && defined(__x86_64__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Ops& active() {
  static const Ops& chosen = []() -> const Ops& {
    const char* env = std::getenv("CHSCAN_KERNELS");
    if (env && std::strcmp(env, "scalar") == 0) return kScalar;
    if (avx2_available()) return avx2_ops();
    return kScalar;
  }();
  return chosen;
}

#if !defined(CHSCAN_HAVE_AVX2_TU)
const Ops& avx2_ops() { return kScalar; }  // never reached, avx2_available() is false
#endif

}  // namespace chscan::kernels
