#pragma once

#include <cstdint>

namespace chscan::kernels {

// Lane-parallel inner loops shared by the scan queries. These are the only
// data-parallel hot spots: the single-source scan and the Dijkstra variants
// carry loop-to-loop dependencies and stay scalar. Each kernel has a scalar
// reference implementation and an AVX2 variant; active() picks one at runtime
// (CHSCAN_KERNELS=scalar forces the reference). The variants are required to
// be bit-identical, including tie handling, and the tests enforce that.

struct MinPlusResult {
  double value;        // min over i of a[i] + b[i], +inf when n == 0 or nothing finite
  std::int32_t index;  // smallest i attaining value, -1 when value is +inf
};

struct Ops {
  const char* name;

  // min over lanes of a[i]+b[i], first index wins ties
  MinPlusResult (*min_plus_argmin)(const double* a, const double* b, std::int32_t n);

  // lane-wise relax: to[i] <- from[i]+w and mark[i] <- mark_value where
  // from[i]+w < to[i]-tol; returns the number of lanes improved
  std::int64_t (*relax_lanes)(const double* from, double w, double tol, double* to,
                              std::int32_t* mark, std::int32_t mark_value, std::int32_t n);

  // lane-wise min accumulate: out[i] <- base+add[i] and arg[i] <- arg_value
  // where base+add[i] < out[i] (strict, so the first contributor wins ties)
  void (*min_plus_accumulate)(double* out, std::int32_t* arg, double base, const double* add,
                              std::int32_t arg_value, std::int32_t n);
};

const Ops& scalar_ops();
bool avx2_available();
const Ops& avx2_ops();  // only valid to call when avx2_available()
const Ops& active();

}  // namespace chscan::kernels
