#include <immintrin.h>

#include "chscan/kernels.hpp"

// Compiled with -mavx2 (see CMakeLists); nothing here runs unless the CPU
// check in active() passes. Semantics must match the scalar reference
// bit-for-bit: same comparisons, same tie handling, scalar remainder loops.

namespace chscan::kernels {

namespace {

// lower 32 bits of each 64-bit compare-mask lane, for blending int32 marks
inline __m128i mask32_from_pd(__m256d mask) {
  const __m256i pick = _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0);
  __m256i lanes = _mm256_permutevar8x32_epi32(_mm256_castpd_si256(mask), pick);
  return _mm256_castsi256_si128(lanes);
}

MinPlusResult min_plus_argmin_avx2(const double* a, const double* b, std::int32_t n) {
  MinPlusResult r{__builtin_inf(), -1};
  std::int32_t i = 0;
  if (n >= 4) {
    __m256d best = _mm256_set1_pd(__builtin_inf());
    __m256i best_idx = _mm256_set1_epi64x(-1);
    __m256i idx = _mm256_setr_epi64x(0, 1, 2, 3);
    const __m256i four = _mm256_set1_epi64x(4);
    for (; i + 4 <= n; i += 4) {
      __m256d s = _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
      __m256d m = _mm256_cmp_pd(s, best, _CMP_LT_OQ);
      best = _mm256_blendv_pd(best, s, m);
      best_idx = _mm256_blendv_epi8(best_idx, idx, _mm256_castpd_si256(m));
      idx = _mm256_add_epi64(idx, four);
    }
    alignas(32) double vals[4];
    alignas(32) std::int64_t idxs[4];
    _mm256_store_pd(vals, best);
    _mm256_store_si256(reinterpret_cast<__m256i*>(idxs), best_idx);
    for (int k = 0; k < 4; ++k) {
      if (vals[k] < r.value || (vals[k] == r.value && idxs[k] < r.index)) {
        r.value = vals[k];
        r.index = static_cast<std::int32_t>(idxs[k]);
      }
    }
  }
  for (; i < n; ++i) {
    double s = a[i] + b[i];
    if (s < r.value) {
      r.value = s;
      r.index = i;
    }
  }
  return r;
}

std::int64_t relax_lanes_avx2(const double* from, double w, double tol, double* to,
                              std::int32_t* mark, std::int32_t mark_value, std::int32_t n) {
  std::int64_t updates = 0;
  std::int32_t i = 0;
  const __m256d wv = _mm256_set1_pd(w);
  const __m256d tolv = _mm256_set1_pd(tol);
  const __m128i markv = _mm_set1_epi32(mark_value);
  for (; i + 4 <= n; i += 4) {
    __m256d cand = _mm256_add_pd(_mm256_loadu_pd(from + i), wv);
    __m256d cur = _mm256_loadu_pd(to + i);
    __m256d m = _mm256_cmp_pd(cand, _mm256_sub_pd(cur, tolv), _CMP_LT_OQ);
    int bits = _mm256_movemask_pd(m);
    if (!bits) continue;
    _mm256_storeu_pd(to + i, _mm256_blendv_pd(cur, cand, m));
    __m128i old = _mm_loadu_si128(reinterpret_cast<const __m128i*>(mark + i));
    __m128i blended = _mm_blendv_epi8(old, markv, mask32_from_pd(m));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(mark + i), blended);
    updates += __builtin_popcount(static_cast<unsigned>(bits));
  }
  for (; i < n; ++i) {
    double cand = from[i] + w;
    if (cand < to[i] - tol) {
      to[i] = cand;
      mark[i] = mark_value;
      ++updates;
    }
  }
  return updates;
}

void min_plus_accumulate_avx2(double* out, std::int32_t* arg, double base, const double* add,
                              std::int32_t arg_value, std::int32_t n) {
  std::int32_t i = 0;
  const __m256d basev = _mm256_set1_pd(base);
  const __m128i argv = _mm_set1_epi32(arg_value);
  for (; i + 4 <= n; i += 4) {
    __m256d cand = _mm256_add_pd(basev, _mm256_loadu_pd(add + i));
    __m256d cur = _mm256_loadu_pd(out + i);
    __m256d m = _mm256_cmp_pd(cand, cur, _CMP_LT_OQ);
    if (!_mm256_movemask_pd(m)) continue;
    _mm256_storeu_pd(out + i, _mm256_blendv_pd(cur, cand, m));
    __m128i old = _mm_loadu_si128(reinterpret_cast<const __m128i*>(arg + i));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(arg + i),
                     _mm_blendv_epi8(old, argv, mask32_from_pd(m)));
  }
  for (; i < n; ++i) {
    double cand = base + add[i];
    if (cand < out[i]) {
      out[i] = cand;
      arg[i] = arg_value;
    }
  }
}

const Ops kAvx2{"avx2", min_plus_argmin_avx2, relax_lanes_avx2, min_plus_accumulate_avx2};

}  // namespace

const Ops& avx2_ops() { return kAvx2; }

}  // namespace chscan::kernels
