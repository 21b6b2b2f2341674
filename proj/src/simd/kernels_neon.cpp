#include <arm_neon.h>

#include "pmsearch/simd/kernels.hpp"

namespace pmsearch::simd::detail {

void bm25_scores_neon(const Bm25Batch& c, const double* tf, const double* length, double* out,
                      std::size_t n)
{
    const float64x2_t k1p1 = vdupq_n_f64(c.k1 + 1.0);
    const float64x2_t one_minus_b = vdupq_n_f64(1.0 - c.b);
    const float64x2_t b = vdupq_n_f64(c.b);
    const float64x2_t k1 = vdupq_n_f64(c.k1);
    const float64x2_t avg = vdupq_n_f64(c.avg_length);
    const float64x2_t idf = vdupq_n_f64(c.idf);

    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t t = vld1q_f64(tf + i);
        float64x2_t len = vld1q_f64(length + i);
        float64x2_t num = vmulq_f64(k1p1, t);
        float64x2_t norm = vaddq_f64(one_minus_b, vmulq_f64(b, vdivq_f64(len, avg)));
        float64x2_t denom = vaddq_f64(vmulq_f64(k1, norm), t);
        vst1q_f64(out + i, vmulq_f64(idf, vdivq_f64(num, denom)));
    }
    bm25_scores_scalar(c, tf + i, length + i, out + i, n - i);
}

void scale_neon(double* values, double weight, std::size_t n)
{
    const float64x2_t w = vdupq_n_f64(weight);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(values + i, vmulq_f64(vld1q_f64(values + i), w));
    }
    scale_scalar(values + i, weight, n - i);
}

void accumulate_neon(double* acc, const double* values, std::size_t n)
{
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), vld1q_f64(values + i)));
    }
    accumulate_scalar(acc + i, values + i, n - i);
}

}  // namespace pmsearch::simd::detail
