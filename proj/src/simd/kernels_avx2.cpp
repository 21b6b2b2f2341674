// Compiled with -mavx2 only; never call these without checking isa_available.
#include <immintrin.h>

#include "pmsearch/simd/kernels.hpp"

namespace pmsearch::simd::detail {

void bm25_scores_avx2(const Bm25Batch& c, const double* tf, const double* length, double* out,
                      std::size_t n)
{
    const __m256d k1p1 = _mm256_set1_pd(c.k1 + 1.0);
    const __m256d one_minus_b = _mm256_set1_pd(1.0 - c.b);
    const __m256d b = _mm256_set1_pd(c.b);
    const __m256d k1 = _mm256_set1_pd(c.k1);
    const __m256d avg = _mm256_set1_pd(c.avg_length);
    const __m256d idf = _mm256_set1_pd(c.idf);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d t = _mm256_loadu_pd(tf + i);
        __m256d len = _mm256_loadu_pd(length + i);
        __m256d num = _mm256_mul_pd(k1p1, t);
        __m256d norm = _mm256_add_pd(one_minus_b, _mm256_mul_pd(b, _mm256_div_pd(len, avg)));
        __m256d denom = _mm256_add_pd(_mm256_mul_pd(k1, norm), t);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(idf, _mm256_div_pd(num, denom)));
    }
    bm25_scores_scalar(c, tf + i, length + i, out + i, n - i);
}

void scale_avx2(double* values, double weight, std::size_t n)
{
    const __m256d w = _mm256_set1_pd(weight);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(values + i, _mm256_mul_pd(_mm256_loadu_pd(values + i), w));
    }
    scale_scalar(values + i, weight, n - i);
}

void accumulate_avx2(double* acc, const double* values, std::size_t n)
{
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d sum = _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(values + i));
        _mm256_storeu_pd(acc + i, sum);
    }
    accumulate_scalar(acc + i, values + i, n - i);
}

}  // namespace pmsearch::simd::detail
