#include "pmsearch/simd/kernels.hpp"

namespace pmsearch::simd::detail {

void bm25_scores_scalar(const Bm25Batch& c, const double* tf, const double* length, double* out,
                        std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = bm25_weight(c, tf[i], length[i]);
    }
}

void scale_scalar(double* values, double weight, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        values[i] *= weight;
    }
}

void accumulate_scalar(double* acc, const double* values, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        acc[i] += values[i];
    }
}

}  // namespace pmsearch::simd::detail
