#pragma once

// Batch scoring kernels. Every kernel has a scalar reference implementation
// and vector variants (AVX2 on x86-64, NEON on AArch64) selected at runtime.
// The vector variants perform the same IEEE operations in the same order as
// the scalar code, so results are bit-identical across ISAs.

#include <span>
#include <string_view>
#include <vector>

namespace pmsearch::simd {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

/// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

/// Best available ISA, detected once.
Isa active_isa();

/// Every ISA usable on this machine, scalar first.
std::vector<Isa> available_isas();

/// Per-term constants of the BM25 summand.
struct Bm25Batch {
    double idf = 0.0;
    double k1 = 1.2;
    double b = 0.75;
    double avg_length = 0.0;
};

/// Single summand: idf * ((k1 + 1) tf) / (k1 ((1 - b) + b len / avg) + tf).
/// Callers handle tf == 0 themselves.
inline double bm25_weight(const Bm25Batch& c, double tf, double length)
{
    double num = (c.k1 + 1.0) * tf;
    double norm = (1.0 - c.b) + c.b * (length / c.avg_length);
    double denom = c.k1 * norm + tf;
    return c.idf * (num / denom);
}

/// out[i] = bm25_weight(c, tf[i], length[i]). All spans must have equal size.
void bm25_scores(const Bm25Batch& c, std::span<const double> tf, std::span<const double> length,
                 std::span<double> out);
void bm25_scores(Isa isa, const Bm25Batch& c, std::span<const double> tf,
                 std::span<const double> length, std::span<double> out);

/// values[i] *= weight
void scale(std::span<double> values, double weight);
void scale(Isa isa, std::span<double> values, double weight);

/// acc[i] += values[i]
void accumulate(std::span<double> acc, std::span<const double> values);
void accumulate(Isa isa, std::span<double> acc, std::span<const double> values);

namespace detail {

void bm25_scores_scalar(const Bm25Batch& c, const double* tf, const double* length, double* out,
                        std::size_t n);
void scale_scalar(double* values, double weight, std::size_t n);
void accumulate_scalar(double* acc, const double* values, std::size_t n);

#if defined(PMSEARCH_HAVE_AVX2)
void bm25_scores_avx2(const Bm25Batch& c, const double* tf, const double* length, double* out,
                      std::size_t n);
void scale_avx2(double* values, double weight, std::size_t n);
void accumulate_avx2(double* acc, const double* values, std::size_t n);
#endif

#if defined(PMSEARCH_HAVE_NEON)
void bm25_scores_neon(const Bm25Batch& c, const double* tf, const double* length, double* out,
                      std::size_t n);
void scale_neon(double* values, double weight, std::size_t n);
void accumulate_neon(double* acc, const double* values, std::size_t n);
#endif

}  // namespace detail
}  // namespace pmsearch::simd
