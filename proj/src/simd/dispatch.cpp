
#include "pmsearch/error.hpp"
#include "pmsearch/simd/kernels.hpp"

namespace pmsearch::simd {

std::string_view isa_name(Isa isa)
{
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    }
    return "scalar";
}

bool isa_available(Isa isa)
{
    switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(PMSEARCH_HAVE_AVX2)
        return __builtin_cpu_supports("avx2") != 0;
#else
        return false;
#endif
    case Isa::neon:
#if defined(PMSEARCH_HAVE_NEON)
        return true;
#else
        return false;
#endif
    }
    return false;
}

Isa active_isa()
{
    static const Isa detected = [] {
        if (isa_available(Isa::avx2)) {
            return Isa::avx2;
        }
        if (isa_available(Isa::neon)) {
            return Isa::neon;
        }
        return Isa::scalar;
    }();
    return detected;
}

std::vector<Isa> available_isas()
{
    std::vector<Isa> out;
    for (auto isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
        if (isa_available(isa)) {
            out.push_back(isa);
        }
    }
    return out;
}

namespace {

void require(Isa isa)
{
    if (!isa_available(isa)) {
        throw InvalidArgument("kernel ISA not available: " + std::string(isa_name(isa)));
    }
}

}  // namespace

void bm25_scores(Isa isa, const Bm25Batch& c, std::span<const double> tf,
                 std::span<const double> length, std::span<double> out)
{
    if (tf.size() != length.size() || tf.size() != out.size()) {
        throw InvalidArgument("bm25_scores: span sizes differ");
    }
    require(isa);
    switch (isa) {
#if defined(PMSEARCH_HAVE_AVX2)
    case Isa::avx2:
        detail::bm25_scores_avx2(c, tf.data(), length.data(), out.data(), out.size());
        return;
#endif
#if defined(PMSEARCH_HAVE_NEON)
    case Isa::neon:
        detail::bm25_scores_neon(c, tf.data(), length.data(), out.data(), out.size());
        return;
#endif
    default: detail::bm25_scores_scalar(c, tf.data(), length.data(), out.data(), out.size());
    }
}

void bm25_scores(const Bm25Batch& c, std::span<const double> tf, std::span<const double> length,
                 std::span<double> out)
{
    bm25_scores(active_isa(), c, tf, length, out);
}

void scale(Isa isa, std::span<double> values, double weight)
{
    require(isa);
    switch (isa) {
#if defined(PMSEARCH_HAVE_AVX2)
    case Isa::avx2: detail::scale_avx2(values.data(), weight, values.size()); return;
#endif
#if defined(PMSEARCH_HAVE_NEON)
    case Isa::neon: detail::scale_neon(values.data(), weight, values.size()); return;
#endif
    default: detail::scale_scalar(values.data(), weight, values.size());
    }
}

void scale(std::span<double> values, double weight)
{
    scale(active_isa(), values, weight);
}

void accumulate(Isa isa, std::span<double> acc, std::span<const double> values)
{
    if (acc.size() != values.size()) {
        throw InvalidArgument("accumulate: span sizes differ");
    }
    require(isa);
    switch (isa) {
#if defined(PMSEARCH_HAVE_AVX2)
    case Isa::avx2: detail::accumulate_avx2(acc.data(), values.data(), acc.size()); return;
#endif
#if defined(PMSEARCH_HAVE_NEON)
    case Isa::neon: detail::accumulate_neon(acc.data(), values.data(), acc.size()); return;
#endif
    default: detail::accumulate_scalar(acc.data(), values.data(), acc.size());
    }
}

void accumulate(std::span<double> acc, std::span<const double> values)
{
    accumulate(active_isa(), acc, values);
}

}  // namespace pmsearch::simd
