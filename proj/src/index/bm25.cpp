#include "pmsearch/index/bm25.hpp"

#include <cmath>

#include "pmsearch/error.hpp"
#include "pmsearch/simd/kernels.hpp"

namespace pmsearch::index {

void Bm25Params::validate() const
{
    if (!(k1 >= 0.0 && k1 <= 2.0)) {
        throw InvalidArgument("BM25 k1 outside [0, 2]: " + std::to_string(k1));
    }
    if (!(b >= 0.0 && b <= 1.0)) {
        throw InvalidArgument("BM25 b outside [0, 1]: " + std::to_string(b));
    }
}

double idf(std::size_t doc_count, std::size_t df)
{
    if (doc_count == 0) {
        return 0.0;
    }
    auto n = static_cast<double>(doc_count);
    auto d = static_cast<double>(df);
    return std::log((n - d + 0.5) / (d + 0.5));
}

double idf(const Index& index, Field field, std::string_view term)
{
    return idf(index.doc_count(), index.field(field).df(term));
}

double bm25_term_score(const Index& index, Field field, std::string_view term,
                       std::string_view doc_id, const Bm25Params& params)
{
    auto ordinal = index.find(doc_id);
    if (!ordinal) {
        throw InvalidArgument("unknown doc_id: " + std::string(doc_id));
    }
    auto tf = index.tf(field, term, *ordinal);
    if (tf == 0) {
        return 0.0;
    }
    const auto& stats = index.field(field);
    simd::Bm25Batch c{idf(index, field, term), params.k1, params.b, stats.avg_length()};
    return simd::bm25_weight(c, static_cast<double>(tf), stats.doc_length(*ordinal));
}

}  // namespace pmsearch::index
