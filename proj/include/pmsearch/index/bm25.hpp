#pragma once

#include <string_view>

#include "pmsearch/index/index.hpp"

namespace pmsearch::index {

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;

    /// Throws InvalidArgument unless k1 in [0, 2] and b in [0, 1].
    void validate() const;

    friend bool operator==(const Bm25Params&, const Bm25Params&) = default;
};

/// ln((N - df + 0.5) / (df + 0.5)), deliberately unfloored: negative when the
/// term occurs in more than half of the documents. Defined as 0 when N = 0.
double idf(std::size_t doc_count, std::size_t df);
double idf(const Index& index, Field field, std::string_view term);

/// One BM25 summand for `term` in `field` of document `doc_id`; 0 when the
/// term does not occur there. Throws InvalidArgument for unknown doc ids.
double bm25_term_score(const Index& index, Field field, std::string_view term,
                       std::string_view doc_id, const Bm25Params& params);

}  // namespace pmsearch::index
