#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pmsearch/index/bm25.hpp"
#include "pmsearch/index/index.hpp"
#include "pmsearch/query/query.hpp"

namespace pmsearch::query {

using index::Bm25Params;
using index::DocOrdinal;
using index::Index;

/// Sparse result of evaluating a subtree: matching documents in increasing
/// ordinal order with their scores.
struct MatchList {
    std::vector<DocOrdinal> docs;
    std::vector<double> scores;

    std::size_t size() const { return docs.size(); }
};

/// Posting-driven evaluation of the whole tree.
MatchList evaluate(const Index& index, const Query& query, const Bm25Params& params);

/// Document-at-a-time evaluation of one document; nullopt when it does not
/// match. Agrees with evaluate() on every document.
std::optional<double> score_document(const Index& index, const Query& query, DocOrdinal doc,
                                     const Bm25Params& params);

/// Occurrences of `terms` at consecutive positions of `field` in `doc`.
std::uint32_t phrase_frequency(const Index& index, Field field,
                               const std::vector<std::string>& terms, DocOrdinal doc);

struct ScoredHit {
    std::string doc_id;
    double score = 0.0;
    std::size_t rank = 0;  ///< 1-based

    friend bool operator==(const ScoredHit&, const ScoredHit&) = default;
};

/// Top `top_k` matches by descending score, ties by ascending doc_id.
std::vector<ScoredHit> search(const Index& index, const Query& query, const Bm25Params& params,
                              std::size_t top_k);

}  // namespace pmsearch::query
