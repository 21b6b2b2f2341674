#pragma once

#include <random>
#include <vector>

#include "pmsearch/index/document.hpp"
#include "pmsearch/query/query.hpp"

namespace pmsearch::testkit {

struct RandomCorpusSpec {
    std::size_t max_docs = 1000;
    std::size_t vocabulary = 40;
    bool structured = true;
};

/// Zipf-ish vocabulary, shuffled doc ids (so ordinal order differs from id
/// order), optional demographic fields.
std::vector<index::Document> random_corpus(std::mt19937_64& rng, const RandomCorpusSpec& spec);

/// Random tree over every node kind. Phrases are sampled from actual document
/// text so they match now and then.
query::Query random_query(std::mt19937_64& rng, const std::vector<index::Document>& docs,
                          std::size_t vocabulary, int depth);

std::string vocab_word(std::size_t i);

}  // namespace pmsearch::testkit
