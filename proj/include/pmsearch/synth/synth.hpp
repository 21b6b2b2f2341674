#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmsearch/eval/trec_io.hpp"
#include "pmsearch/index/document.hpp"
#include "pmsearch/topics/lexicon.hpp"
#include "pmsearch/topics/topic.hpp"

namespace pmsearch::synth {

struct SynthSpec {
    std::uint64_t seed = 1;
    std::size_t ba_docs = 200;
    std::size_t ct_docs = 100;
    std::size_t topics = 12;
};

/// A self-contained collection for both tasks. Every topic has planted
/// relevant documents that name its disease and gene in several ways: by the
/// topic terms, only through lexicon synonyms or preferred terms, or through
/// the gene family. Relevant documents favour a subset of the positive
/// keywords; distractors share one aspect, a hypernym, scattered disease words,
/// negative keywords, or (CT) fail the demographic criteria.
struct SynthData {
    std::vector<index::Document> ba_docs;
    std::vector<index::Document> ct_docs;
    std::vector<topics::Topic> topics;
    topics::Lexicon lexicon;
    eval::Qrels ba_qrels;
    eval::Qrels ct_qrels;
    /// Two strata per topic: one fully judged, one sampled at half its size.
    eval::SampledQrels ba_sampled;
    eval::SampledQrels ct_sampled;
};

/// Deterministic in `spec`. Throws InvalidArgument when topics is 0 or the
/// document budget leaves fewer than four planted documents per topic.
SynthData generate(const SynthSpec& spec);

// File names written by write_files, relative to the output directory.
inline constexpr const char* kBaCorpusFile = "ba_corpus.jsonl";
inline constexpr const char* kCtCorpusFile = "ct_corpus.jsonl";
inline constexpr const char* kTopicsFile = "topics.xml";
inline constexpr const char* kLexiconFile = "lexicon.json";
inline constexpr const char* kBaQrelsFile = "ba_qrels.txt";
inline constexpr const char* kCtQrelsFile = "ct_qrels.txt";
inline constexpr const char* kBaSampledFile = "ba_sampled_qrels.txt";
inline constexpr const char* kCtSampledFile = "ct_sampled_qrels.txt";

/// Writes every file in canonical form, creating `dir` if needed.
void write_files(const SynthData& data, const std::string& dir);

}  // namespace pmsearch::synth
