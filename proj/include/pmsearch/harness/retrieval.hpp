#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "pmsearch/eval/metrics.hpp"
#include "pmsearch/harness/folds.hpp"
#include "pmsearch/index/index.hpp"
#include "pmsearch/optim/smbo.hpp"
#include "pmsearch/topics/lexicon.hpp"
#include "pmsearch/topics/query_builder.hpp"
#include "pmsearch/topics/topic.hpp"

namespace pmsearch::harness {

/// Everything needed to score a retrieval configuration on a set of topics.
struct RetrievalData {
    index::Index index;
    std::vector<topics::Topic> topics;
    topics::Lexicon lexicon;
    topics::Task task = topics::Task::ba;
    eval::SampledQrels judgments;
    std::size_t depth = eval::kDefaultDepth;
};

/// Complete judgments as one fully sampled stratum per topic, under which
/// inf_ndcg reduces to ndcg.
eval::SampledQrels fully_sampled(const eval::Qrels& qrels);

/// Top `top_k` hits per topic; topics are searched on up to `jobs` threads.
eval::Run run_topics(const index::Index& index, const std::vector<topics::Topic>& topics,
                     const topics::QuerySettings& settings, topics::Task task,
                     const topics::Lexicon& lexicon, std::size_t top_k, std::size_t jobs = 1);

/// inf_ndcg per topic for the topics numbered in `subset`. Throws
/// InvalidArgument when a number names no topic.
std::map<eval::TopicId, double> topic_scores(const RetrievalData& data,
                                             const optim::Configuration& config,
                                             const std::vector<int>& subset, std::size_t jobs = 1);

/// Mean inf_ndcg over `subset`.
double mean_score(const RetrievalData& data, const optim::Configuration& config,
                  const std::vector<int>& subset, std::size_t jobs = 1);

optim::Objective retrieval_objective(const RetrievalData& data, std::vector<int> subset,
                                     std::size_t jobs = 1);

struct FoldResult {
    std::size_t fold = 0;
    optim::Observation best;           ///< score is the training-split mean
    double start_train_score = 0.0;    ///< first starting configuration on the training split
    std::vector<optim::Observation> history;
};

/// Runs optimize() on each fold's training topics. Fold f uses seed
/// mix(seed, f), so folds are independent of each other and of `jobs`.
std::vector<FoldResult> optimize_folds(const RetrievalData& data, const FoldPlan& plan,
                                       std::size_t budget,
                                       const std::vector<optim::Configuration>& starts,
                                       std::uint64_t seed, const optim::SmboSettings& settings = {},
                                       std::size_t jobs = 1);

std::uint64_t fold_seed(std::uint64_t seed, std::size_t fold);

}  // namespace pmsearch::harness
