#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "pmsearch/eval/trec_io.hpp"

namespace pmsearch::eval {

inline constexpr std::size_t kDefaultDepth = 1000;

/// 1 / log2(rank + 1), rank 1-based.
double discount(std::size_t rank);

/// Linear-gain DCG of the first `depth` grades.
double dcg(const std::vector<double>& gains, std::size_t depth);

/// Ideal DCG when `counts[g]` documents of grade g exist (g = 1, 2; counts
/// may be fractional). Rank r receives the gain of the grades covering the
/// unit interval [r - 1, r) when grade-2 documents are laid out first.
double ideal_dcg(double count_grade1, double count_grade2, std::size_t depth);

/// Graded NDCG; 0 when no judged document is relevant. Unjudged documents
/// count as grade 0.
double ndcg(const std::vector<std::string>& ranking, const Judgments& judgments, std::size_t depth);

/// Horvitz-Thompson estimates over stratified samples: every sampled
/// document stands for pool_size / |sampled| documents of its stratum.
struct InferredEstimate {
    double dcg = 0.0;           ///< estimated DCG of the ranking
    double count_grade1 = 0.0;  ///< estimated number of grade-1 documents in the pool
    double count_grade2 = 0.0;
};

/// Throws InvalidArgument on an empty stratum.
InferredEstimate inferred_estimate(const std::vector<std::string>& ranking,
                                   const std::vector<Stratum>& strata, std::size_t depth);

/// Estimated DCG over the ideal DCG of the estimated grade counts, clamped
/// to [0, 1]; 0 when no relevant document is estimated. Equals ndcg() when
/// every stratum is fully sampled.
double inf_ndcg(const std::vector<std::string>& ranking, const std::vector<Stratum>& strata,
                std::size_t depth);

enum class Metric { ndcg, inf_ndcg };

struct TopicScore {
    TopicId topic = 0;
    double score = 0.0;
    bool no_relevant = false;  ///< judgments exist but none is relevant

    friend bool operator==(const TopicScore&, const TopicScore&) = default;
};

/// One score per judged topic, ascending. Topics absent from the run score 0;
/// run topics without judgments are skipped.
std::vector<TopicScore> evaluate_run(const Run& run, const Qrels& qrels, std::size_t depth);
std::vector<TopicScore> evaluate_run(const Run& run, const SampledQrels& sampled, std::size_t depth);

/// Throws InvalidArgument when empty.
double mean_over_topics(const std::vector<double>& scores);
double mean_over_topics(const std::vector<TopicScore>& scores);

std::vector<std::string> doc_ids(const std::vector<RunEntry>& entries);

}  // namespace pmsearch::eval
