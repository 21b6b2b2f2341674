#include "pmsearch/harness/retrieval.hpp"

#include <fmt/format.h>

#include "pmsearch/error.hpp"
#include "pmsearch/eval/metrics.hpp"
#include "pmsearch/eval/significance.hpp"
#include "pmsearch/harness/parallel.hpp"
#include "pmsearch/query/search.hpp"

namespace pmsearch::harness {

eval::SampledQrels fully_sampled(const eval::Qrels& qrels)
{
    eval::SampledQrels out;
    for (const auto& [topic, judgments] : qrels.topics) {
        eval::Stratum s;
        s.id = 1;
        s.pool_size = judgments.size();
        for (const auto& [doc, grade] : judgments) {
            s.sampled.push_back({doc, grade});
        }
        out.topics[topic].push_back(std::move(s));
    }
    return out;
}

eval::Run run_topics(const index::Index& index, const std::vector<topics::Topic>& topics,
                     const topics::QuerySettings& settings, topics::Task task,
                     const topics::Lexicon& lexicon, std::size_t top_k, std::size_t jobs)
{
    std::vector<std::vector<eval::RunEntry>> lists(topics.size());
    parallel_for(topics.size(), jobs, [&](std::size_t i) {
        auto q = topics::build_query(topics[i], settings, task, lexicon);
        for (const auto& hit : query::search(index, q, settings.bm25, top_k)) {
            lists[i].push_back({hit.doc_id, hit.score});
        }
    });
    eval::Run run;
    for (std::size_t i = 0; i < topics.size(); ++i) {
        if (!run.topics.emplace(topics[i].number, std::move(lists[i])).second) {
            throw InvalidArgument(fmt::format("duplicate topic {}", topics[i].number));
        }
    }
    return run;
}

std::map<eval::TopicId, double> topic_scores(const RetrievalData& data,
                                             const optim::Configuration& config,
                                             const std::vector<int>& subset, std::size_t jobs)
{
    std::map<int, const topics::Topic*> by_number;
    for (const auto& t : data.topics) {
        by_number[t.number] = &t;
    }
    std::vector<topics::Topic> chosen;
    for (int n : subset) {
        auto it = by_number.find(n);
        if (it == by_number.end()) {
            throw InvalidArgument(fmt::format("no topic {}", n));
        }
        chosen.push_back(*it->second);
    }
    auto settings = topics::settings_from(config);
    auto run = run_topics(data.index, chosen, settings, data.task, data.lexicon, data.depth, jobs);
    std::map<eval::TopicId, double> out;
    for (const auto& t : chosen) {
        auto judged = data.judgments.topics.find(t.number);
        double score = 0.0;
        if (judged != data.judgments.topics.end()) {
            score = eval::inf_ndcg(eval::doc_ids(run.topics.at(t.number)), judged->second, data.depth);
        }
        out[t.number] = score;
    }
    return out;
}

double mean_score(const RetrievalData& data, const optim::Configuration& config,
                  const std::vector<int>& subset, std::size_t jobs)
{
    std::vector<double> scores;
    for (const auto& [topic, s] : topic_scores(data, config, subset, jobs)) {
        scores.push_back(s);
    }
    return eval::mean_over_topics(scores);
}

optim::Objective retrieval_objective(const RetrievalData& data, std::vector<int> subset,
                                     std::size_t jobs)
{
    return [&data, subset = std::move(subset), jobs](const optim::Configuration& c) {
        return mean_score(data, c, subset, jobs);
    };
}

std::uint64_t fold_seed(std::uint64_t seed, std::size_t fold)
{
    return eval::splitmix64(seed ^ eval::splitmix64(fold + 1));
}

std::vector<FoldResult> optimize_folds(const RetrievalData& data, const FoldPlan& plan,
                                       std::size_t budget,
                                       const std::vector<optim::Configuration>& starts,
                                       std::uint64_t seed, const optim::SmboSettings& settings,
                                       std::size_t jobs)
{
    if (starts.empty()) {
        throw InvalidArgument("optimization needs at least one starting configuration");
    }
    std::vector<FoldResult> results(plan.k);
    // Folds run in parallel; each objective stays single-threaded.
    parallel_for(plan.k, jobs, [&](std::size_t fold) {
        auto objective = retrieval_objective(data, plan.train_topics(fold));
        auto r = optim::optimize(objective, topics::retrieval_space(), budget, starts,
                                 fold_seed(seed, fold), settings);
        results[fold] = {fold, r.best, r.history.front().score, std::move(r.history)};
    });
    return results;
}

}  // namespace pmsearch::harness
