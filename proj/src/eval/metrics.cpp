#include "pmsearch/eval/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "pmsearch/error.hpp"

namespace pmsearch::eval {

double discount(std::size_t rank)
{
    return 1.0 / std::log2(static_cast<double>(rank) + 1.0);
}

double dcg(const std::vector<double>& gains, std::size_t depth)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < gains.size() && i < depth; ++i) {
        if (gains[i] != 0.0) {
            sum += gains[i] * discount(i + 1);
        }
    }
    return sum;
}

double ideal_dcg(double count_grade1, double count_grade2, std::size_t depth)
{
    std::vector<double> gains;
    double end2 = count_grade2;
    double end1 = count_grade2 + count_grade1;
    for (std::size_t r = 1; r <= depth && static_cast<double>(r - 1) < end1; ++r) {
        double lo = static_cast<double>(r - 1);
        double hi = static_cast<double>(r);
        double share2 = std::clamp(std::min(hi, end2) - lo, 0.0, 1.0);
        double share1 = std::clamp(std::min(hi, end1) - std::max(lo, end2), 0.0, 1.0);
        // Whole ranks keep exact integer gains so that integral counts
        // reproduce the plain ideal DCG bit for bit.
        gains.push_back(share2 == 1.0 ? 2.0 : share1 == 1.0 ? 1.0 : 2.0 * share2 + share1);
    }
    return dcg(gains, depth);
}

double ndcg(const std::vector<std::string>& ranking, const Judgments& judgments, std::size_t depth)
{
    if (depth == 0) {
        throw InvalidArgument("evaluation depth must be >= 1");
    }
    double n1 = 0, n2 = 0;
    for (const auto& [doc, g] : judgments) {
        n1 += g == 1;
        n2 += g == 2;
    }
    double ideal = ideal_dcg(n1, n2, depth);
    if (ideal == 0.0) {
        return 0.0;
    }
    std::vector<double> gains;
    gains.reserve(std::min(depth, ranking.size()));
    for (std::size_t i = 0; i < ranking.size() && i < depth; ++i) {
        auto it = judgments.find(ranking[i]);
        gains.push_back(it == judgments.end() ? 0.0 : static_cast<double>(it->second));
    }
    return dcg(gains, depth) / ideal;
}

InferredEstimate inferred_estimate(const std::vector<std::string>& ranking,
                                   const std::vector<Stratum>& strata, std::size_t depth)
{
    if (depth == 0) {
        throw InvalidArgument("evaluation depth must be >= 1");
    }
    // doc -> inflated gain
    std::map<std::string, double, std::less<>> inflated;
    InferredEstimate est;
    for (const auto& s : strata) {
        if (s.sampled.empty() || s.pool_size < s.sampled.size()) {
            throw InvalidArgument("stratum " + std::to_string(s.id) +
                                  " needs 1..pool_size sampled documents");
        }
        double w = static_cast<double>(s.pool_size) / static_cast<double>(s.sampled.size());
        for (const auto& d : s.sampled) {
            if (d.grade == 1) {
                est.count_grade1 += w;
            } else if (d.grade == 2) {
                est.count_grade2 += w;
            }
            inflated[d.doc_id] = static_cast<double>(d.grade) * w;
        }
    }
    std::vector<double> gains;
    for (std::size_t i = 0; i < ranking.size() && i < depth; ++i) {
        auto it = inflated.find(ranking[i]);
        gains.push_back(it == inflated.end() ? 0.0 : it->second);
    }
    est.dcg = dcg(gains, depth);
    return est;
}

double inf_ndcg(const std::vector<std::string>& ranking, const std::vector<Stratum>& strata,
                std::size_t depth)
{
    auto est = inferred_estimate(ranking, strata, depth);
    double ideal = ideal_dcg(est.count_grade1, est.count_grade2, depth);
    if (ideal == 0.0) {
        return 0.0;
    }
    return std::clamp(est.dcg / ideal, 0.0, 1.0);
}

namespace {

bool any_relevant(const Judgments& j)
{
    return std::any_of(j.begin(), j.end(), [](const auto& kv) { return kv.second > 0; });
}

bool any_relevant(const std::vector<Stratum>& strata)
{
    for (const auto& s : strata) {
        for (const auto& d : s.sampled) {
            if (d.grade > 0) {
                return true;
            }
        }
    }
    return false;
}

template <typename Judged, typename Score>
std::vector<TopicScore> evaluate_all(const Run& run, const std::map<TopicId, Judged>& judged,
                                     Score score)
{
    std::vector<TopicScore> out;
    for (const auto& [topic, j] : judged) {
        auto it = run.topics.find(topic);
        std::vector<std::string> ranking;
        if (it != run.topics.end()) {
            ranking = doc_ids(it->second);
        }
        out.push_back({topic, score(ranking, j), !any_relevant(j)});
    }
    return out;
}

}  // namespace

std::vector<TopicScore> evaluate_run(const Run& run, const Qrels& qrels, std::size_t depth)
{
    return evaluate_all(run, qrels.topics, [&](const auto& ranking, const Judgments& j) {
        return ndcg(ranking, j, depth);
    });
}

std::vector<TopicScore> evaluate_run(const Run& run, const SampledQrels& sampled, std::size_t depth)
{
    return evaluate_all(run, sampled.topics, [&](const auto& ranking, const std::vector<Stratum>& s) {
        return inf_ndcg(ranking, s, depth);
    });
}

double mean_over_topics(const std::vector<double>& scores)
{
    if (scores.empty()) {
        throw InvalidArgument("mean over an empty topic set");
    }
    double sum = 0.0;
    for (double s : scores) {
        sum += s;
    }
    return sum / static_cast<double>(scores.size());
}

double mean_over_topics(const std::vector<TopicScore>& scores)
{
    std::vector<double> v;
    v.reserve(scores.size());
    for (const auto& s : scores) {
        v.push_back(s.score);
    }
    return mean_over_topics(v);
}

std::vector<std::string> doc_ids(const std::vector<RunEntry>& entries)
{
    std::vector<std::string> out;
    out.reserve(entries.size());
    for (const auto& e : entries) {
        out.push_back(e.doc_id);
    }
    return out;
}

}  // namespace pmsearch::eval
