#include "pmsearch/harness/folds.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include <boost/algorithm/string/case_conv.hpp>
#include <boost/algorithm/string/trim.hpp>

#include "pmsearch/error.hpp"

namespace pmsearch::harness {

std::vector<int> FoldPlan::test_topics(std::size_t fold) const
{
    std::vector<int> out;
    for (const auto& [topic, f] : assignments) {
        if (f == fold) {
            out.push_back(topic);
        }
    }
    return out;
}

std::vector<int> FoldPlan::train_topics(std::size_t fold) const
{
    std::vector<int> out;
    for (const auto& [topic, f] : assignments) {
        if (f != fold) {
            out.push_back(topic);
        }
    }
    return out;
}

namespace {

std::string key(const std::string& text)
{
    return boost::algorithm::to_lower_copy(boost::algorithm::trim_copy(text));
}

}  // namespace

FoldPlan stratified_folds(const std::vector<topics::Topic>& topics, std::size_t k,
                          std::uint64_t seed)
{
    if (k < 2) {
        throw InvalidArgument("cross-validation needs at least 2 folds");
    }
    if (topics.size() < k) {
        throw InvalidArgument("more folds than topics");
    }
    std::set<int> numbers;
    for (const auto& t : topics) {
        if (!numbers.insert(t.number).second) {
            throw InvalidArgument("duplicate topic " + std::to_string(t.number));
        }
    }

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> topic_rank(topics.size());
    std::iota(topic_rank.begin(), topic_rank.end(), 0);
    std::shuffle(topic_rank.begin(), topic_rank.end(), rng);
    std::vector<std::size_t> fold_rank(k);
    std::iota(fold_rank.begin(), fold_rank.end(), 0);
    std::shuffle(fold_rank.begin(), fold_rank.end(), rng);

    std::vector<std::string> disease(topics.size()), gene(topics.size());
    std::map<std::string, std::size_t> disease_size;
    for (std::size_t i = 0; i < topics.size(); ++i) {
        disease[i] = key(topics[i].disease);
        gene[i] = key(topics[i].gene);
        ++disease_size[disease[i]];
    }

    std::vector<std::size_t> order(topics.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::tuple(-static_cast<long>(disease_size[disease[a]]), disease[a], gene[a],
                          topic_rank[a]) <
               std::tuple(-static_cast<long>(disease_size[disease[b]]), disease[b], gene[b],
                          topic_rank[b]);
    });

    std::vector<std::map<std::string, std::size_t>> disease_count(k), gene_count(k);
    std::vector<std::size_t> size(k, 0);
    std::vector<std::size_t> fold_of(topics.size());
    for (std::size_t i : order) {
        std::size_t best = 0;
        auto rank_of = [&](std::size_t f) {
            return std::tuple(disease_count[f][disease[i]], gene_count[f][gene[i]], size[f],
                              fold_rank[f]);
        };
        for (std::size_t f = 1; f < k; ++f) {
            if (rank_of(f) < rank_of(best)) {
                best = f;
            }
        }
        ++disease_count[best][disease[i]];
        ++gene_count[best][gene[i]];
        ++size[best];
        fold_of[i] = best;
    }

    // Repair: swap two topics of the same disease across folds while that
    // lowers the summed squared gene counts. Disease counts and fold sizes are
    // unchanged by such swaps, so only gene balance moves.
    auto sq_change = [&](std::size_t a, std::size_t b) {
        // Moving topic a from fold fa to fb and topic b from fb to fa.
        std::size_t fa = fold_of[a], fb = fold_of[b];
        const auto& ga = gene[a];
        const auto& gb = gene[b];
        auto c = [&](std::size_t f, const std::string& g) {
            return static_cast<long>(gene_count[f][g]);
        };
        // x^2 changes for the four touched cells: (fa,ga) -1, (fb,ga) +1, (fb,gb) -1, (fa,gb) +1.
        long delta = 0;
        delta += (c(fa, ga) - 1) * (c(fa, ga) - 1) - c(fa, ga) * c(fa, ga);
        delta += (c(fb, ga) + 1) * (c(fb, ga) + 1) - c(fb, ga) * c(fb, ga);
        delta += (c(fb, gb) - 1) * (c(fb, gb) - 1) - c(fb, gb) * c(fb, gb);
        delta += (c(fa, gb) + 1) * (c(fa, gb) + 1) - c(fa, gb) * c(fa, gb);
        return delta;
    };
    for (bool improved = true; improved;) {
        improved = false;
        for (std::size_t x = 0; x < order.size(); ++x) {
            for (std::size_t y = x + 1; y < order.size(); ++y) {
                std::size_t a = order[x], b = order[y];
                if (fold_of[a] == fold_of[b] || disease[a] != disease[b] || gene[a] == gene[b] ||
                    sq_change(a, b) >= 0) {
                    continue;
                }
                --gene_count[fold_of[a]][gene[a]];
                ++gene_count[fold_of[b]][gene[a]];
                --gene_count[fold_of[b]][gene[b]];
                ++gene_count[fold_of[a]][gene[b]];
                std::swap(fold_of[a], fold_of[b]);
                improved = true;
            }
        }
    }

    FoldPlan plan;
    plan.k = k;
    for (std::size_t i = 0; i < topics.size(); ++i) {
        plan.assignments[topics[i].number] = fold_of[i];
    }
    return plan;
}

}  // namespace pmsearch::harness
