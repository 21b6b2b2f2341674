#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "pmsearch/topics/topic.hpp"

namespace pmsearch::harness {

struct FoldPlan {
    std::size_t k = 0;
    std::map<int, std::size_t> assignments;  ///< topic number -> fold in [0, k)

    /// Topic numbers of `fold`, ascending.
    std::vector<int> test_topics(std::size_t fold) const;
    /// Every topic outside `fold`, ascending.
    std::vector<int> train_topics(std::size_t fold) const;

    friend bool operator==(const FoldPlan&, const FoldPlan&) = default;
};

/// Greedy balanced assignment. Topics are visited largest disease group
/// first, each (disease, gene) group contiguously, and each goes to the fold
/// holding the fewest topics of its disease, then of its gene, then the fewest
/// topics overall; remaining ties are broken by a seeded fold order. Per-disease
/// counts across folds therefore differ by at most one. Same-disease swaps then
/// even out gene counts where the greedy pass left them uneven.
/// Throws InvalidArgument unless 2 <= k <= |topics| and topic numbers are unique.
FoldPlan stratified_folds(const std::vector<topics::Topic>& topics, std::size_t k,
                          std::uint64_t seed);

}  // namespace pmsearch::harness
