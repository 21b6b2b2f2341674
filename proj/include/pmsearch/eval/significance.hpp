#pragma once

#include <cstdint>
#include <map>

#include "pmsearch/eval/trec_io.hpp"

namespace pmsearch::eval {

struct RandomizationResult {
    double observed = 0.0;  ///< |mean(a) - mean(b)|
    double p_value = 1.0;
    std::size_t iterations = 0;
};

/// Two-tailed paired approximate randomization test. Each iteration swaps
/// a and b per topic with probability 1/2; p = (#{permuted >= observed} + 1)
/// / (iterations + 1). The swap bit of (topic, iteration) is a pure function
/// of the seed, so results do not depend on topic order or threads, and
/// swapping a and b gives the same p.
RandomizationResult approx_randomization_test(const std::map<TopicId, double>& a,
                                              const std::map<TopicId, double>& b,
                                              std::size_t iterations, std::uint64_t seed);

/// Swap decision for one (topic, iteration) pair.
bool swap_bit(std::uint64_t seed, TopicId topic, std::uint64_t iteration);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace pmsearch::eval
