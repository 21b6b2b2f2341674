#pragma once

// Exhaustive reference for the stratified-sampling estimator. It enumerates
// every possible sample of every stratum of a fully judged pool and
// averages the per-sample estimates, and it recomputes single estimates
// from first principles without the library.

#include <string>
#include <utility>
#include <vector>

#include "pmsearch/eval/trec_io.hpp"

namespace pmsearch::testkit {

struct PoolStratum {
    std::vector<std::pair<std::string, int>> docs;  ///< the whole judged pool
    std::size_t sample_size = 0;
};

struct Expectation {
    double dcg = 0.0;
    double count_grade1 = 0.0;
    double count_grade2 = 0.0;
    std::size_t samples = 0;  ///< number of equally likely joint samples
};

/// Mean over all joint samples of the estimator computed by `oracle_estimate`.
Expectation expected_estimate(const std::vector<std::string>& ranking,
                              const std::vector<PoolStratum>& pool, std::size_t depth);

/// Every joint sample as TREC strata, in enumeration order.
std::vector<std::vector<eval::Stratum>> all_samples(const std::vector<PoolStratum>& pool);

/// Estimated DCG and counts of one sample, recomputed independently.
Expectation oracle_estimate(const std::vector<std::string>& ranking,
                            const std::vector<eval::Stratum>& strata, std::size_t depth);

/// Point estimate of inferred NDCG from the cumulative-gain form of the ideal.
double oracle_inf_ndcg(const std::vector<std::string>& ranking,
                       const std::vector<eval::Stratum>& strata, std::size_t depth);

/// True DCG with every pool document judged.
double true_dcg(const std::vector<std::string>& ranking, const std::vector<PoolStratum>& pool,
                std::size_t depth);

}  // namespace pmsearch::testkit
