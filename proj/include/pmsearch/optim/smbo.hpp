#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <vector>

#include "pmsearch/optim/forest.hpp"
#include "pmsearch/optim/param_space.hpp"

namespace pmsearch::optim {

/// Expected improvement over `best` for maximization; max(mu - best, 0)
/// when sigma is 0.
double expected_improvement(double mu, double sigma, double best);

enum class Origin { start, model, random };

std::string_view origin_name(Origin origin);

struct Observation {
    Configuration config;
    double score = 0.0;
    std::size_t eval_index = 0;  ///< 1-based
    Origin origin = Origin::start;
    bool failed = false;  ///< the objective threw; score was recorded as 0
};

struct SmboSettings {
    ForestSettings forest;
    std::size_t random_candidates = 500;  ///< uniform EI candidates per suggestion
    std::size_t local_search_starts = 5;  ///< incumbent plus best observed configurations
    std::size_t local_search_steps = 40;
    std::size_t numeric_neighbors = 4;  ///< Gaussian perturbations per numeric parameter
    double numeric_sigma = 0.2;         ///< step standard deviation, as a fraction of the range
};

Configuration sample_uniform(const ParamSpace& space, std::mt19937_64& rng);

/// One-exchange neighborhood: every binary flipped, every other category,
/// and `numeric_neighbors` clipped Gaussian steps per numeric parameter.
std::vector<Configuration> one_exchange_neighbors(const Configuration& config,
                                                  const ParamSpace& space, std::mt19937_64& rng,
                                                  const SmboSettings& settings);

/// Best-EI configuration found by local search from the incumbent and the
/// best observations, and among uniform random candidates. Configurations
/// already in `history` are skipped; when every candidate was seen a fresh
/// uniform draw is returned.
Configuration suggest_next(const ForestModel& model, const ParamSpace& space,
                           const std::vector<Observation>& history, std::mt19937_64& rng,
                           const SmboSettings& settings);

/// Ask/tell driver. Provided starts are returned first, in order; afterwards
/// suggestions alternate between the surrogate model and uniform random draws.
class Smbo {
  public:
    Smbo(ParamSpace space, std::vector<Configuration> starts, std::uint64_t seed,
         SmboSettings settings = {});

    /// Next configuration to evaluate, with where it came from.
    std::pair<Configuration, Origin> ask();
    void tell(Configuration config, double score, Origin origin, bool failed = false);

    const std::vector<Observation>& history() const { return history_; }
    /// Highest score, earliest evaluation on ties.
    const Observation& best() const;

  private:
    ParamSpace space_;
    std::vector<Configuration> starts_;
    SmboSettings settings_;
    std::mt19937_64 rng_;
    std::uint64_t seed_;
    std::vector<Observation> history_;
    std::size_t next_start_ = 0;
    std::size_t suggestions_ = 0;
};

using Objective = std::function<double(const Configuration&)>;

struct SmboResult {
    Observation best;
    std::vector<Observation> history;
};

/// Evaluates the starts, then alternates model fitting, suggestion and
/// evaluation until `budget` evaluations. Objective exceptions are recorded as
/// failed evaluations scoring 0.
SmboResult optimize(const Objective& objective, const ParamSpace& space, std::size_t budget,
                    const std::vector<Configuration>& starts, std::uint64_t seed,
                    const SmboSettings& settings = {});

/// Pure random search with the same budget; the starts are evaluated first.
SmboResult random_search(const Objective& objective, const ParamSpace& space, std::size_t budget,
                         const std::vector<Configuration>& starts, std::uint64_t seed);

/// CSV with header eval_index,score,best_so_far.
void write_trace_csv(std::ostream& out, const std::vector<Observation>& history);

}  // namespace pmsearch::optim
