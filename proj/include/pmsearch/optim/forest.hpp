#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pmsearch::optim {

struct ForestSettings {
    std::size_t trees = 10;
    std::size_t min_leaf = 3;
    /// Features tried per split: ceil(dim * feature_fraction). When none of
    /// them admits a valid split, all features are tried.
    double feature_fraction = 5.0 / 6.0;
    /// Train each tree on a bootstrap resample; off means the full sample.
    bool bootstrap = true;
    /// Trees fitted concurrently; results do not depend on it.
    std::size_t jobs = 1;
};

struct Prediction {
    double mean = 0.0;
    double variance = 0.0;  ///< across trees
};

/// Regression tree splitting on `x[feature] <= threshold`, minimizing the
/// summed squared error of the children.
class RegressionTree {
  public:
    struct Node {
        int feature = -1;  ///< -1 for leaves
        double threshold = 0.0;
        double value = 0.0;  ///< leaf mean
        int left = -1;
        int right = -1;
    };

    static RegressionTree fit(const std::vector<std::vector<double>>& x,
                              const std::vector<double>& y, const std::vector<std::size_t>& rows,
                              const ForestSettings& settings, std::uint64_t seed);

    double predict(const std::vector<double>& x) const;
    std::size_t node_count() const { return nodes_.size(); }

  private:
    std::vector<Node> nodes_;
};

class ForestModel {
  public:
    /// Needs >= 2 rows of equal dimension; throws InvalidArgument otherwise.
    static ForestModel fit(const std::vector<std::vector<double>>& x, const std::vector<double>& y,
                           const ForestSettings& settings, std::uint64_t seed);

    Prediction predict(const std::vector<double>& x) const;
    std::size_t tree_count() const { return trees_.size(); }

  private:
    std::vector<RegressionTree> trees_;
};

}  // namespace pmsearch::optim
