#include "pmsearch/optim/forest.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <random>

#include "pmsearch/error.hpp"

namespace pmsearch::optim {

namespace {

std::uint64_t mix(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Split {
    int feature = -1;
    double threshold = 0.0;
    double sse = 0.0;
};

class Builder {
  public:
    Builder(const std::vector<std::vector<double>>& x, const std::vector<double>& y,
            const ForestSettings& s, std::uint64_t seed)
        : x_(x), y_(y), s_(s), rng_(seed)
    {
        dim_ = x.front().size();
        binary_.assign(dim_, true);
        for (const auto& row : x) {
            for (std::size_t f = 0; f < dim_; ++f) {
                binary_[f] = binary_[f] && (row[f] == 0.0 || row[f] == 1.0);
            }
        }
        tried_ = std::min<std::size_t>(
            dim_, static_cast<std::size_t>(std::ceil(static_cast<double>(dim_) * s.feature_fraction)));
        tried_ = std::max<std::size_t>(tried_, 1);
    }

    int build(std::vector<std::size_t> rows, std::vector<RegressionTree::Node>& nodes)
    {
        RegressionTree::Node node;
        double sum = 0.0;
        for (auto r : rows) {
            sum += y_[r];
        }
        node.value = sum / static_cast<double>(rows.size());
        int id = static_cast<int>(nodes.size());
        nodes.push_back(node);

        bool constant = std::all_of(rows.begin(), rows.end(),
                                    [&](std::size_t r) { return y_[r] == y_[rows.front()]; });
        if (constant || rows.size() < 2 * std::max<std::size_t>(s_.min_leaf, 1)) {
            return id;
        }
        std::vector<std::size_t> features(dim_);
        std::iota(features.begin(), features.end(), 0);
        std::shuffle(features.begin(), features.end(), rng_);
        Split best = best_split(rows, {features.begin(), features.begin() + static_cast<long>(tried_)});
        if (best.feature < 0 && tried_ < dim_) {
            best = best_split(rows, features);
        }
        if (best.feature < 0) {
            return id;
        }
        std::vector<std::size_t> left, right;
        for (auto r : rows) {
            (x_[r][static_cast<std::size_t>(best.feature)] <= best.threshold ? left : right).push_back(r);
        }
        rows.clear();
        rows.shrink_to_fit();
        int l = build(std::move(left), nodes);
        int rr = build(std::move(right), nodes);
        nodes[static_cast<std::size_t>(id)].feature = best.feature;
        nodes[static_cast<std::size_t>(id)].threshold = best.threshold;
        nodes[static_cast<std::size_t>(id)].left = l;
        nodes[static_cast<std::size_t>(id)].right = rr;
        return id;
    }

  private:
    Split best_split(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& features)
    {
        Split best;
        const std::size_t n = rows.size();
        const std::size_t min_leaf = std::max<std::size_t>(s_.min_leaf, 1);
        std::vector<std::pair<double, double>> col(n);
        for (auto f : features) {
            if (binary_[f]) {
                binary_split(rows, f, min_leaf, best);
                continue;
            }
            for (std::size_t i = 0; i < n; ++i) {
                col[i] = {x_[rows[i]][f], y_[rows[i]]};
            }
            std::sort(col.begin(), col.end());
            double total = 0.0, total_sq = 0.0;
            for (const auto& [v, t] : col) {
                total += t;
                total_sq += t * t;
            }
            double left = 0.0, left_sq = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                left += col[i].second;
                left_sq += col[i].second * col[i].second;
                std::size_t nl = i + 1, nr = n - nl;
                if (nl < min_leaf || nr < min_leaf || col[i].first == col[i + 1].first) {
                    continue;
                }
                double right = total - left, right_sq = total_sq - left_sq;
                double sse = (left_sq - left * left / static_cast<double>(nl)) +
                             (right_sq - right * right / static_cast<double>(nr));
                if (best.feature < 0 || sse < best.sse) {
                    best = {static_cast<int>(f), 0.5 * (col[i].first + col[i + 1].first), sse};
                }
            }
        }
        return best;
    }

    // 0/1 columns need no sort: the only candidate split is between 0 and 1.
    void binary_split(const std::vector<std::size_t>& rows, std::size_t f, std::size_t min_leaf,
                      Split& best) const
    {
        double zero = 0.0, zero_sq = 0.0, one = 0.0, one_sq = 0.0;
        std::size_t nz = 0;
        for (auto r : rows) {
            double t = y_[r];
            if (x_[r][f] == 0.0) {
                zero += t;
                zero_sq += t * t;
                ++nz;
            } else {
                one += t;
                one_sq += t * t;
            }
        }
        std::size_t no = rows.size() - nz;
        if (nz < min_leaf || no < min_leaf) {
            return;
        }
        double sse = (zero_sq - zero * zero / static_cast<double>(nz)) +
                     (one_sq - one * one / static_cast<double>(no));
        if (best.feature < 0 || sse < best.sse) {
            best = {static_cast<int>(f), 0.5, sse};
        }
    }

    const std::vector<std::vector<double>>& x_;
    const std::vector<double>& y_;
    const ForestSettings& s_;
    std::mt19937_64 rng_;
    std::size_t dim_ = 0;
    std::size_t tried_ = 0;
    std::vector<bool> binary_;
};

}  // namespace

RegressionTree RegressionTree::fit(const std::vector<std::vector<double>>& x,
                                   const std::vector<double>& y,
                                   const std::vector<std::size_t>& rows,
                                   const ForestSettings& settings, std::uint64_t seed)
{
    RegressionTree tree;
    Builder builder(x, y, settings, seed);
    builder.build(rows, tree.nodes_);
    return tree;
}

double RegressionTree::predict(const std::vector<double>& x) const
{
    std::size_t i = 0;
    while (nodes_[i].feature >= 0) {
        const auto& n = nodes_[i];
        i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left
                                                                                           : n.right);
    }
    return nodes_[i].value;
}

ForestModel ForestModel::fit(const std::vector<std::vector<double>>& x,
                             const std::vector<double>& y, const ForestSettings& settings,
                             std::uint64_t seed)
{
    if (x.size() < 2 || x.size() != y.size()) {
        throw InvalidArgument("forest needs at least two observations");
    }
    if (settings.trees == 0) {
        throw InvalidArgument("forest needs at least one tree");
    }
    for (const auto& row : x) {
        if (row.size() != x.front().size() || row.empty()) {
            throw InvalidArgument("forest rows must share a non-zero dimension");
        }
    }
    auto fit_one = [&](std::size_t t) {
        std::uint64_t tree_seed = mix(seed ^ mix(t + 1));
        std::vector<std::size_t> rows(x.size());
        if (settings.bootstrap) {
            std::mt19937_64 rng(mix(tree_seed));
            std::uniform_int_distribution<std::size_t> pick(0, x.size() - 1);
            for (auto& r : rows) {
                r = pick(rng);
            }
        } else {
            std::iota(rows.begin(), rows.end(), 0);
        }
        return RegressionTree::fit(x, y, rows, settings, tree_seed);
    };
    ForestModel model;
    model.trees_.resize(settings.trees);
    std::size_t jobs = std::max<std::size_t>(1, std::min(settings.jobs, settings.trees));
    if (jobs == 1) {
        for (std::size_t t = 0; t < settings.trees; ++t) {
            model.trees_[t] = fit_one(t);
        }
    } else {
        for (std::size_t begin = 0; begin < settings.trees; begin += jobs) {
            std::vector<std::future<RegressionTree>> pending;
            for (std::size_t t = begin; t < std::min(settings.trees, begin + jobs); ++t) {
                pending.push_back(std::async(std::launch::async, fit_one, t));
            }
            for (std::size_t k = 0; k < pending.size(); ++k) {
                model.trees_[begin + k] = pending[k].get();
            }
        }
    }
    return model;
}

Prediction ForestModel::predict(const std::vector<double>& x) const
{
    double sum = 0.0;
    for (const auto& t : trees_) {
        sum += t.predict(x);
    }
    double mean = sum / static_cast<double>(trees_.size());
    // Second traversal instead of a buffer: trees are shallow and this runs
    // in the acquisition inner loop.
    double var = 0.0;
    for (const auto& t : trees_) {
        double d = t.predict(x) - mean;
        var += d * d;
    }
    return {mean, var / static_cast<double>(trees_.size())};
}

}  // namespace pmsearch::optim
