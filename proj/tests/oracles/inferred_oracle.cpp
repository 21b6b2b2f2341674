#include "inferred_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace pmsearch::testkit {

namespace {

double disc(std::size_t rank)
{
    return std::log(2.0) / std::log(static_cast<double>(rank) + 1.0);
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out)
{
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<std::vector<eval::Stratum>> all_samples(const std::vector<PoolStratum>& pool)
{
    std::vector<std::vector<std::vector<std::size_t>>> per;
    for (const auto& s : pool) {
        std::vector<std::vector<std::size_t>> out;
        std::vector<std::size_t> cur;
        subsets(s.docs.size(), s.sample_size, 0, cur, out);
        per.push_back(std::move(out));
    }
    std::vector<std::vector<eval::Stratum>> samples;
    std::vector<std::size_t> pick(pool.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t level) {
        if (level == pool.size()) {
            std::vector<eval::Stratum> strata;
            for (std::size_t s = 0; s < pool.size(); ++s) {
                eval::Stratum st;
                st.id = static_cast<int>(s + 1);
                st.pool_size = pool[s].docs.size();
                for (auto i : per[s][pick[s]]) {
                    st.sampled.push_back({pool[s].docs[i].first, pool[s].docs[i].second});
                }
                strata.push_back(std::move(st));
            }
            samples.push_back(std::move(strata));
            return;
        }
        for (std::size_t i = 0; i < per[level].size(); ++i) {
            pick[level] = i;
            rec(level + 1);
        }
    };
    rec(0);
    return samples;
}

Expectation oracle_estimate(const std::vector<std::string>& ranking,
                            const std::vector<eval::Stratum>& strata, std::size_t depth)
{
    Expectation e;
    e.samples = 1;
    std::size_t limit = std::min(depth, ranking.size());
    for (const auto& s : strata) {
        double inflate = static_cast<double>(s.pool_size) / static_cast<double>(s.sampled.size());
        for (const auto& d : s.sampled) {
            if (d.grade == 1) {
                e.count_grade1 += inflate;
            } else if (d.grade == 2) {
                e.count_grade2 += inflate;
            }
            for (std::size_t r = 0; r < limit; ++r) {
                if (ranking[r] == d.doc_id) {
                    e.dcg += d.grade * inflate * disc(r + 1);
                }
            }
        }
    }
    return e;
}

double oracle_inf_ndcg(const std::vector<std::string>& ranking,
                       const std::vector<eval::Stratum>& strata, std::size_t depth)
{
    auto e = oracle_estimate(ranking, strata, depth);
    // Cumulative ideal gain up to position x.
    auto cumulative = [&](double x) {
        return 2.0 * std::min(x, e.count_grade2) +
               std::max(0.0, std::min(x, e.count_grade2 + e.count_grade1) - e.count_grade2);
    };
    double ideal = 0.0;
    for (std::size_t r = 1; r <= depth; ++r) {
        double g = cumulative(static_cast<double>(r)) - cumulative(static_cast<double>(r - 1));
        if (g <= 0.0) {
            break;
        }
        ideal += g * disc(r);
    }
    return ideal == 0.0 ? 0.0 : std::clamp(e.dcg / ideal, 0.0, 1.0);
}

Expectation expected_estimate(const std::vector<std::string>& ranking,
                              const std::vector<PoolStratum>& pool, std::size_t depth)
{
    Expectation sum;
    for (const auto& sample : all_samples(pool)) {
        auto e = oracle_estimate(ranking, sample, depth);
        sum.dcg += e.dcg;
        sum.count_grade1 += e.count_grade1;
        sum.count_grade2 += e.count_grade2;
        ++sum.samples;
    }
    double n = static_cast<double>(sum.samples);
    sum.dcg /= n;
    sum.count_grade1 /= n;
    sum.count_grade2 /= n;
    return sum;
}

double true_dcg(const std::vector<std::string>& ranking, const std::vector<PoolStratum>& pool,
                std::size_t depth)
{
    std::map<std::string, int> grade;
    for (const auto& s : pool) {
        for (const auto& [doc, g] : s.docs) {
            grade[doc] = g;
        }
    }
    double dcg = 0.0;
    for (std::size_t r = 0; r < ranking.size() && r < depth; ++r) {
        auto it = grade.find(ranking[r]);
        if (it != grade.end()) {
            dcg += it->second * disc(r + 1);
        }
    }
    return dcg;
}

}  // namespace pmsearch::testkit
