#include "pmsearch/eval/significance.hpp"

#include <cmath>
#include <vector>

#include "pmsearch/error.hpp"

namespace pmsearch::eval {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

bool swap_bit(std::uint64_t seed, TopicId topic, std::uint64_t iteration)
{
    auto t = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(static_cast<std::int64_t>(topic))));
    return (splitmix64(t ^ splitmix64(iteration + 0x632be59bd9b4e019ULL)) >> 63) != 0;
}

RandomizationResult approx_randomization_test(const std::map<TopicId, double>& a,
                                              const std::map<TopicId, double>& b,
                                              std::size_t iterations, std::uint64_t seed)
{
    if (iterations == 0) {
        throw InvalidArgument("randomization test needs at least one iteration");
    }
    if (a.size() != b.size() || a.empty()) {
        throw InvalidArgument("randomization test needs the same non-empty topic set");
    }
    std::vector<TopicId> topics;
    std::vector<double> diff;
    auto ib = b.begin();
    for (const auto& [topic, score] : a) {
        if (ib->first != topic) {
            throw InvalidArgument("topic " + std::to_string(topic) + " missing from one system");
        }
        topics.push_back(topic);
        diff.push_back(score - ib->second);
        ++ib;
    }
    const double n = static_cast<double>(diff.size());
    double total = 0.0;
    for (double d : diff) {
        total += d;
    }
    RandomizationResult r;
    r.iterations = iterations;
    r.observed = std::fabs(total) / n;
    std::size_t at_least = 0;
    for (std::size_t it = 0; it < iterations; ++it) {
        double sum = 0.0;
        for (std::size_t i = 0; i < diff.size(); ++i) {
            sum += swap_bit(seed, topics[i], it) ? -diff[i] : diff[i];
        }
        if (std::fabs(sum) / n >= r.observed) {
            ++at_least;
        }
    }
    r.p_value = static_cast<double>(at_least + 1) / static_cast<double>(iterations + 1);
    return r;
}

}  // namespace pmsearch::eval
