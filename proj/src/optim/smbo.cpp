#include "pmsearch/optim/smbo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "pmsearch/error.hpp"

namespace pmsearch::optim {

double expected_improvement(double mu, double sigma, double best)
{
    if (sigma < 0.0) {
        throw InvalidArgument("expected improvement needs sigma >= 0");
    }
    double gap = mu - best;
    if (sigma == 0.0) {
        return std::max(gap, 0.0);
    }
    double z = gap / sigma;
    double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
    double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
    return std::max(gap * cdf + sigma * pdf, 0.0);
}

std::string_view origin_name(Origin origin)
{
    switch (origin) {
    case Origin::start: return "start";
    case Origin::model: return "model";
    case Origin::random: return "random";
    }
    return "?";
}

Configuration sample_uniform(const ParamSpace& space, std::mt19937_64& rng)
{
    Configuration c;
    for (const auto& p : space.parameters()) {
        switch (p.kind) {
        case ParamKind::binary: c.set(p.name, std::bernoulli_distribution(0.5)(rng)); break;
        case ParamKind::categorical:
            c.set(p.name,
                  p.choices[std::uniform_int_distribution<std::size_t>(0, p.choices.size() - 1)(rng)]);
            break;
        case ParamKind::numeric: c.set(p.name, std::uniform_real_distribution<double>(p.lo, p.hi)(rng)); break;
        }
    }
    return c;
}

std::vector<Configuration> one_exchange_neighbors(const Configuration& config,
                                                  const ParamSpace& space, std::mt19937_64& rng,
                                                  const SmboSettings& settings)
{
    std::vector<Configuration> out;
    for (const auto& p : space.parameters()) {
        const auto& v = config.at(p.name);
        switch (p.kind) {
        case ParamKind::binary: {
            auto n = config;
            n.set(p.name, !std::get<bool>(v));
            out.push_back(std::move(n));
            break;
        }
        case ParamKind::categorical:
            for (const auto& c : p.choices) {
                if (c != std::get<std::string>(v)) {
                    auto n = config;
                    n.set(p.name, c);
                    out.push_back(std::move(n));
                }
            }
            break;
        case ParamKind::numeric: {
            std::normal_distribution<double> step(0.0, settings.numeric_sigma * (p.hi - p.lo));
            for (std::size_t k = 0; k < settings.numeric_neighbors; ++k) {
                double x = std::clamp(std::get<double>(v) + step(rng), p.lo, p.hi);
                if (x != std::get<double>(v)) {
                    auto n = config;
                    n.set(p.name, x);
                    out.push_back(std::move(n));
                }
            }
            break;
        }
        }
    }
    return out;
}

namespace {

bool seen(const std::vector<Observation>& history, const Configuration& c)
{
    return std::any_of(history.begin(), history.end(),
                       [&](const Observation& o) { return o.config == c; });
}

double best_score(const std::vector<Observation>& history)
{
    double best = history.front().score;
    for (const auto& o : history) {
        best = std::max(best, o.score);
    }
    return best;
}

/// Slot range of each parameter in encode() vectors.
struct Slots {
    std::size_t offset;
    std::size_t width;
};

std::vector<Slots> slot_layout(const ParamSpace& space)
{
    std::vector<Slots> out;
    std::size_t offset = 0;
    for (const auto& p : space.parameters()) {
        std::size_t w = p.kind == ParamKind::categorical ? p.choices.size() : 1;
        out.push_back({offset, w});
        offset += w;
    }
    return out;
}

/// Local search runs on encoded vectors; a candidate is turned back into a
/// configuration by overwriting only the parameters whose slots changed, so
/// untouched numeric values stay bit-identical to the start.
struct Candidate {
    std::size_t base;  // index into the start configurations
    std::vector<double> x;
    double ei;
};

Configuration decode(const Candidate& c, const std::vector<Configuration>& bases,
                     const std::vector<std::vector<double>>& base_x, const ParamSpace& space,
                     const std::vector<Slots>& slots)
{
    Configuration out = bases[c.base];
    const auto& ref = base_x[c.base];
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const auto& p = space.parameters()[i];
        auto [o, w] = slots[i];
        if (std::equal(c.x.begin() + static_cast<long>(o), c.x.begin() + static_cast<long>(o + w),
                       ref.begin() + static_cast<long>(o))) {
            continue;
        }
        switch (p.kind) {
        case ParamKind::binary: out.set(p.name, c.x[o] == 1.0); break;
        case ParamKind::categorical:
            for (std::size_t k = 0; k < w; ++k) {
                if (c.x[o + k] == 1.0) {
                    out.set(p.name, p.choices[k]);
                }
            }
            break;
        case ParamKind::numeric:
            out.set(p.name, std::clamp(p.lo + c.x[o] * (p.hi - p.lo), p.lo, p.hi));
            break;
        }
    }
    return out;
}

}  // namespace

Configuration suggest_next(const ForestModel& model, const ParamSpace& space,
                           const std::vector<Observation>& history, std::mt19937_64& rng,
                           const SmboSettings& settings)
{
    if (history.empty()) {
        throw InvalidArgument("suggest_next needs at least one observation");
    }
    const double best = best_score(history);
    auto ei = [&](const std::vector<double>& x) {
        auto p = model.predict(x);
        return expected_improvement(p.mean, std::sqrt(p.variance), best);
    };
    const auto slots = slot_layout(space);

    // Local search starts: observations by descending score, earliest first on ties.
    std::vector<std::size_t> order(history.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return history[a].score > history[b].score;
    });
    std::vector<Configuration> bases;
    std::vector<std::vector<double>> base_x;
    for (std::size_t s = 0; s < std::min(settings.local_search_starts, order.size()); ++s) {
        bases.push_back(history[order[s]].config);
        base_x.push_back(encode(bases.back(), space));
    }
    for (std::size_t i = 0; i < settings.random_candidates; ++i) {
        bases.push_back(sample_uniform(space, rng));
        base_x.push_back(encode(bases.back(), space));
    }

    std::vector<Candidate> candidates;
    const std::size_t local = std::min(settings.local_search_starts, order.size());
    for (std::size_t s = 0; s < local; ++s) {
        std::vector<double> current = base_x[s];
        double current_ei = ei(current);
        for (std::size_t step = 0; step < settings.local_search_steps; ++step) {
            std::vector<double> best_move;
            double best_ei = current_ei;
            std::vector<double> n = current;
            auto consider = [&] {
                double v = ei(n);
                if (v > best_ei) {
                    best_ei = v;
                    best_move = n;
                }
            };
            for (std::size_t i = 0; i < slots.size(); ++i) {
                const auto& p = space.parameters()[i];
                auto [o, w] = slots[i];
                switch (p.kind) {
                case ParamKind::binary:
                    n[o] = 1.0 - current[o];
                    consider();
                    n[o] = current[o];
                    break;
                case ParamKind::categorical:
                    for (std::size_t k = 0; k < w; ++k) {
                        if (current[o + k] == 1.0) {
                            continue;
                        }
                        std::fill(n.begin() + static_cast<long>(o), n.begin() + static_cast<long>(o + w), 0.0);
                        n[o + k] = 1.0;
                        consider();
                        std::copy(current.begin() + static_cast<long>(o),
                                  current.begin() + static_cast<long>(o + w),
                                  n.begin() + static_cast<long>(o));
                    }
                    break;
                case ParamKind::numeric: {
                    std::normal_distribution<double> step_dist(0.0, settings.numeric_sigma);
                    for (std::size_t k = 0; k < settings.numeric_neighbors; ++k) {
                        n[o] = std::clamp(current[o] + step_dist(rng), 0.0, 1.0);
                        if (n[o] != current[o]) {
                            consider();
                        }
                    }
                    n[o] = current[o];
                    break;
                }
                }
            }
            if (best_move.empty()) {
                break;
            }
            current = std::move(best_move);
            current_ei = best_ei;
        }
        candidates.push_back({s, std::move(current), current_ei});
    }
    for (std::size_t i = local; i < bases.size(); ++i) {
        candidates.push_back({i, base_x[i], ei(base_x[i])});
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.ei > b.ei; });
    for (const auto& c : candidates) {
        auto config = decode(c, bases, base_x, space, slots);
        if (!seen(history, config)) {
            return config;
        }
    }
    return sample_uniform(space, rng);
}

Smbo::Smbo(ParamSpace space, std::vector<Configuration> starts, std::uint64_t seed,
           SmboSettings settings)
    : space_(std::move(space)), starts_(std::move(starts)), settings_(settings), rng_(seed),
      seed_(seed)
{
    if (starts_.empty()) {
        throw InvalidArgument("optimization needs at least one starting configuration");
    }
    for (const auto& s : starts_) {
        space_.validate(s);
    }
}

std::pair<Configuration, Origin> Smbo::ask()
{
    if (next_start_ < starts_.size()) {
        return {starts_[next_start_++], Origin::start};
    }
    // A forest needs two observations; the draw made before that does not
    // consume a slot in the model/random alternation.
    if (history_.size() >= 2 && suggestions_++ % 2 == 0) {
        std::vector<std::vector<double>> x;
        std::vector<double> y;
        for (const auto& o : history_) {
            x.push_back(encode(o.config, space_));
            y.push_back(o.score);
        }
        auto model = ForestModel::fit(x, y, settings_.forest, seed_ ^ (history_.size() * 0x9e3779b97f4a7c15ULL));
        return {suggest_next(model, space_, history_, rng_, settings_), Origin::model};
    }
    for (int attempt = 0; attempt < 100; ++attempt) {
        auto c = sample_uniform(space_, rng_);
        if (!seen(history_, c)) {
            return {std::move(c), Origin::random};
        }
    }
    return {sample_uniform(space_, rng_), Origin::random};
}

void Smbo::tell(Configuration config, double score, Origin origin, bool failed)
{
    space_.validate(config);
    history_.push_back({std::move(config), score, history_.size() + 1, origin, failed});
}

const Observation& Smbo::best() const
{
    if (history_.empty()) {
        throw InvalidArgument("no observations yet");
    }
    const Observation* best = &history_.front();
    for (const auto& o : history_) {
        if (o.score > best->score) {
            best = &o;
        }
    }
    return *best;
}

namespace {

std::pair<double, bool> evaluate(const Objective& objective, const Configuration& c)
{
    try {
        double s = objective(c);
        if (!std::isfinite(s)) {
            return {0.0, true};
        }
        return {s, false};
    } catch (const std::exception&) {
        return {0.0, true};
    }
}

}  // namespace

SmboResult optimize(const Objective& objective, const ParamSpace& space, std::size_t budget,
                    const std::vector<Configuration>& starts, std::uint64_t seed,
                    const SmboSettings& settings)
{
    if (starts.empty() || budget < starts.size()) {
        throw InvalidArgument("optimization needs budget >= number of starts >= 1");
    }
    Smbo smbo(space, starts, seed, settings);
    for (std::size_t i = 0; i < budget; ++i) {
        auto [config, origin] = smbo.ask();
        auto [score, failed] = evaluate(objective, config);
        smbo.tell(std::move(config), score, origin, failed);
    }
    return {smbo.best(), smbo.history()};
}

SmboResult random_search(const Objective& objective, const ParamSpace& space, std::size_t budget,
                         const std::vector<Configuration>& starts, std::uint64_t seed)
{
    if (budget < starts.size()) {
        throw InvalidArgument("budget below number of starts");
    }
    std::mt19937_64 rng(seed);
    SmboResult r;
    for (std::size_t i = 0; i < budget; ++i) {
        bool is_start = i < starts.size();
        auto c = is_start ? starts[i] : sample_uniform(space, rng);
        auto [score, failed] = evaluate(objective, c);
        r.history.push_back({std::move(c), score, i + 1, is_start ? Origin::start : Origin::random, failed});
    }
    if (!r.history.empty()) {
        r.best = r.history.front();
        for (const auto& o : r.history) {
            if (o.score > r.best.score) {
                r.best = o;
            }
        }
    }
    return r;
}

void write_trace_csv(std::ostream& out, const std::vector<Observation>& history)
{
    out << "eval_index,score,best_so_far\n";
    double best = 0.0;
    for (std::size_t i = 0; i < history.size(); ++i) {
        const auto& o = history[i];
        best = i == 0 ? o.score : std::max(best, o.score);
        out << fmt::format("{},{},{}\n", o.eval_index, o.score, best);
    }
}

}  // namespace pmsearch::optim
