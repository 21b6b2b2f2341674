#include "pmsearch/harness/ablation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "pmsearch/error.hpp"
#include "pmsearch/eval/significance.hpp"
#include "pmsearch/harness/parallel.hpp"

namespace pmsearch::harness {

using optim::Configuration;
using optim::ParamKind;
using optim::ParamSpace;
using optim::ParamValue;
using nlohmann::json;

namespace {

ParamValue value_from_json(const json& j, const optim::Parameter& p, const std::string& source)
{
    switch (p.kind) {
    case ParamKind::binary:
        if (j.is_boolean()) {
            return j.get<bool>();
        }
        break;
    case ParamKind::numeric:
        if (j.is_number()) {
            return j.get<double>();
        }
        break;
    case ParamKind::categorical:
        if (j.is_string()) {
            return j.get<std::string>();
        }
        break;
    }
    throw ParseError(fmt::format("{}: bad value for {}", source, p.name));
}

}  // namespace

AblationManifest read_ablation_manifest(const std::string& json_text, const ParamSpace& space,
                                        const std::string& source)
{
    AblationManifest manifest;
    std::set<std::string> ids;
    try {
        json root = json::parse(json_text);
        for (const auto& section : root.at("sections")) {
            std::string section_name = section.value("name", "");
            for (const auto& g : section.at("groups")) {
                AblationGroup group;
                group.id = g.at("id").get<std::string>();
                group.label = g.value("label", group.id);
                group.section = section_name;
                std::string sign = g.value("sign", "disable");
                if (sign == "disable") {
                    group.sign = Sign::disable;
                } else if (sign == "enable") {
                    group.sign = Sign::enable;
                } else {
                    throw ParseError(fmt::format("{}: group {}: bad sign {}", source, group.id, sign));
                }
                if (!ids.insert(group.id).second) {
                    throw ParseError(fmt::format("{}: duplicate group {}", source, group.id));
                }
                for (const auto& o : g.at("overrides")) {
                    std::vector<const optim::Parameter*> targets;
                    if (o.contains("parameter")) {
                        auto name = o.at("parameter").get<std::string>();
                        const auto* p = space.find(name);
                        if (!p) {
                            throw ParseError(fmt::format("{}: group {}: unknown parameter {}", source,
                                                         group.id, name));
                        }
                        targets.push_back(p);
                    } else {
                        auto prefix = o.at("prefix").get<std::string>();
                        for (const auto& p : space.parameters()) {
                            if (!prefix.empty() && p.name.starts_with(prefix)) {
                                targets.push_back(&p);
                            }
                        }
                        if (targets.empty()) {
                            throw ParseError(fmt::format("{}: group {}: prefix '{}' matches no parameter",
                                                         source, group.id, prefix));
                        }
                    }
                    for (const auto* p : targets) {
                        Override ov{p->name, std::nullopt};
                        if (o.contains("value")) {
                            ov.value = value_from_json(o.at("value"), *p, source);
                            try {
                                p->check(*ov.value);
                            } catch (const InvalidArgument& e) {
                                throw ParseError(fmt::format("{}: group {}: {}", source, group.id, e.what()));
                            }
                        }
                        group.overrides.push_back(std::move(ov));
                    }
                }
                manifest.groups.push_back(std::move(group));
            }
        }
        if (root.contains("reduced_model")) {
            for (const auto& [task, list] : root.at("reduced_model").items()) {
                auto& marked = manifest.reduced_model[task];
                for (const auto& id : list) {
                    auto name = id.get<std::string>();
                    if (!ids.count(name)) {
                        throw ParseError(fmt::format("{}: reduced model for {} names unknown group {}",
                                                     source, task, name));
                    }
                    marked.push_back(name);
                }
            }
        }
    } catch (const json::exception& e) {
        throw ParseError(source + ": " + e.what());
    }
    return manifest;
}

AblationManifest read_ablation_manifest_file(const std::string& path, const ParamSpace& space)
{
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return read_ablation_manifest(buffer.str(), space, path);
}

void validate_group(const AblationGroup& group, const ParamSpace& space)
{
    for (const auto& o : group.overrides) {
        const auto* p = space.find(o.parameter);
        if (!p) {
            throw InvalidArgument(fmt::format("group {}: unknown parameter {}", group.id, o.parameter));
        }
        if (o.value) {
            p->check(*o.value);
        }
    }
}

Configuration apply_group(const Configuration& config, const AblationGroup& group,
                          const ParamSpace& space)
{
    validate_group(group, space);
    Configuration out = config;
    for (const auto& o : group.overrides) {
        out.set(o.parameter, o.value ? *o.value : space.find(o.parameter)->default_value);
    }
    return out;
}

Configuration reduced_model(const Configuration& config, const std::vector<AblationGroup>& groups,
                            const std::vector<std::string>& marked, const ParamSpace& space)
{
    std::set<std::string> keep_groups(marked.begin(), marked.end());
    std::set<std::string> keep_params;
    for (const auto& g : groups) {
        if (keep_groups.count(g.id)) {
            for (const auto& o : g.overrides) {
                keep_params.insert(o.parameter);
            }
        }
    }
    Configuration out = config;
    for (const auto& g : groups) {
        validate_group(g, space);
        if (g.sign != Sign::disable || keep_groups.count(g.id)) {
            continue;
        }
        for (const auto& o : g.overrides) {
            if (!keep_params.count(o.parameter)) {
                out.set(o.parameter, o.value ? *o.value : space.find(o.parameter)->default_value);
            }
        }
    }
    return out;
}

double ablation_score(const std::vector<double>& split_scores)
{
    if (split_scores.empty()) {
        throw InvalidArgument("ablation score needs at least one split");
    }
    return std::accumulate(split_scores.begin(), split_scores.end(), 0.0) /
           static_cast<double>(split_scores.size());
}

std::string significance_stars(double p_value)
{
    if (p_value < 0.001) {
        return "***";
    }
    if (p_value < 0.01) {
        return "**";
    }
    if (p_value < 0.05) {
        return "*";
    }
    return "";
}

AblationReport run_ablation(const FoldPlan& plan, const std::vector<Configuration>& best_configs,
                            const std::vector<AblationGroup>& groups,
                            const std::vector<std::string>& marked, const FoldEvaluator& evaluator,
                            const ParamSpace& space, const AblationSettings& settings)
{
    if (best_configs.size() != plan.k) {
        throw InvalidArgument(fmt::format("expected {} fold configurations, got {}", plan.k,
                                          best_configs.size()));
    }
    for (const auto& c : best_configs) {
        space.validate(c);
    }
    std::set<std::string> ids;
    for (const auto& g : groups) {
        validate_group(g, space);
        if (!ids.insert(g.id).second) {
            throw InvalidArgument("duplicate group " + g.id);
        }
    }
    for (const auto& m : marked) {
        if (!ids.count(m)) {
            throw InvalidArgument("reduced model names unknown group " + m);
        }
    }

    // Variant 0 is the baseline, then one per group, then the reduced model.
    const std::size_t variants = 1 + groups.size() + (groups.empty() ? 0 : 1);
    auto variant_config = [&](std::size_t v, std::size_t fold) {
        const auto& base = best_configs[fold];
        if (v == 0) {
            return base;
        }
        if (v <= groups.size()) {
            return apply_group(base, groups[v - 1], space);
        }
        return reduced_model(base, groups, marked, space);
    };
    std::vector<std::map<eval::TopicId, double>> results(variants * plan.k);
    parallel_for(results.size(), settings.jobs, [&](std::size_t i) {
        std::size_t v = i / plan.k, fold = i % plan.k;
        results[i] = evaluator(variant_config(v, fold), fold);
    });

    auto make_row = [&](std::size_t v) {
        AblationRow row;
        for (std::size_t fold = 0; fold < plan.k; ++fold) {
            const auto& scores = results[v * plan.k + fold];
            if (scores.empty()) {
                throw InvalidArgument(fmt::format("fold {} returned no topic scores", fold));
            }
            double sum = 0.0;
            for (const auto& [topic, s] : scores) {
                sum += s;
                if (!row.topic_scores.emplace(topic, s).second) {
                    throw InvalidArgument(fmt::format("topic {} scored in two folds", topic));
                }
            }
            row.fold_scores.push_back(sum / static_cast<double>(scores.size()));
        }
        row.score = ablation_score(row.fold_scores);
        return row;
    };

    AblationReport report;
    report.baseline = make_row(0);
    report.baseline.id = "baseline";
    report.baseline.label = "Optimized model (baseline)";
    const double baseline = report.baseline.score;
    auto finish = [&](AblationRow& row) {
        row.delta_percent = baseline == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                            : (row.score - baseline) / baseline * 100.0;
        row.p_value = eval::approx_randomization_test(row.topic_scores, report.baseline.topic_scores,
                                                      settings.iterations, settings.seed)
                          .p_value;
        row.stars = significance_stars(row.p_value);
    };
    std::set<std::string> marked_set(marked.begin(), marked.end());
    for (std::size_t g = 0; g < groups.size(); ++g) {
        auto row = make_row(g + 1);
        row.id = groups[g].id;
        row.label = groups[g].label;
        row.section = groups[g].section;
        row.marked = marked_set.count(row.id) > 0;
        finish(row);
        report.rows.push_back(std::move(row));
    }
    if (!groups.empty()) {
        auto row = make_row(variants - 1);
        row.id = "reduced_model";
        row.label = "Reduced model";
        finish(row);
        report.reduced = std::move(row);
    }
    return report;
}

void write_ablation_csv(std::ostream& out, const AblationReport& report)
{
    out << "group,score,delta_percent,p_value,stars\n";
    out << fmt::format("{},{},,,\n", report.baseline.id, report.baseline.score);
    auto line = [&](const AblationRow& r) {
        out << fmt::format("{},{},{},{},{}\n", r.id, r.score, r.delta_percent, r.p_value, r.stars);
    };
    for (const auto& r : report.rows) {
        line(r);
    }
    if (report.reduced) {
        line(*report.reduced);
    }
}

void write_ablation_text(std::ostream& out, const AblationReport& report)
{
    constexpr int kLabel = 34;
    out << fmt::format("{:<{}}{:<12}{}\n", "Configuration", kLabel, "infNDCG", "Difference");
    out << fmt::format("{:<{}}{:.4f}\n", report.baseline.label, kLabel, report.baseline.score);
    auto line = [&](const AblationRow& r, const std::string& label) {
        out << fmt::format("{:<{}}{:<12}{:+.2f}%{}\n", label, kLabel,
                           fmt::format("{:.4f}{}", r.score, r.stars), r.delta_percent,
                           r.marked ? " †" : "");
    };
    std::string section;
    for (const auto& r : report.rows) {
        if (r.section != section) {
            section = r.section;
            if (!section.empty()) {
                out << section << '\n';
            }
        }
        line(r, section.empty() ? r.label : "  " + r.label);
    }
    if (report.reduced) {
        line(*report.reduced, "Reduced model (marked †)");
    }
}

void write_topic_scores_csv(std::ostream& out, const AblationReport& report)
{
    out << "configuration,topic,score\n";
    auto rows = [&](const AblationRow& r) {
        for (const auto& [topic, score] : r.topic_scores) {
            out << fmt::format("{},{},{}\n", r.id, topic, score);
        }
    };
    rows(report.baseline);
    for (const auto& r : report.rows) {
        rows(r);
    }
    if (report.reduced) {
        rows(*report.reduced);
    }
}

}  // namespace pmsearch::harness
