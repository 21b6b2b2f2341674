#include <gtest/gtest.h>

#include <sstream>

#include <fmt/format.h>

#include "pmsearch/error.hpp"
#include "pmsearch/harness/ablation.hpp"
#include "pmsearch/topics/settings.hpp"
#include "stub_objective.hpp"

using namespace pmsearch;
using namespace pmsearch::harness;
using namespace pmsearch::testkit;
using optim::Configuration;

namespace {

std::vector<topics::Topic> numbered_topics(int n)
{
    std::vector<topics::Topic> out;
    for (int i = 1; i <= n; ++i) {
        topics::Topic t;
        t.number = i;
        t.disease = "d" + std::to_string(i % 4);
        t.gene = "G" + std::to_string(i % 3);
        out.push_back(t);
    }
    return out;
}

AblationGroup group(std::string id, std::vector<Override> overrides, Sign sign = Sign::disable)
{
    return {id, "-" + id, "Stub", sign, std::move(overrides)};
}

std::vector<AblationGroup> stub_groups()
{
    return {group("x", {{"feature.x", std::nullopt}}), group("y", {{"feature.y", false}}),
            group("z", {{"weight.z", std::nullopt}}), group("mode", {{"mode", std::nullopt}})};
}

/// Spreadsheet-style recomputation: per-fold means, then their mean.
double oracle_score(const FoldPlan& plan, const std::vector<Configuration>& configs)
{
    double total = 0.0;
    for (std::size_t f = 0; f < plan.k; ++f) {
        double sum = 0.0;
        auto test = plan.test_topics(f);
        for (int t : test) {
            sum += stub_topic_score(configs[f], t);
        }
        total += sum / static_cast<double>(test.size());
    }
    return total / static_cast<double>(plan.k);
}

struct Fixture {
    FoldPlan plan = stratified_folds(numbered_topics(20), 4, 3);
    optim::ParamSpace space = stub_space();
    std::vector<Configuration> best = std::vector<Configuration>(4, stub_optimized());
};

}  // namespace

TEST(AblationScore, MeanOfSplits)
{
    EXPECT_NEAR(ablation_score({0.5, 0.6, 0.7}), 0.6, 1e-15);
    EXPECT_EQ(ablation_score({0.25, 0.25, 0.25}), 0.25);
    EXPECT_THROW(ablation_score({}), InvalidArgument);
}

TEST(AblationScore, Stars)
{
    EXPECT_EQ(significance_stars(0.2), "");
    EXPECT_EQ(significance_stars(0.04), "*");
    EXPECT_EQ(significance_stars(0.005), "**");
    EXPECT_EQ(significance_stars(0.0005), "***");
}

TEST(Ablation, MatchesOracleMeansExactly)
{
    Fixture fx;
    fx.best[1].set("weight.z", 1.2);  // folds need not agree
    auto groups = stub_groups();
    auto report = run_ablation(fx.plan, fx.best, groups, {"x"}, stub_evaluator(fx.plan), fx.space,
                               {1000, 5, 1});
    EXPECT_EQ(report.baseline.score, oracle_score(fx.plan, fx.best));
    ASSERT_EQ(report.rows.size(), groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) {
        std::vector<Configuration> ablated;
        for (const auto& c : fx.best) {
            ablated.push_back(apply_group(c, groups[g], fx.space));
        }
        const auto& row = report.rows[g];
        EXPECT_EQ(row.id, groups[g].id);
        EXPECT_EQ(row.score, oracle_score(fx.plan, ablated));
        EXPECT_EQ(row.delta_percent,
                  (row.score - report.baseline.score) / report.baseline.score * 100.0);
    }
}

TEST(Ablation, DisablingXSubtractsItsContribution)
{
    Fixture fx;
    auto report = run_ablation(fx.plan, fx.best, stub_groups(), {}, stub_evaluator(fx.plan), fx.space,
                               {2000, 5, 1});
    const auto& x = report.rows[0];
    EXPECT_NEAR(x.score, report.baseline.score - 0.1, 1e-12);
    EXPECT_NEAR(x.delta_percent, -0.1 / report.baseline.score * 100.0, 1e-9);
    EXPECT_LT(x.p_value, 0.001);
    EXPECT_EQ(x.stars, "***");
}

TEST(Ablation, DefaultValuedParameterGivesZeroDelta)
{
    Fixture fx;
    for (auto& c : fx.best) {
        c.set("weight.z", 1.0);
    }
    std::vector<AblationGroup> groups{group("z", {{"weight.z", std::nullopt}}), group("none", {})};
    auto report = run_ablation(fx.plan, fx.best, groups, {}, stub_evaluator(fx.plan), fx.space);
    for (const auto& row : report.rows) {
        EXPECT_EQ(row.score, report.baseline.score);
        EXPECT_EQ(row.delta_percent, 0.0);
        EXPECT_EQ(row.p_value, 1.0);
    }
}

TEST(Ablation, ReducedModelLiesBetweenDefaultAndOptimized)
{
    Fixture fx;
    auto groups = stub_groups();
    auto report = run_ablation(fx.plan, fx.best, groups, {"x", "z"}, stub_evaluator(fx.plan), fx.space);
    ASSERT_TRUE(report.reduced.has_value());
    std::vector<Configuration> defaults(fx.plan.k, fx.space.defaults());
    double default_score = oracle_score(fx.plan, defaults);
    EXPECT_GE(report.reduced->score, default_score);
    EXPECT_LE(report.reduced->score, report.baseline.score);
    EXPECT_GT(report.reduced->score, default_score);
    EXPECT_LT(report.reduced->score, report.baseline.score);
}

TEST(ReducedModel, Extremes)
{
    auto space = stub_space();
    auto groups = stub_groups();
    auto best = stub_optimized();
    EXPECT_EQ(reduced_model(best, groups, {}, space), space.defaults());
    EXPECT_EQ(reduced_model(best, groups, {"x", "y", "z", "mode"}, space), best);
    auto partial = reduced_model(best, groups, {"x"}, space);
    EXPECT_TRUE(partial.flag("feature.x"));
    EXPECT_FALSE(partial.flag("feature.y"));
}

TEST(ReducedModel, MarkedGroupWinsOverlapsAndEnablersNeverApply)
{
    auto space = stub_space();
    auto best = stub_optimized();
    std::vector<AblationGroup> groups{
        group("everything", {{"feature.x", std::nullopt}, {"feature.y", std::nullopt}}),
        group("x", {{"feature.x", std::nullopt}}),
        group("plus_mode", {{"mode", std::string("plain")}}, Sign::enable)};
    auto r = reduced_model(best, groups, {"x"}, space);
    EXPECT_TRUE(r.flag("feature.x"));
    EXPECT_FALSE(r.flag("feature.y"));
    EXPECT_EQ(r.choice("mode"), "fancy");
}

TEST(Ablation, ZeroGroupsGiveBaselineOnly)
{
    Fixture fx;
    auto report = run_ablation(fx.plan, fx.best, {}, {}, stub_evaluator(fx.plan), fx.space);
    EXPECT_TRUE(report.rows.empty());
    EXPECT_FALSE(report.reduced.has_value());
    std::ostringstream csv;
    write_ablation_csv(csv, report);
    EXPECT_EQ(csv.str(), "group,score,delta_percent,p_value,stars\nbaseline," +
                             fmt::format("{}", report.baseline.score) + ",,,\n");
}

TEST(Ablation, Errors)
{
    Fixture fx;
    auto eval = stub_evaluator(fx.plan);
    EXPECT_THROW(run_ablation(fx.plan, {stub_optimized()}, {}, {}, eval, fx.space), InvalidArgument);
    EXPECT_THROW(run_ablation(fx.plan, fx.best, {group("bad", {{"nope", std::nullopt}})}, {}, eval, fx.space),
                 InvalidArgument);
    EXPECT_THROW(run_ablation(fx.plan, fx.best, stub_groups(), {"missing"}, eval, fx.space),
                 InvalidArgument);
}

TEST(Ablation, ReportsRecomputeFromTopicScoresAndIgnoreJobs)
{
    Fixture fx;
    auto groups = stub_groups();
    auto serial = run_ablation(fx.plan, fx.best, groups, {"x"}, stub_evaluator(fx.plan), fx.space,
                               {500, 9, 1});
    auto parallel = run_ablation(fx.plan, fx.best, groups, {"x"}, stub_evaluator(fx.plan), fx.space,
                                 {500, 9, 4});
    std::ostringstream a, b, ta, tb, xa, xb;
    write_ablation_csv(a, serial);
    write_ablation_csv(b, parallel);
    write_topic_scores_csv(ta, serial);
    write_topic_scores_csv(tb, parallel);
    write_ablation_text(xa, serial);
    write_ablation_text(xb, parallel);
    EXPECT_EQ(a.str(), b.str());
    EXPECT_EQ(ta.str(), tb.str());
    EXPECT_EQ(xa.str(), xb.str());

    for (const auto& row : serial.rows) {
        for (std::size_t f = 0; f < fx.plan.k; ++f) {
            double sum = 0.0;
            auto test = fx.plan.test_topics(f);
            for (int t : test) {
                sum += row.topic_scores.at(t);
            }
            EXPECT_EQ(row.fold_scores[f], sum / static_cast<double>(test.size()));
        }
    }
    EXPECT_NE(xa.str().find("Stub\n  -x"), std::string::npos);
    EXPECT_NE(xa.str().find("Reduced model"), std::string::npos);
}

TEST(AblationManifest, ParsesPrefixesAndValues)
{
    auto space = stub_space();
    auto m = read_ablation_manifest(R"({
      "sections": [
        {"name": "Features", "groups": [
          {"id": "all", "label": "-Everything", "overrides": [{"prefix": "feature."}]},
          {"id": "fancy", "label": "+Fancy", "sign": "enable",
           "overrides": [{"parameter": "mode", "value": "fancy"}]}]},
        {"name": "", "groups": [{"id": "z", "overrides": [{"parameter": "weight.z", "value": 0.5}]}]}],
      "reduced_model": {"ba": ["z"]}})",
                                    space);
    ASSERT_EQ(m.groups.size(), 3u);
    ASSERT_EQ(m.groups[0].overrides.size(), 2u);
    EXPECT_EQ(m.groups[0].overrides[1].parameter, "feature.y");
    EXPECT_EQ(m.groups[1].sign, Sign::enable);
    EXPECT_EQ(std::get<std::string>(*m.groups[1].overrides[0].value), "fancy");
    EXPECT_EQ(std::get<double>(*m.groups[2].overrides[0].value), 0.5);
    EXPECT_EQ(m.groups[2].label, "z");
    EXPECT_EQ(m.reduced_model.at("ba"), std::vector<std::string>{"z"});
}

TEST(AblationManifest, Errors)
{
    auto space = stub_space();
    auto bad = [&](const std::string& text) {
        EXPECT_THROW(read_ablation_manifest(text, space), ParseError) << text;
    };
    bad("{");
    bad(R"({"sections":[{"groups":[{"id":"a","overrides":[{"parameter":"nope"}]}]}]})");
    bad(R"({"sections":[{"groups":[{"id":"a","overrides":[{"prefix":"zzz"}]}]}]})");
    bad(R"({"sections":[{"groups":[{"id":"a","overrides":[{"parameter":"weight.z","value":7}]}]}]})");
    bad(R"({"sections":[{"groups":[{"id":"a","overrides":[]},{"id":"a","overrides":[]}]}]})");
    bad(R"({"sections":[{"groups":[{"id":"a","sign":"maybe","overrides":[]}]}]})");
    bad(R"({"sections":[],"reduced_model":{"ba":["ghost"]}})");
}

TEST(AblationManifest, ShippedManifestCoversRetrievalSpace)
{
    const auto& space = topics::retrieval_space();
    auto m = read_ablation_manifest_file(topics::data_dir() + "/ablation_groups.json", space);
    // Without marked groups the reduced model of any configuration is the
    // default configuration: every parameter belongs to a disabling group.
    auto start = topics::starting_configuration();
    for (const auto& preset : {"ba-optimal", "ct-optimal"}) {
        EXPECT_EQ(reduced_model(topics::load_preset(preset), m.groups, {}, space), space.defaults());
    }
    EXPECT_EQ(reduced_model(start, m.groups, {}, space), space.defaults());
    EXPECT_TRUE(m.reduced_model.count("ba"));
    EXPECT_TRUE(m.reduced_model.count("ct"));
}
