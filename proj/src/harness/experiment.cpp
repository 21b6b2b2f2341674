#include "pmsearch/harness/experiment.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "pmsearch/error.hpp"
#include "pmsearch/index/corpus_io.hpp"
#include "pmsearch/topics/settings.hpp"

namespace pmsearch::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path existing(const fs::path& base, const std::string& relative, const std::string& source)
{
    fs::path p = base / relative;
    if (!fs::exists(p)) {
        throw ParseError(fmt::format("{}: no such file {}", source, p.string()));
    }
    return p;
}

}  // namespace

ExperimentManifest read_experiment_manifest(const std::string& path)
{
    static const std::set<std::string> kKeys{
        "task", "corpus", "topics", "lexicon", "qrels", "sampled_qrels", "param_space",
        "ablation_groups", "folds", "seed", "budget", "depth", "iterations", "starts"};
    ExperimentManifest m;
    m.base_dir = fs::path(path).parent_path();
    try {
        json j = json::parse(slurp(path));
        if (!j.is_object()) {
            throw ParseError(path + ": expected a JSON object");
        }
        for (const auto& [key, value] : j.items()) {
            if (!kKeys.count(key)) {
                throw ParseError(fmt::format("{}: unknown key {}", path, key));
            }
        }
        auto task = topics::parse_task(j.at("task").get<std::string>());
        if (!task) {
            throw ParseError(fmt::format("{}: unknown task {}", path, j.at("task").dump()));
        }
        m.task = *task;
        auto file = [&](const char* key) { return existing(m.base_dir, j.at(key).get<std::string>(), path); };
        m.corpus = file("corpus");
        m.topics = file("topics");
        m.lexicon = file("lexicon");
        if (j.contains("qrels")) {
            m.qrels = file("qrels");
        }
        if (j.contains("sampled_qrels")) {
            m.sampled_qrels = file("sampled_qrels");
        }
        if (m.qrels.has_value() == m.sampled_qrels.has_value()) {
            throw ParseError(path + ": give exactly one of qrels and sampled_qrels");
        }
        if (j.contains("param_space")) {
            m.param_space = file("param_space");
        }
        m.ablation_groups = j.contains("ablation_groups")
                                ? file("ablation_groups")
                                : fs::path(topics::data_dir()) / "ablation_groups.json";
        m.folds = j.value("folds", m.folds);
        m.seed = j.value("seed", m.seed);
        m.budget = j.value("budget", m.budget);
        m.depth = j.value("depth", m.depth);
        m.iterations = j.value("iterations", m.iterations);
        if (j.contains("starts")) {
            m.starts = j.at("starts").get<std::vector<std::string>>();
        }
        if (m.starts.empty() || m.budget < m.starts.size()) {
            throw ParseError(path + ": need 1 <= starts <= budget");
        }
        if (m.depth == 0 || m.depth > eval::kMaxRunDepth) {
            throw ParseError(fmt::format("{}: depth must be in [1, {}]", path, eval::kMaxRunDepth));
        }
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return m;
}

RetrievalData load_data(const ExperimentManifest& m)
{
    if (m.param_space) {
        auto space = optim::read_space_file(m.param_space->string());
        if (!(space == topics::retrieval_space())) {
            throw InvalidArgument(m.param_space->string() + " differs from the retrieval parameter space");
        }
    }
    RetrievalData data;
    data.index = index::Index::build(index::read_corpus_file(m.corpus.string()));
    data.topics = topics::read_topics_file(m.topics.string());
    data.lexicon = topics::read_lexicon_file(m.lexicon.string());
    data.task = m.task;
    data.judgments = m.sampled_qrels ? eval::read_sampled_qrels_file(m.sampled_qrels->string())
                                     : fully_sampled(eval::read_qrels_file(m.qrels->string()));
    data.depth = m.depth;
    return data;
}

optim::Configuration resolve_start(const ExperimentManifest& m, const std::string& start)
{
    if (start == "defaults") {
        return topics::retrieval_space().defaults();
    }
    if (start == "starting") {
        return topics::starting_configuration();
    }
    if (fs::exists(fs::path(topics::data_dir()) / "presets" / (start + ".json"))) {
        return topics::load_preset(start);
    }
    return optim::read_config_file(existing(m.base_dir, start, "starts").string(), topics::retrieval_space());
}

std::string write_fold_plan_json(const FoldPlan& plan)
{
    json assignments = json::object();
    for (const auto& [topic, fold] : plan.assignments) {
        assignments[std::to_string(topic)] = fold;
    }
    json j;
    j["k"] = plan.k;
    j["assignments"] = assignments;
    return j.dump(2) + "\n";
}

FoldPlan read_fold_plan_json(const std::string& text, const std::string& source)
{
    FoldPlan plan;
    try {
        json j = json::parse(text);
        plan.k = j.at("k").get<std::size_t>();
        for (const auto& [topic, fold] : j.at("assignments").items()) {
            std::size_t f = fold.get<std::size_t>();
            if (f >= plan.k) {
                throw ParseError(fmt::format("{}: topic {} in fold {} of {}", source, topic, f, plan.k));
            }
            plan.assignments[std::stoi(topic)] = f;
        }
    } catch (const json::exception& e) {
        throw ParseError(source + ": " + e.what());
    } catch (const std::invalid_argument&) {
        throw ParseError(source + ": topic keys must be integers");
    }
    return plan;
}

}  // namespace pmsearch::harness
