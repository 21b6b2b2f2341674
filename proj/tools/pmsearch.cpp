// pmsearch: index, search, evaluate, optimize and ablate from the command line.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "pmsearch/error.hpp"
#include "pmsearch/eval/metrics.hpp"
#include "pmsearch/harness/ablation.hpp"
#include "pmsearch/harness/experiment.hpp"
#include "pmsearch/harness/retrieval.hpp"
#include "pmsearch/index/corpus_io.hpp"
#include "pmsearch/synth/synth.hpp"
#include "pmsearch/topics/settings.hpp"

namespace fs = std::filesystem;
using namespace pmsearch;

namespace {

std::ofstream open_out(const fs::path& path)
{
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    return out;
}

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

/// Writes to `path`, or to stdout when it is empty or "-".
template <class F>
void emit(const std::string& path, F&& write)
{
    if (path.empty() || path == "-") {
        write(std::cout);
    } else {
        auto out = open_out(path);
        write(out);
    }
}

index::Index load_index(const std::string& snapshot, const std::string& corpus)
{
    if (!snapshot.empty()) {
        std::ifstream in(snapshot, std::ios::binary);
        if (!in) {
            throw Error("cannot open " + snapshot);
        }
        return index::Index::read_snapshot(in);
    }
    return index::Index::build(index::read_corpus_file(corpus));
}

struct ConfigOptions {
    std::string file;
    std::string preset;
    std::vector<std::string> overrides;

    void add(CLI::App* app)
    {
        auto* f = app->add_option("--config", file, "Configuration JSON (partial files are completed with defaults)");
        app->add_option("--preset", preset, "Shipped preset, e.g. ba-optimal")->excludes(f);
        app->add_option("--set", overrides, "Override name=value (repeatable)");
    }

    optim::Configuration resolve() const
    {
        const auto& space = topics::retrieval_space();
        auto config = !file.empty()     ? optim::read_config_file(file, space)
                      : !preset.empty() ? topics::load_preset(preset)
                                        : space.defaults();
        for (const auto& o : overrides) {
            optim::apply_override(config, space, o);
        }
        return config;
    }
};

topics::Task task_of(const std::string& name)
{
    auto t = topics::parse_task(name);
    if (!t) {
        throw InvalidArgument("unknown task " + name + " (expected ba or ct)");
    }
    return *t;
}

void write_eval_csv(std::ostream& out, const std::vector<eval::TopicScore>& scores)
{
    out << "topic,score\n";
    for (const auto& s : scores) {
        out << fmt::format("{},{}\n", s.topic, s.score);
    }
    out << fmt::format("mean,{}\n", scores.empty() ? 0.0 : eval::mean_over_topics(scores));
}

void write_history_csv(std::ostream& out, const std::vector<optim::Observation>& history)
{
    out << "eval_index,origin,failed,score\n";
    for (const auto& o : history) {
        out << fmt::format("{},{},{},{}\n", o.eval_index, optim::origin_name(o.origin), o.failed ? 1 : 0,
                           o.score);
    }
}

harness::FoldPlan plan_for(const harness::ExperimentManifest& m, const harness::RetrievalData& data)
{
    return harness::stratified_folds(data.topics, m.folds, m.seed);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Precision-medicine literature and trial search: BM25 retrieval, evaluation, "
                 "configuration search and ablation"};
    app.require_subcommand(1);
    std::size_t jobs = 1;
    app.add_option("--jobs", jobs, "Worker threads; results do not depend on it")
        ->check(CLI::Range(std::size_t{1}, std::size_t{256}));

    // index
    std::string corpus, snapshot_out;
    auto* cmd_index = app.add_subcommand("index", "Build an index snapshot from a JSON-lines corpus");
    cmd_index->add_option("--corpus", corpus, "Corpus file")->required();
    cmd_index->add_option("--out", snapshot_out, "Snapshot file")->required();

    // search
    std::string index_file, topics_file, lexicon_file, run_out, task_name = "ba", tag = "pmsearch";
    std::size_t top_k = eval::kMaxRunDepth;
    ConfigOptions search_config;
    auto* cmd_search = app.add_subcommand("search", "Run every topic and write a TREC run file");
    auto* idx_opt = cmd_search->add_option("--index", index_file, "Index snapshot");
    cmd_search->add_option("--corpus", corpus, "Corpus file, indexed on the fly")->excludes(idx_opt);
    cmd_search->add_option("--topics", topics_file, "Topic XML")->required();
    cmd_search->add_option("--lexicon", lexicon_file, "Lexicon JSON")->required();
    cmd_search->add_option("--task", task_name, "ba or ct");
    cmd_search->add_option("--top-k", top_k, "Hits per topic")->check(CLI::Range(std::size_t{1}, eval::kMaxRunDepth));
    cmd_search->add_option("--tag", tag, "Run tag");
    cmd_search->add_option("--out", run_out, "Run file (default stdout)");
    search_config.add(cmd_search);

    // eval
    std::string run_file, qrels_file, sampled_file, metric = "infndcg", eval_out;
    std::size_t depth = eval::kDefaultDepth;
    auto* cmd_eval = app.add_subcommand("eval", "Score a run; CSV of topic,score with a final mean row");
    cmd_eval->add_option("--run", run_file, "Run file")->required();
    auto* q_opt = cmd_eval->add_option("--qrels", qrels_file, "Complete judgments");
    cmd_eval->add_option("--sampled", sampled_file, "Stratified sampled judgments")->excludes(q_opt);
    cmd_eval->add_option("--metric", metric, "ndcg or infndcg")->check(CLI::IsMember({"ndcg", "infndcg"}));
    cmd_eval->add_option("--depth", depth, "Evaluation depth")->check(CLI::Range(std::size_t{1}, eval::kMaxRunDepth));
    cmd_eval->add_option("--out", eval_out, "CSV file (default stdout)");

    // optimize
    std::string manifest_file, out_dir;
    std::optional<std::size_t> budget_override;
    auto* cmd_opt = app.add_subcommand("optimize", "Per-fold configuration search on the training topics");
    cmd_opt->add_option("--manifest", manifest_file, "Experiment manifest")->required();
    cmd_opt->add_option("--out", out_dir, "Output directory")->required();
    cmd_opt->add_option("--budget", budget_override, "Evaluations per fold (overrides the manifest)");

    // ablate
    std::string best_dir, groups_file;
    auto* cmd_ablate = app.add_subcommand("ablate", "Ablation study over the per-fold best configurations");
    cmd_ablate->add_option("--manifest", manifest_file, "Experiment manifest")->required();
    cmd_ablate->add_option("--best", best_dir, "Output directory of optimize")->required();
    cmd_ablate->add_option("--groups", groups_file, "Ablation group manifest (overrides the experiment's)");
    cmd_ablate->add_option("--out", out_dir, "Output directory")->required();
    bool no_groups = false;
    cmd_ablate->add_flag("--no-groups", no_groups, "Report the baseline only");

    // synth
    synth::SynthSpec spec;
    auto* cmd_synth = app.add_subcommand("synth", "Generate the synthetic corpora, topics, lexicon and judgments");
    cmd_synth->add_option("--seed", spec.seed, "Seed");
    cmd_synth->add_option("--ba-docs", spec.ba_docs, "Abstract-style documents");
    cmd_synth->add_option("--ct-docs", spec.ct_docs, "Trial-style documents");
    cmd_synth->add_option("--topics", spec.topics, "Topics");
    cmd_synth->add_option("--out", out_dir, "Output directory")->required();

    // space, config, query: inspection helpers
    std::string space_out;
    auto* cmd_space = app.add_subcommand("space", "Write the retrieval parameter space manifest");
    cmd_space->add_option("--out", space_out, "File (default stdout)");

    ConfigOptions show_config;
    std::string config_out;
    auto* cmd_config = app.add_subcommand("config", "Write a configuration in canonical form");
    show_config.add(cmd_config);
    bool starting = false;
    cmd_config->add_flag("--starting-set", starting, "Start from the optimizer's starting configuration");
    cmd_config->add_option("--out", config_out, "File (default stdout)");

    ConfigOptions query_config;
    int topic_number = 0;
    auto* cmd_query = app.add_subcommand("query", "Print the query tree built for one topic");
    cmd_query->add_option("--topics", topics_file, "Topic XML")->required();
    cmd_query->add_option("--lexicon", lexicon_file, "Lexicon JSON")->required();
    cmd_query->add_option("--topic", topic_number, "Topic number")->required();
    cmd_query->add_option("--task", task_name, "ba or ct");
    query_config.add(cmd_query);

    std::size_t k = 10;
    std::uint64_t seed = 1;
    auto* cmd_folds = app.add_subcommand("folds", "Write a stratified fold plan as JSON");
    cmd_folds->add_option("--topics", topics_file, "Topic XML")->required();
    cmd_folds->add_option("--k", k, "Folds");
    cmd_folds->add_option("--seed", seed, "Seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_index) {
            auto docs = index::read_corpus_file(corpus);
            if (docs.empty()) {
                std::cerr << "warning: " << corpus << " holds no documents\n";
            }
            auto idx = index::Index::build(docs);
            auto out = open_out(snapshot_out);
            idx.write_snapshot(out);
        } else if (*cmd_search) {
            if (index_file.empty() && corpus.empty()) {
                throw InvalidArgument("search needs --index or --corpus");
            }
            auto idx = load_index(index_file, corpus);
            auto topic_list = topics::read_topics_file(topics_file);
            auto lexicon = topics::read_lexicon_file(lexicon_file);
            auto settings = topics::settings_from(search_config.resolve());
            auto run = harness::run_topics(idx, topic_list, settings, task_of(task_name), lexicon, top_k, jobs);
            run.tag = tag;
            emit(run_out, [&](std::ostream& o) { eval::write_run(o, run); });
        } else if (*cmd_eval) {
            if (qrels_file.empty() && sampled_file.empty()) {
                throw InvalidArgument("eval needs --qrels or --sampled");
            }
            auto run = eval::read_run_file(run_file);
            std::vector<eval::TopicScore> scores;
            if (!sampled_file.empty()) {
                auto sampled = eval::read_sampled_qrels_file(sampled_file);
                scores = metric == "ndcg" ? eval::evaluate_run(run, eval::flatten(sampled), depth)
                                          : eval::evaluate_run(run, sampled, depth);
            } else {
                auto qrels = eval::read_qrels_file(qrels_file);
                scores = metric == "ndcg" ? eval::evaluate_run(run, qrels, depth)
                                          : eval::evaluate_run(run, harness::fully_sampled(qrels), depth);
            }
            emit(eval_out, [&](std::ostream& o) { write_eval_csv(o, scores); });
        } else if (*cmd_opt) {
            auto m = harness::read_experiment_manifest(manifest_file);
            if (budget_override) {
                m.budget = *budget_override;
            }
            auto data = harness::load_data(m);
            auto plan = plan_for(m, data);
            std::vector<optim::Configuration> starts;
            for (const auto& s : m.starts) {
                starts.push_back(harness::resolve_start(m, s));
            }
            optim::SmboSettings settings;
            auto results = harness::optimize_folds(data, plan, m.budget, starts, m.seed, settings, jobs);
            fs::path dir(out_dir);
            emit((dir / "folds.json").string(), [&](std::ostream& o) { o << harness::write_fold_plan_json(plan); });
            auto summary = open_out(dir / "summary.csv");
            summary << "fold,start_train_score,best_train_score,best_eval_index,test_score\n";
            for (const auto& r : results) {
                auto test = harness::mean_score(data, r.best.config, plan.test_topics(r.fold), jobs);
                summary << fmt::format("{},{},{},{},{}\n", r.fold, r.start_train_score, r.best.score,
                                       r.best.eval_index, test);
                emit((dir / fmt::format("best_fold_{}.json", r.fold)).string(), [&](std::ostream& o) {
                    o << optim::write_config_json(r.best.config, topics::retrieval_space());
                });
                emit((dir / fmt::format("trace_fold_{}.csv", r.fold)).string(),
                     [&](std::ostream& o) { optim::write_trace_csv(o, r.history); });
                emit((dir / fmt::format("history_fold_{}.csv", r.fold)).string(),
                     [&](std::ostream& o) { write_history_csv(o, r.history); });
            }
        } else if (*cmd_ablate) {
            auto m = harness::read_experiment_manifest(manifest_file);
            auto data = harness::load_data(m);
            fs::path best(best_dir);
            auto plan = harness::read_fold_plan_json(slurp(best / "folds.json"), (best / "folds.json").string());
            const auto& space = topics::retrieval_space();
            std::vector<optim::Configuration> configs;
            for (std::size_t f = 0; f < plan.k; ++f) {
                auto file = best / fmt::format("best_fold_{}.json", f);
                configs.push_back(optim::read_config_file(file.string(), space));
            }
            harness::AblationManifest groups;
            if (!no_groups) {
                groups = harness::read_ablation_manifest_file(
                    groups_file.empty() ? m.ablation_groups.string() : groups_file, space);
            }
            std::vector<std::string> marked;
            if (auto it = groups.reduced_model.find(std::string(topics::task_name(m.task)));
                it != groups.reduced_model.end()) {
                marked = it->second;
            }
            harness::FoldEvaluator evaluator = [&](const optim::Configuration& c, std::size_t fold) {
                return harness::topic_scores(data, c, plan.test_topics(fold));
            };
            auto report = harness::run_ablation(plan, configs, groups.groups, marked, evaluator, space,
                                                {m.iterations, m.seed, jobs});
            fs::path dir(out_dir);
            emit((dir / "ablation.csv").string(), [&](std::ostream& o) { harness::write_ablation_csv(o, report); });
            emit((dir / "ablation.txt").string(), [&](std::ostream& o) { harness::write_ablation_text(o, report); });
            emit((dir / "topic_scores.csv").string(),
                 [&](std::ostream& o) { harness::write_topic_scores_csv(o, report); });
        } else if (*cmd_synth) {
            synth::write_files(synth::generate(spec), out_dir);
        } else if (*cmd_space) {
            emit(space_out, [&](std::ostream& o) { o << optim::write_space_json(topics::retrieval_space()); });
        } else if (*cmd_config) {
            auto config = starting ? topics::starting_configuration() : show_config.resolve();
            if (starting) {
                for (const auto& o : show_config.overrides) {
                    optim::apply_override(config, topics::retrieval_space(), o);
                }
            }
            emit(config_out,
                 [&](std::ostream& o) { o << optim::write_config_json(config, topics::retrieval_space()); });
        } else if (*cmd_query) {
            auto topic_list = topics::read_topics_file(topics_file);
            auto lexicon = topics::read_lexicon_file(lexicon_file);
            auto it = std::find_if(topic_list.begin(), topic_list.end(),
                                   [&](const topics::Topic& t) { return t.number == topic_number; });
            if (it == topic_list.end()) {
                throw InvalidArgument(fmt::format("no topic {} in {}", topic_number, topics_file));
            }
            std::cout << query::render(topics::build_query(*it, query_config.resolve(), task_of(task_name), lexicon));
        } else if (*cmd_folds) {
            auto plan = harness::stratified_folds(topics::read_topics_file(topics_file), k, seed);
            std::cout << harness::write_fold_plan_json(plan);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
