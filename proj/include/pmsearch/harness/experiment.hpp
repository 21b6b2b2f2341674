#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pmsearch/harness/ablation.hpp"
#include "pmsearch/harness/folds.hpp"
#include "pmsearch/harness/retrieval.hpp"

namespace pmsearch::harness {

/// JSON file describing one cross-validated experiment. Paths are relative to
/// the manifest's directory.
///   {"task": "ba", "corpus": "...", "topics": "...", "lexicon": "...",
///    "sampled_qrels": "..." | "qrels": "...",
///    "param_space": "...", "ablation_groups": "...",
///    "folds": 10, "seed": 1, "budget": 500, "depth": 1000,
///    "iterations": 10000, "starts": ["starting", "defaults", "<config.json>"]}
/// Only task, corpus, topics, lexicon and one kind of judgments are required.
struct ExperimentManifest {
    std::filesystem::path base_dir;
    topics::Task task = topics::Task::ba;
    std::filesystem::path corpus;
    std::filesystem::path topics;
    std::filesystem::path lexicon;
    std::optional<std::filesystem::path> qrels;
    std::optional<std::filesystem::path> sampled_qrels;
    std::optional<std::filesystem::path> param_space;  ///< must equal the retrieval space if given
    std::filesystem::path ablation_groups;             ///< defaults to the shipped manifest
    std::size_t folds = 10;
    std::uint64_t seed = 1;
    std::size_t budget = 500;
    std::size_t depth = eval::kDefaultDepth;
    std::size_t iterations = 10000;
    std::vector<std::string> starts{"starting"};
};

/// Throws ParseError on malformed JSON, unknown keys, or a missing file.
ExperimentManifest read_experiment_manifest(const std::string& path);

/// Loads and indexes everything the manifest names.
RetrievalData load_data(const ExperimentManifest& manifest);

/// "defaults", "starting", a shipped preset name, or a configuration file
/// relative to the manifest.
optim::Configuration resolve_start(const ExperimentManifest& manifest, const std::string& start);

// Fold plans: {"k": 3, "assignments": {"<topic>": fold, ...}}.
std::string write_fold_plan_json(const FoldPlan& plan);
FoldPlan read_fold_plan_json(const std::string& text, const std::string& source = "fold plan");

}  // namespace pmsearch::harness
