#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pmsearch/eval/trec_io.hpp"
#include "pmsearch/harness/folds.hpp"
#include "pmsearch/optim/param_space.hpp"

namespace pmsearch::harness {

enum class Sign { disable, enable };

struct Override {
    std::string parameter;
    std::optional<optim::ParamValue> value;  ///< nullopt: the parameter's default
};

struct AblationGroup {
    std::string id;       ///< unique key, e.g. "disease.synonyms"
    std::string label;    ///< row label, e.g. "-Synonyms"
    std::string section;  ///< heading the row is listed under; empty for a standalone row
    Sign sign = Sign::disable;
    std::vector<Override> overrides;
};

struct AblationManifest {
    std::vector<AblationGroup> groups;  ///< report order
    /// Per task name, the ids of the groups kept by the reduced model.
    std::map<std::string, std::vector<std::string>> reduced_model;
};

// Manifest:
//   {"sections": [{"name": "...", "groups": [
//       {"id": "...", "label": "...", "sign": "disable" | "enable",
//        "overrides": [{"parameter": "bm25.b"} | {"prefix": "field."}, optional "value"]}]}],
//    "reduced_model": {"ba": ["id", ...], ...}}
// A prefix override expands to every parameter starting with it, in space
// order. Throws ParseError on unknown parameters, empty prefixes, bad values,
// duplicate ids, or reduced-model ids that name no group.
AblationManifest read_ablation_manifest(const std::string& json_text, const optim::ParamSpace& space,
                                        const std::string& source = "ablation manifest");
AblationManifest read_ablation_manifest_file(const std::string& path, const optim::ParamSpace& space);

/// Throws InvalidArgument when a group names a parameter outside `space`.
void validate_group(const AblationGroup& group, const optim::ParamSpace& space);

optim::Configuration apply_group(const optim::Configuration& config, const AblationGroup& group,
                                 const optim::ParamSpace& space);

/// `config` with every disabling group outside `marked` applied. A parameter
/// also covered by a marked group keeps its value; enabling groups never apply.
optim::Configuration reduced_model(const optim::Configuration& config,
                                   const std::vector<AblationGroup>& groups,
                                   const std::vector<std::string>& marked,
                                   const optim::ParamSpace& space);

/// Mean of the per-split test scores; throws InvalidArgument when empty.
double ablation_score(const std::vector<double>& split_scores);

/// "***" below 0.001, "**" below 0.01, "*" below 0.05, else "".
std::string significance_stars(double p_value);

/// Per-topic test scores of `config` on the test topics of `fold`. Called
/// concurrently when jobs > 1.
using FoldEvaluator =
    std::function<std::map<eval::TopicId, double>(const optim::Configuration& config, std::size_t fold)>;

struct AblationRow {
    std::string id;
    std::string label;
    std::string section;
    bool marked = false;
    double score = 0.0;                ///< ablation_score over the fold means
    double delta_percent = 0.0;        ///< (score - baseline) / baseline * 100
    double p_value = 1.0;              ///< paired test against the baseline topics
    std::string stars;
    std::vector<double> fold_scores;   ///< mean test score per fold
    std::map<eval::TopicId, double> topic_scores;  ///< pooled over all test folds
};

struct AblationReport {
    AblationRow baseline;
    std::vector<AblationRow> rows;
    std::optional<AblationRow> reduced;  ///< absent when there are no groups
};

struct AblationSettings {
    std::size_t iterations = 10000;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
};

/// Evaluates every fold's best configuration unmodified (baseline), with each
/// group applied, and as the reduced model. Throws InvalidArgument when the
/// number of configurations differs from plan.k or a group is invalid.
AblationReport run_ablation(const FoldPlan& plan, const std::vector<optim::Configuration>& best_configs,
                            const std::vector<AblationGroup>& groups,
                            const std::vector<std::string>& marked, const FoldEvaluator& evaluator,
                            const optim::ParamSpace& space, const AblationSettings& settings = {});

/// Header group,score,delta_percent,p_value,stars; baseline first, reduced model last.
void write_ablation_csv(std::ostream& out, const AblationReport& report);
/// Aligned table with section headings; groups kept by the reduced model
/// carry a dagger after their difference.
void write_ablation_text(std::ostream& out, const AblationReport& report);
/// Header configuration,topic,score: the raw scores every row aggregates.
void write_topic_scores_csv(std::ostream& out, const AblationReport& report);

}  // namespace pmsearch::harness
