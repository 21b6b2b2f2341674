#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "pmsearch/index/bm25.hpp"
#include "pmsearch/index/document.hpp"
#include "pmsearch/optim/param_space.hpp"
#include "pmsearch/topics/expansion.hpp"

namespace pmsearch::topics {

/// How the topic term and its expansions are combined inside a compound.
enum class Combiner { disjunction, dis_max };

struct ClauseSetting {
    double weight = 1.0;
    bool phrase = false;  ///< multi-word terms as exact phrases instead of bags of words
};

using FieldWeights = std::vector<std::pair<index::Field, double>>;

struct KeywordConfig {
    std::vector<std::string> positive;
    double positive_weight = 1.0;
    std::vector<std::string> negative;
    double negative_weight = -1.0;
    bool non_melanoma_exclusion = false;
    double gene_tagger_weight = 0.0;
};

/// Typed view of a retrieval configuration.
struct QuerySettings {
    index::Bm25Params bm25;
    Combiner disease_combiner = Combiner::disjunction;
    Combiner gene_combiner = Combiner::disjunction;
    double disease_weight = 1.0;
    double gene_weight = 1.0;
    std::array<ClauseSetting, kAllClauseTypes.size()> clauses{};
    FieldWeights disease_fields;
    FieldWeights gene_fields;
    FieldWeights positive_fields;
    FieldWeights negative_fields;
    DiseaseExpansionOptions disease_expansion;
    GeneExpansionOptions gene_expansion;
    bool stopwords = false;
    KeywordConfig keywords;

    const ClauseSetting& clause(ClauseType t) const { return clauses[static_cast<std::size_t>(t)]; }
};

/// The full retrieval parameter space: BM25, query types, clause and field
/// weights, expansion toggles, stop words, and keyword boosting.
const optim::ParamSpace& retrieval_space();

/// Throws InvalidArgument unless `config` is a valid point of retrieval_space().
QuerySettings settings_from(const optim::Configuration& config);

/// Defaults, with the starting-set keywords active and every title field
/// weight at 2.
optim::Configuration starting_configuration();

/// Directory holding the shipped word lists, manifests and presets. The
/// PMSEARCH_DATA_DIR environment variable overrides the build-time location.
std::string data_dir();

/// Loads presets/<name>.json from data_dir().
optim::Configuration load_preset(const std::string& name);

}  // namespace pmsearch::topics
