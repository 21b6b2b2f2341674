#include "pmsearch/topics/settings.hpp"

#include <cstdlib>

#include "pmsearch/error.hpp"
#include "pmsearch/index/tokenizer.hpp"
#include "pmsearch/topics/vocabulary.hpp"

namespace pmsearch::topics {

using index::Field;
using optim::Parameter;

namespace {

const std::vector<std::pair<std::string, std::vector<Field>>>& field_groups()
{
    static const std::vector<std::pair<std::string, std::vector<Field>>> groups{
        {"disease", {Field::title, Field::abstract, Field::mesh}},
        {"gene", {Field::title, Field::abstract, Field::mesh, Field::gene}},
        {"positive", {Field::title, Field::abstract, Field::mesh}},
        {"negative", {Field::title, Field::abstract, Field::mesh}},
    };
    return groups;
}

std::string keyword_param(const char* polarity, std::string_view word)
{
    return std::string("keyword.") + polarity + "." + index::to_lower(word);
}

optim::ParamSpace build_space()
{
    std::vector<Parameter> p;
    p.push_back(Parameter::numeric("bm25.b", 0.0, 1.0, 0.75));
    p.push_back(Parameter::numeric("bm25.k1", 0.0, 2.0, 1.2));
    for (const char* aspect : {"disease", "gene"}) {
        p.push_back(Parameter::categorical(std::string("query.expansions.") + aspect,
                                           {"disjunction", "dis_max"}, "disjunction"));
    }
    for (auto t : kAllClauseTypes) {
        p.push_back(Parameter::categorical("query.multiword." + std::string(clause_name(t)),
                                           {"bag_of_words", "phrase"}, "bag_of_words"));
    }
    p.push_back(Parameter::numeric("weight.disease", 0.0, 3.0, 1.0));
    p.push_back(Parameter::numeric("weight.gene", 0.0, 3.0, 1.0));
    for (auto t : kAllClauseTypes) {
        p.push_back(Parameter::numeric("weight." + std::string(clause_name(t)), 0.0, 3.0, 1.0));
    }
    for (const auto& [group, fields] : field_groups()) {
        for (auto f : fields) {
            p.push_back(Parameter::numeric("field." + group + "." + std::string(index::field_name(f)),
                                           0.0, 3.0, 1.0));
        }
    }
    for (const char* name : {"preferred", "synonyms", "hypernyms", "solid_tumor"}) {
        p.push_back(Parameter::binary(std::string("expand.disease.") + name, false));
    }
    for (const char* name : {"synonyms", "description", "family"}) {
        p.push_back(Parameter::binary(std::string("expand.gene.") + name, false));
    }
    p.push_back(Parameter::binary("stopwords", false));
    for (const auto& k : positive_keywords()) {
        p.push_back(Parameter::binary(keyword_param("positive", k.word), false));
    }
    for (const auto& k : negative_keywords()) {
        p.push_back(Parameter::binary(keyword_param("negative", k.word), false));
    }
    p.push_back(Parameter::numeric("keyword.positive.weight", 0.0, 3.0, 1.0));
    p.push_back(Parameter::numeric("keyword.negative.weight", -3.0, 0.0, -1.0));
    p.push_back(Parameter::binary("keyword.non_melanoma", false));
    p.push_back(Parameter::numeric("gene_tagger.weight", 0.0, 3.0, 0.0));
    return optim::ParamSpace(std::move(p));
}

Combiner combiner(const std::string& choice)
{
    return choice == "dis_max" ? Combiner::dis_max : Combiner::disjunction;
}

}  // namespace

const optim::ParamSpace& retrieval_space()
{
    static const optim::ParamSpace space = build_space();
    return space;
}

QuerySettings settings_from(const optim::Configuration& config)
{
    retrieval_space().validate(config);
    QuerySettings s;
    s.bm25 = {config.number("bm25.k1"), config.number("bm25.b")};
    s.disease_combiner = combiner(config.choice("query.expansions.disease"));
    s.gene_combiner = combiner(config.choice("query.expansions.gene"));
    s.disease_weight = config.number("weight.disease");
    s.gene_weight = config.number("weight.gene");
    for (auto t : kAllClauseTypes) {
        auto name = std::string(clause_name(t));
        s.clauses[static_cast<std::size_t>(t)] = {config.number("weight." + name),
                                                  config.choice("query.multiword." + name) ==
                                                      "phrase"};
    }
    FieldWeights* targets[] = {&s.disease_fields, &s.gene_fields, &s.positive_fields,
                               &s.negative_fields};
    std::size_t g = 0;
    for (const auto& [group, fields] : field_groups()) {
        for (auto f : fields) {
            targets[g]->emplace_back(
                f, config.number("field." + group + "." + std::string(index::field_name(f))));
        }
        ++g;
    }
    s.disease_expansion = {config.flag("expand.disease.preferred"),
                           config.flag("expand.disease.synonyms"),
                           config.flag("expand.disease.hypernyms"),
                           config.flag("expand.disease.solid_tumor")};
    s.gene_expansion = {config.flag("expand.gene.synonyms"), config.flag("expand.gene.description"),
                        config.flag("expand.gene.family")};
    s.stopwords = config.flag("stopwords");
    for (const auto& k : positive_keywords()) {
        if (config.flag(keyword_param("positive", k.word))) {
            s.keywords.positive.push_back(index::to_lower(k.word));
        }
    }
    for (const auto& k : negative_keywords()) {
        if (config.flag(keyword_param("negative", k.word))) {
            s.keywords.negative.push_back(index::to_lower(k.word));
        }
    }
    s.keywords.positive_weight = config.number("keyword.positive.weight");
    s.keywords.negative_weight = config.number("keyword.negative.weight");
    s.keywords.non_melanoma_exclusion = config.flag("keyword.non_melanoma");
    s.keywords.gene_tagger_weight = config.number("gene_tagger.weight");
    return s;
}

optim::Configuration starting_configuration()
{
    auto config = retrieval_space().defaults();
    for (const auto& k : positive_keywords()) {
        if (k.starting) {
            config.set(keyword_param("positive", k.word), true);
        }
    }
    for (const auto& k : negative_keywords()) {
        if (k.starting) {
            config.set(keyword_param("negative", k.word), true);
        }
    }
    for (const auto& [group, fields] : field_groups()) {
        config.set("field." + group + ".title", 2.0);
    }
    return config;
}

std::string data_dir()
{
    if (const char* env = std::getenv("PMSEARCH_DATA_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return PMSEARCH_DATA_DIR;
}

optim::Configuration load_preset(const std::string& name)
{
    return optim::read_config_file(data_dir() + "/presets/" + name + ".json", retrieval_space());
}

}  // namespace pmsearch::topics
