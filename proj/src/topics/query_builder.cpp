#include "pmsearch/topics/query_builder.hpp"

#include <algorithm>

#include "pmsearch/index/tokenizer.hpp"
#include "pmsearch/topics/vocabulary.hpp"

namespace pmsearch::topics {

using index::Field;
using query::Query;

std::string_view task_name(Task task)
{
    return task == Task::ba ? "ba" : "ct";
}

std::optional<Task> parse_task(std::string_view name)
{
    auto lower = index::to_lower(name);
    if (lower == "ba") {
        return Task::ba;
    }
    if (lower == "ct") {
        return Task::ct;
    }
    return std::nullopt;
}

namespace {

Query field_match(Field field, const std::vector<std::string>& tokens, bool phrase)
{
    if (tokens.size() == 1) {
        return query::term(field, tokens.front());
    }
    return phrase ? query::phrase(field, tokens) : query::bag_of_words({field}, tokens);
}

Query field_compound(const std::vector<std::string>& tokens, bool phrase,
                     const FieldWeights& fields)
{
    query::Bool b;
    for (const auto& [field, weight] : fields) {
        b.should.push_back(query::weighted(field_match(field, tokens, phrase), weight));
    }
    return query::boolean(std::move(b));
}

/// Weighted clause per expansion, or nothing when the compound ends up empty.
std::optional<Query> compound(const ExpansionSet& clauses, const QuerySettings& s,
                              Combiner combiner, const FieldWeights& fields)
{
    std::vector<std::vector<std::string>> seen;
    std::vector<Query> parts;
    for (const auto& c : clauses) {
        auto tokens = filter_stopwords(index::tokenize_terms(c.text), s.stopwords);
        if (tokens.empty() || std::find(seen.begin(), seen.end(), tokens) != seen.end()) {
            continue;
        }
        seen.push_back(tokens);
        const auto& setting = s.clause(c.type);
        parts.push_back(query::weighted(field_compound(tokens, setting.phrase, fields),
                                        setting.weight));
    }
    if (parts.empty()) {
        return std::nullopt;
    }
    if (combiner == Combiner::dis_max) {
        return query::dis_max(std::move(parts));
    }
    query::Bool b;
    b.should = std::move(parts);
    return query::boolean(std::move(b));
}

std::optional<Query> keyword_clause(const std::vector<std::string>& words,
                                    const FieldWeights& fields, double weight)
{
    if (words.empty()) {
        return std::nullopt;
    }
    query::Bool b;
    for (const auto& w : words) {
        b.should.push_back(field_compound({w}, false, fields));
    }
    return query::weighted(query::boolean(std::move(b)), weight);
}

}  // namespace

Query build_query(const Topic& topic, const QuerySettings& s, Task task, const Lexicon& lexicon)
{
    query::Bool root;

    ExpansionSet disease{{ClauseType::disease_topic, topic.disease}};
    auto dx = expand_disease(topic.disease, lexicon, s.disease_expansion);
    disease.insert(disease.end(), dx.begin(), dx.end());
    if (auto q = compound(disease, s, s.disease_combiner, s.disease_fields)) {
        root.must.push_back(query::weighted(*q, s.disease_weight));
    }

    std::vector<std::string> symbols;
    for (const auto& aspect : gene_aspects(topic)) {
        auto symbol = gene_symbol(aspect);
        ExpansionSet gene{{ClauseType::gene_topic, aspect}};
        if (!symbol.empty()) {
            symbols.push_back(symbol);
            auto gx = expand_gene(symbol, lexicon, s.gene_expansion);
            gene.insert(gene.end(), gx.begin(), gx.end());
        }
        if (auto q = compound(gene, s, s.gene_combiner, s.gene_fields)) {
            root.must.push_back(query::weighted(*q, s.gene_weight));
        }
    }

    const auto& kw = s.keywords;
    if (auto q = keyword_clause(kw.positive, s.positive_fields, kw.positive_weight)) {
        root.should.push_back(*q);
    }
    if (auto q = keyword_clause(kw.negative, s.negative_fields, kw.negative_weight)) {
        root.should.push_back(*q);
    }
    if (kw.gene_tagger_weight > 0.0) {
        std::vector<std::string> tokens;
        for (const auto& sym : symbols) {
            for (auto& t : index::tokenize_terms(sym)) {
                if (std::find(tokens.begin(), tokens.end(), t) == tokens.end()) {
                    tokens.push_back(std::move(t));
                }
            }
        }
        if (!tokens.empty()) {
            root.should.push_back(
                query::weighted(query::bag_of_words({Field::gene}, tokens), kw.gene_tagger_weight));
        }
    }

    if (kw.non_melanoma_exclusion && index::to_lower(topic.disease).find("melanoma") != std::string::npos) {
        for (Field f : {Field::title, Field::abstract, Field::mesh}) {
            root.must_not.push_back(query::phrase(f, {"non", "melanoma"}));
        }
    }

    if (task == Task::ct) {
        root.filter.push_back(query::age_range(topic.age));
        root.filter.push_back(query::sex_filter(topic.sex));
    }
    return query::boolean(std::move(root));
}

Query build_query(const Topic& topic, const optim::Configuration& config, Task task,
                  const Lexicon& lexicon)
{
    return build_query(topic, settings_from(config), task, lexicon);
}

}  // namespace pmsearch::topics
