#include "pmsearch/topics/expansion.hpp"

#include <map>
#include <regex>

#include "pmsearch/error.hpp"
#include "pmsearch/index/tokenizer.hpp"

namespace pmsearch::topics {

std::string_view clause_name(ClauseType type)
{
    switch (type) {
    case ClauseType::disease_topic: return "disease.topic";
    case ClauseType::disease_preferred: return "disease.preferred";
    case ClauseType::disease_synonym: return "disease.synonym";
    case ClauseType::disease_hypernym: return "disease.hypernym";
    case ClauseType::disease_solid: return "disease.solid";
    case ClauseType::gene_topic: return "gene.topic";
    case ClauseType::gene_synonym: return "gene.synonym";
    case ClauseType::gene_description: return "gene.description";
    case ClauseType::gene_family: return "gene.family";
    }
    return "?";
}

std::optional<std::string> majority_vote(const std::vector<std::string>& votes)
{
    std::map<std::string, int> counts;
    for (const auto& v : votes) {
        ++counts[v];
    }
    std::optional<std::string> best;
    int best_count = 0;
    for (const auto& [term, n] : counts) {  // ascending, so strict > keeps the smallest on ties
        if (n > best_count) {
            best = term;
            best_count = n;
        }
    }
    return best;
}

ExpansionSet expand_disease(std::string_view disease, const Lexicon& lexicon,
                            const DiseaseExpansionOptions& options)
{
    ExpansionSet out;
    if (const auto* e = lexicon.disease(disease)) {
        if (options.preferred) {
            if (auto p = majority_vote(e->preferred_terms)) {
                out.push_back({ClauseType::disease_preferred, *p});
            }
        }
        if (options.synonyms) {
            for (const auto& s : e->synonyms) {
                out.push_back({ClauseType::disease_synonym, s});
            }
        }
        if (options.hypernyms) {
            for (const auto& h : e->hypernyms) {
                out.push_back({ClauseType::disease_hypernym, h});
            }
        }
    }
    if (options.solid_tumor && lexicon.is_solid_tumor(disease)) {
        out.push_back({ClauseType::disease_solid, "solid"});
    }
    return out;
}

ExpansionSet expand_gene(std::string_view symbol, const Lexicon& lexicon,
                         const GeneExpansionOptions& options)
{
    ExpansionSet out;
    const auto* e = lexicon.gene(symbol);
    if (e != nullptr && options.synonyms) {
        for (const auto& s : e->synonyms) {
            out.push_back({ClauseType::gene_synonym, s});
        }
    }
    if (e != nullptr && options.description && !e->description.empty()) {
        out.push_back({ClauseType::gene_description, e->description});
    }
    if (options.family) {
        if (auto f = gene_family(index::to_upper(symbol))) {
            out.push_back({ClauseType::gene_family, *f});
        }
    }
    return out;
}

std::optional<std::string> gene_family(std::string_view symbol)
{
    if (symbol.empty()) {
        throw InvalidArgument("gene symbol must not be empty");
    }
    static const std::regex suffix("([0-9]{1,2}[A-Z]{0,2}|R[0-9]{0,1})$");
    std::string s(symbol);
    std::smatch m;
    // The leftmost match of an end-anchored pattern is the longest suffix.
    if (!std::regex_search(s, m, suffix) || m.position(0) == 0) {
        return std::nullopt;
    }
    return s.substr(0, static_cast<std::size_t>(m.position(0)));
}

std::string gene_symbol(std::string_view aspect)
{
    auto b = aspect.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = aspect.find_first_of(" \t(", b);
    return index::to_upper(aspect.substr(b, e == std::string_view::npos ? e : e - b));
}

}  // namespace pmsearch::topics
