#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmsearch/topics/lexicon.hpp"

namespace pmsearch::topics {

/// Clause types of the disease and gene compounds. Each has its own clause
/// weight and multi-word setting.
enum class ClauseType {
    disease_topic,
    disease_preferred,
    disease_synonym,
    disease_hypernym,
    disease_solid,
    gene_topic,
    gene_synonym,
    gene_description,
    gene_family,
};

inline constexpr std::array<ClauseType, 9> kAllClauseTypes{
    ClauseType::disease_topic,    ClauseType::disease_preferred, ClauseType::disease_synonym,
    ClauseType::disease_hypernym, ClauseType::disease_solid,     ClauseType::gene_topic,
    ClauseType::gene_synonym,     ClauseType::gene_description,  ClauseType::gene_family};

/// "disease.topic", "gene.family", ...
std::string_view clause_name(ClauseType type);

struct Expansion {
    ClauseType type;
    std::string text;

    friend bool operator==(const Expansion&, const Expansion&) = default;
};

using ExpansionSet = std::vector<Expansion>;

struct DiseaseExpansionOptions {
    bool preferred = false;
    bool synonyms = false;
    bool hypernyms = false;
    bool solid_tumor = false;
};

struct GeneExpansionOptions {
    bool synonyms = false;
    bool description = false;
    bool family = false;
};

/// Most frequent entry; ties go to the lexicographically smallest.
std::optional<std::string> majority_vote(const std::vector<std::string>& votes);

/// Toggled expansion classes in the order preferred, synonyms, hypernyms,
/// solid. Unknown diseases expand to nothing; "solid" needs only solid-tumor
/// membership.
ExpansionSet expand_disease(std::string_view disease, const Lexicon& lexicon,
                            const DiseaseExpansionOptions& options);

/// Toggled classes in the order synonyms, description, family. The family
/// prefix is derived from the symbol itself and needs no lexicon entry.
ExpansionSet expand_gene(std::string_view symbol, const Lexicon& lexicon,
                         const GeneExpansionOptions& options);

/// Strips the longest suffix matching ([0-9]{1,2}[A-Z]{0,2}|R[0-9]{0,1})$.
/// Nothing when no suffix matches or the prefix would be empty.
std::optional<std::string> gene_family(std::string_view symbol);

/// Leading gene symbol of an aspect such as "BRAF (V600E)", uppercased.
std::string gene_symbol(std::string_view aspect);

}  // namespace pmsearch::topics
