#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace pmsearch::topics {

struct DiseaseEntry {
    std::vector<std::string> synonyms;
    std::vector<std::string> hypernyms;
    /// One vote per source vocabulary; repeats are expected.
    std::vector<std::string> preferred_terms;

    friend bool operator==(const DiseaseEntry&, const DiseaseEntry&) = default;
};

struct GeneEntry {
    std::vector<std::string> synonyms;
    std::string description;

    friend bool operator==(const GeneEntry&, const GeneEntry&) = default;
};

/// Disease lookups are case-insensitive; gene symbols are stored uppercase.
class Lexicon {
  public:
    /// Throws InvalidArgument on duplicate keys or duplicate list entries.
    void add_disease(const std::string& name, DiseaseEntry entry);
    void add_gene(const std::string& symbol, GeneEntry entry);
    void add_solid_tumor(const std::string& disease);

    const DiseaseEntry* disease(std::string_view name) const;
    const GeneEntry* gene(std::string_view symbol) const;
    bool is_solid_tumor(std::string_view disease) const;

    const std::map<std::string, DiseaseEntry, std::less<>>& diseases() const { return diseases_; }
    const std::map<std::string, GeneEntry, std::less<>>& genes() const { return genes_; }
    const std::set<std::string, std::less<>>& solid_tumors() const { return solid_; }

    friend bool operator==(const Lexicon&, const Lexicon&) = default;

  private:
    std::map<std::string, DiseaseEntry, std::less<>> diseases_;
    std::map<std::string, GeneEntry, std::less<>> genes_;
    std::set<std::string, std::less<>> solid_;
};

// Lexicon files:
//   {"diseases": {"<name>": {"synonyms": [...], "hypernyms": [...],
//                            "preferred_terms": [...]}},
//    "genes": {"<SYMBOL>": {"synonyms": [...], "description": "..."}},
//    "solid_tumors": ["<name>", ...]}
// Every list key is optional.
Lexicon parse_lexicon(const std::string& json_text, const std::string& source = "lexicon");
Lexicon read_lexicon_file(const std::string& path);
/// Canonical form: keys sorted (lowercase diseases, uppercase genes), 2-space indent.
std::string write_lexicon(const Lexicon& lexicon);

}  // namespace pmsearch::topics
