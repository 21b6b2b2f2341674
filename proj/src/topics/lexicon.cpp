#include "pmsearch/topics/lexicon.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pmsearch/error.hpp"
#include "pmsearch/index/tokenizer.hpp"

namespace pmsearch::topics {

using nlohmann::ordered_json;
using index::to_lower;
using index::to_upper;

namespace {

void require_distinct(const std::vector<std::string>& list, const std::string& where)
{
    std::set<std::string> seen;
    for (const auto& s : list) {
        if (s.empty()) {
            throw InvalidArgument(where + ": empty entry");
        }
        if (!seen.insert(to_lower(s)).second) {
            throw InvalidArgument(where + ": duplicate entry '" + s + "'");
        }
    }
}

}  // namespace

void Lexicon::add_disease(const std::string& name, DiseaseEntry entry)
{
    auto key = to_lower(name);
    require_distinct(entry.synonyms, "disease " + key + " synonyms");
    require_distinct(entry.hypernyms, "disease " + key + " hypernyms");
    for (const auto& p : entry.preferred_terms) {
        if (p.empty()) {
            throw InvalidArgument("disease " + key + ": empty preferred term");
        }
    }
    if (key.empty() || !diseases_.emplace(key, std::move(entry)).second) {
        throw InvalidArgument("duplicate or empty disease '" + name + "'");
    }
}

void Lexicon::add_gene(const std::string& symbol, GeneEntry entry)
{
    auto key = to_upper(symbol);
    require_distinct(entry.synonyms, "gene " + key + " synonyms");
    if (key.empty() || !genes_.emplace(key, std::move(entry)).second) {
        throw InvalidArgument("duplicate or empty gene '" + symbol + "'");
    }
}

void Lexicon::add_solid_tumor(const std::string& disease)
{
    if (disease.empty() || !solid_.insert(to_lower(disease)).second) {
        throw InvalidArgument("duplicate or empty solid tumor '" + disease + "'");
    }
}

const DiseaseEntry* Lexicon::disease(std::string_view name) const
{
    auto it = diseases_.find(to_lower(name));
    return it == diseases_.end() ? nullptr : &it->second;
}

const GeneEntry* Lexicon::gene(std::string_view symbol) const
{
    auto it = genes_.find(to_upper(symbol));
    return it == genes_.end() ? nullptr : &it->second;
}

bool Lexicon::is_solid_tumor(std::string_view disease) const
{
    return solid_.find(to_lower(disease)) != solid_.end();
}

namespace {

std::vector<std::string> string_list(const ordered_json& obj, const char* key)
{
    if (!obj.contains(key)) {
        return {};
    }
    return obj.at(key).get<std::vector<std::string>>();
}

}  // namespace

Lexicon parse_lexicon(const std::string& json_text, const std::string& source)
{
    Lexicon lex;
    try {
        auto root = ordered_json::parse(json_text);
        if (!root.is_object()) {
            throw ParseError(source + ": expected a JSON object");
        }
        for (const auto& [key, _] : root.items()) {
            if (key != "diseases" && key != "genes" && key != "solid_tumors") {
                throw ParseError(source + ": unknown top-level key " + key);
            }
        }
        if (root.contains("diseases")) {
            for (const auto& [name, e] : root["diseases"].items()) {
                lex.add_disease(name, {string_list(e, "synonyms"), string_list(e, "hypernyms"),
                                       string_list(e, "preferred_terms")});
            }
        }
        if (root.contains("genes")) {
            for (const auto& [symbol, e] : root["genes"].items()) {
                lex.add_gene(symbol, {string_list(e, "synonyms"),
                                      e.contains("description") ? e["description"].get<std::string>()
                                                                : std::string()});
            }
        }
        for (const auto& s : string_list(root, "solid_tumors")) {
            lex.add_solid_tumor(s);
        }
    } catch (const ordered_json::exception& e) {
        throw ParseError(source + ": " + e.what());
    } catch (const InvalidArgument& e) {
        throw ParseError(source + ": " + e.what());
    }
    return lex;
}

Lexicon read_lexicon_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_lexicon(ss.str(), path);
}

std::string write_lexicon(const Lexicon& lexicon)
{
    ordered_json root;
    root["diseases"] = ordered_json::object();
    for (const auto& [name, e] : lexicon.diseases()) {
        root["diseases"][name] = {{"synonyms", e.synonyms},
                                  {"hypernyms", e.hypernyms},
                                  {"preferred_terms", e.preferred_terms}};
    }
    root["genes"] = ordered_json::object();
    for (const auto& [symbol, e] : lexicon.genes()) {
        root["genes"][symbol] = {{"synonyms", e.synonyms}, {"description", e.description}};
    }
    root["solid_tumors"] = ordered_json::array();
    for (const auto& s : lexicon.solid_tumors()) {
        root["solid_tumors"].push_back(s);
    }
    return root.dump(2) + "\n";
}

}  // namespace pmsearch::topics
