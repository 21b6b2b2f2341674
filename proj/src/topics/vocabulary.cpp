#include "pmsearch/topics/vocabulary.hpp"

#include <algorithm>
#include <array>

#include "pmsearch/error.hpp"
#include "pmsearch/index/tokenizer.hpp"

namespace pmsearch::topics {

namespace {

constexpr std::array<std::string_view, 31> kStopwords{
    "adenocarcinoma", "amplification", "by", "ca", "cancer", "carcinoma", "caused",
    "cell", "cells", "defect", "disorder", "due", "essential", "familial",
    "for", "function", "instability", "malignant", "microsatellite", "mucosal", "neoplasm",
    "nerve", "of", "primary", "rearrangement", "stage", "the", "to",
    "tumor", "tumour", "with"};

constexpr std::array<Keyword, 35> kPositive{{
    {"base", false},         {"clinical", true},       {"cure", false},
    {"dna", false},          {"efficacy", false},      {"gefitinib", true},
    {"gene", false},         {"genotype", false},      {"Gleason", true},
    {"heal", false},         {"healing", false},       {"malignancy", false},
    {"outcome", true},       {"patient", false},       {"personalized", false},
    {"prevent", false},      {"prognoses", false},     {"prognosis", true},
    {"prognostic", true},    {"prophylactic", false},  {"prophylaxis", false},
    {"recover", false},      {"recovery", false},      {"recurrence", false},
    {"resistance", true},    {"study", false},         {"surgery", false},
    {"survival", true},      {"survive", false},       {"target", false},
    {"targets", true},       {"therapeutic", false},   {"therapeutical", false},
    {"therapy", true},       {"treatment", true},
}};

constexpr std::array<Keyword, 11> kNegative{{
    {"tumor", true},    {"cell", true},         {"mouse", true},    {"model", true},
    {"tissue", true},   {"development", true},  {"specific", true}, {"staining", true},
    {"pathogenesis", true}, {"case", true},     {"dna", true},
}};

}  // namespace

std::span<const std::string_view> stopwords()
{
    return kStopwords;
}

std::span<const Keyword> positive_keywords()
{
    return kPositive;
}

std::span<const Keyword> negative_keywords()
{
    return kNegative;
}

bool is_stopword(std::string_view token)
{
    auto lower = index::to_lower(token);
    return std::find(kStopwords.begin(), kStopwords.end(), lower) != kStopwords.end();
}

std::vector<std::string> filter_stopwords(std::vector<std::string> terms, bool enabled)
{
    if (enabled) {
        std::erase_if(terms, [](const std::string& t) { return is_stopword(t); });
    }
    return terms;
}

std::vector<Keyword> parse_keyword_list(std::string_view text, std::vector<std::string>& storage)
{
    std::vector<std::pair<std::string, bool>> entries;
    std::size_t line_no = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        bool starting = line.size() > 2 && line.substr(line.size() - 2) == " *";
        if (starting) {
            line.remove_suffix(2);
        }
        if (line.empty() || line.find_first_of(" \t*") != std::string_view::npos) {
            throw ParseError("word list", line_no, "expected one word per line");
        }
        entries.emplace_back(std::string(line), starting);
    }
    storage.clear();
    storage.reserve(entries.size());
    std::vector<Keyword> out;
    for (auto& [word, starting] : entries) {
        storage.push_back(std::move(word));
        out.push_back({storage.back(), starting});
    }
    return out;
}

std::string format_keyword_list(std::string_view header, std::span<const Keyword> words)
{
    std::string out;
    out += "# ";
    out += header;
    out += '\n';
    for (const auto& k : words) {
        out += k.word;
        out += k.starting ? " *\n" : "\n";
    }
    return out;
}

}  // namespace pmsearch::topics
