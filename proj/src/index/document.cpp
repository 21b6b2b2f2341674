#include "pmsearch/index/document.hpp"

#include "pmsearch/error.hpp"

namespace pmsearch::index {

std::string_view sex_name(Sex sex)
{
    switch (sex) {
    case Sex::male: return "male";
    case Sex::female: return "female";
    case Sex::all: return "all";
    }
    return "all";
}

std::optional<Sex> parse_sex(std::string_view text)
{
    auto lower = to_lower(text);
    if (lower == "male") {
        return Sex::male;
    }
    if (lower == "female") {
        return Sex::female;
    }
    if (lower == "all") {
        return Sex::all;
    }
    return std::nullopt;
}

std::string_view field_name(Field field)
{
    switch (field) {
    case Field::title: return "title";
    case Field::abstract: return "abstract";
    case Field::mesh: return "mesh";
    case Field::gene: return "gene";
    }
    return "title";
}

std::optional<Field> parse_field(std::string_view name)
{
    for (auto field : kAllFields) {
        if (field_name(field) == name) {
            return field;
        }
    }
    return std::nullopt;
}

void validate(const Document& doc)
{
    if (doc.doc_id.empty()) {
        throw InvalidArgument("document with empty doc_id");
    }
    if (doc.min_age && doc.max_age && *doc.min_age > *doc.max_age) {
        throw InvalidArgument("document " + doc.doc_id + ": min_age exceeds max_age");
    }
}

namespace {

std::vector<Token> list_tokens(const std::vector<std::string>& entries)
{
    std::vector<Token> out;
    std::uint32_t next = 0;
    for (const auto& entry : entries) {
        auto tokens = tokenize(entry);
        if (tokens.empty()) {
            continue;
        }
        if (!out.empty()) {
            next += kEntryPositionGap;
        }
        for (auto& token : tokens) {
            token.position = next++;
            out.push_back(std::move(token));
        }
    }
    return out;
}

}  // namespace

std::vector<Token> field_tokens(const Document& doc, Field field)
{
    switch (field) {
    case Field::title: return tokenize(doc.title);
    case Field::abstract: return tokenize(doc.abstract);
    case Field::mesh: return list_tokens(doc.mesh);
    case Field::gene: return list_tokens(doc.gene);
    }
    return {};
}

}  // namespace pmsearch::index
