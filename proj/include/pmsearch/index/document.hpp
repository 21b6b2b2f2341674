#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmsearch/index/tokenizer.hpp"

namespace pmsearch::index {

enum class Sex : std::uint8_t { male, female, all };

std::string_view sex_name(Sex sex);
/// Accepts "male", "female", "all" in any case.
std::optional<Sex> parse_sex(std::string_view text);

/// Searchable fields. Title and abstract are running text; mesh and gene are
/// term lists (gene holds precomputed tagger annotations).
enum class Field : std::uint8_t { title, abstract, mesh, gene };

inline constexpr std::array<Field, 4> kAllFields{Field::title, Field::abstract, Field::mesh,
                                                 Field::gene};
inline constexpr std::size_t kFieldCount = kAllFields.size();

std::string_view field_name(Field field);
std::optional<Field> parse_field(std::string_view name);

constexpr std::size_t field_slot(Field field) { return static_cast<std::size_t>(field); }

struct Document {
    std::string doc_id;
    std::string title;
    std::string abstract;
    std::vector<std::string> mesh;
    std::vector<std::string> gene;
    std::optional<int> min_age;
    std::optional<int> max_age;
    std::optional<Sex> sex;

    friend bool operator==(const Document&, const Document&) = default;
};

/// Throws InvalidArgument when doc_id is empty or min_age > max_age.
void validate(const Document& doc);

/// Gap inserted between consecutive entries of a term-list field, so a phrase
/// can never match across two MeSH headings or two gene annotations.
inline constexpr std::uint32_t kEntryPositionGap = 1;

/// Token stream of one field. Term-list entries are tokenized individually and
/// laid out with kEntryPositionGap unused positions between them.
std::vector<Token> field_tokens(const Document& doc, Field field);

}  // namespace pmsearch::index
