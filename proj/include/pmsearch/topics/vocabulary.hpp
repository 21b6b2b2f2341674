#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pmsearch::topics {

/// A candidate boosting keyword; `starting` marks the warm-start subset.
struct Keyword {
    std::string_view word;
    bool starting;
};

/// Domain stop words, applied all-or-nothing.
std::span<const std::string_view> stopwords();
std::span<const Keyword> positive_keywords();
std::span<const Keyword> negative_keywords();

bool is_stopword(std::string_view token);

/// Removes stop words (case-insensitive) when enabled; identity otherwise.
std::vector<std::string> filter_stopwords(std::vector<std::string> terms, bool enabled);

// Word-list files: one entry per line, '#' starts a comment line, a trailing
// " *" marks a starting-set keyword.
std::vector<Keyword> parse_keyword_list(std::string_view text, std::vector<std::string>& storage);
std::string format_keyword_list(std::string_view header, std::span<const Keyword> words);

}  // namespace pmsearch::topics
