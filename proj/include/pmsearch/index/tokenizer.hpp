#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pmsearch::index {

struct Token {
    std::string text;
    std::uint32_t position = 0;

    friend bool operator==(const Token&, const Token&) = default;
};

/// Lowercases ASCII letters and splits on every non-alphanumeric byte.
/// Positions are 0-based token indices.
std::vector<Token> tokenize(std::string_view text);

/// Token texts only, in order.
std::vector<std::string> tokenize_terms(std::string_view text);

std::string to_lower(std::string_view text);
std::string to_upper(std::string_view text);

}  // namespace pmsearch::index
