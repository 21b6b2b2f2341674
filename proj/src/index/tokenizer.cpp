#include "pmsearch/index/tokenizer.hpp"

#include <cctype>

namespace pmsearch::index {

namespace {

bool is_token_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && !is_token_char(text[i])) {
            ++i;
        }
        std::size_t start = i;
        while (i < text.size() && is_token_char(text[i])) {
            ++i;
        }
        if (i > start) {
            tokens.push_back(
                {to_lower(text.substr(start, i - start)), static_cast<std::uint32_t>(tokens.size())});
        }
    }
    return tokens;
}

std::vector<std::string> tokenize_terms(std::string_view text)
{
    std::vector<std::string> terms;
    for (auto& token : tokenize(text)) {
        terms.push_back(std::move(token.text));
    }
    return terms;
}

std::string to_lower(std::string_view text)
{
    std::string out(text);
    for (auto& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

std::string to_upper(std::string_view text)
{
    std::string out(text);
    for (auto& c : out) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return out;
}

}  // namespace pmsearch::index
