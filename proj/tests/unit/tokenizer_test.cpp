#include <gtest/gtest.h>

#include "naive_scorer.hpp"
#include "pmsearch/index/document.hpp"
#include "pmsearch/index/tokenizer.hpp"

using namespace pmsearch::index;

TEST(Tokenizer, LowercasesAndNumbersPositions)
{
    std::vector<Token> expected{{"idh1", 0}, {"mutation", 1}};
    EXPECT_EQ(tokenize("IDH1 mutation"), expected);
}

TEST(Tokenizer, EmptyInput)
{
    EXPECT_TRUE(tokenize("").empty());
    EXPECT_TRUE(tokenize("  -- ,, ").empty());
}

TEST(Tokenizer, HyphenSeparates)
{
    std::vector<Token> expected{{"non", 0}, {"melanoma", 1}, {"skin", 2}};
    EXPECT_EQ(tokenize("non-melanoma skin"), expected);
}

TEST(Tokenizer, NonAsciiBytesSeparate)
{
    EXPECT_EQ(tokenize_terms("caf\xc3\xa9 BRAF(V600E)"),
              (std::vector<std::string>{"caf", "braf", "v600e"}));
}

TEST(Tokenizer, AgreesWithIndependentSplitter)
{
    const char* samples[] = {"Non-Small Cell Lung Cancer", "BRCA1/2 carriers; 40% (n=12)",
                             "  leading and trailing  ", "a1b2-C3D4_e5", ""};
    for (const char* s : samples) {
        EXPECT_EQ(tokenize_terms(s), pmsearch::testkit::naive_tokens(s)) << s;
    }
}

TEST(FieldTokens, ListEntriesAreSeparatedByAGap)
{
    Document d;
    d.doc_id = "x";
    d.mesh = {"Colorectal Neoplasms", "", "Humans"};
    auto toks = field_tokens(d, Field::mesh);
    ASSERT_EQ(toks.size(), 3u);
    EXPECT_EQ(toks[0].position, 0u);
    EXPECT_EQ(toks[1].position, 1u);
    EXPECT_EQ(toks[2].position, 3u);
}

TEST(FieldNames, RoundTrip)
{
    for (auto f : kAllFields) {
        EXPECT_EQ(parse_field(field_name(f)), f);
    }
    EXPECT_FALSE(parse_field("body").has_value());
    EXPECT_EQ(parse_sex("Female"), Sex::female);
    EXPECT_FALSE(parse_sex("unknown").has_value());
}
