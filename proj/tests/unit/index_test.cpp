#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "naive_scorer.hpp"
#include "pmsearch/error.hpp"
#include "pmsearch/index/bm25.hpp"
#include "pmsearch/index/corpus_io.hpp"
#include "pmsearch/index/index.hpp"
#include "random_corpus.hpp"

using namespace pmsearch;
using namespace pmsearch::index;

namespace {

Document titled(std::string id, std::string title)
{
    Document d;
    d.doc_id = std::move(id);
    d.title = std::move(title);
    return d;
}

std::vector<Document> three_titles()
{
    return {titled("d1", "cancer therapy"), titled("d2", "cancer"), titled("d3", "gene therapy")};
}

}  // namespace

TEST(BuildIndex, SingleDocumentCounts)
{
    auto index = Index::build({titled("d1", "cancer cancer")});
    EXPECT_EQ(index.field(Field::title).df("cancer"), 1u);
    EXPECT_EQ(index.tf(Field::title, "cancer", 0), 2u);
    EXPECT_EQ(index.field(Field::title).doc_length(0), 2u);
    auto positions = index.field(Field::title).postings("cancer")->positions(0);
    EXPECT_EQ(std::vector<std::uint32_t>(positions.begin(), positions.end()),
              (std::vector<std::uint32_t>{0, 1}));
}

TEST(BuildIndex, ThreeDocumentStatistics)
{
    auto index = Index::build(three_titles());
    EXPECT_EQ(index.doc_count(), 3u);
    EXPECT_EQ(index.field(Field::title).df("therapy"), 2u);
    EXPECT_DOUBLE_EQ(index.field(Field::title).avg_length(), 5.0 / 3.0);
    EXPECT_DOUBLE_EQ(index.field(Field::abstract).avg_length(), 0.0);
}

TEST(BuildIndex, EmptyCorpus)
{
    auto index = Index::build({});
    EXPECT_EQ(index.doc_count(), 0u);
    EXPECT_TRUE(index.field(Field::title).terms().empty());
    EXPECT_EQ(idf(index, Field::title, "cancer"), 0.0);
}

TEST(BuildIndex, DuplicateIdIsRejectedByName)
{
    try {
        Index::build({titled("NCT01", "a"), titled("NCT01", "b")});
        FAIL() << "expected rejection";
    } catch (const InvalidArgument& e) {
        EXPECT_NE(std::string(e.what()).find("NCT01"), std::string::npos);
    }
}

TEST(BuildIndex, InvalidAgeRangeRejected)
{
    auto d = titled("x", "t");
    d.min_age = 60;
    d.max_age = 18;
    EXPECT_THROW(Index::build({d}), InvalidArgument);
    EXPECT_THROW(Index::build({titled("", "t")}), InvalidArgument);
}

TEST(Idf, HandCases)
{
    EXPECT_NEAR(idf(3, 1), std::log(5.0 / 3.0), 1e-15);
    EXPECT_NEAR(idf(3, 1), 0.5108, 1e-4);
    EXPECT_LT(idf(3, 2), 0.0);
    EXPECT_NEAR(idf(3, 2), std::log(0.6), 1e-15);
    EXPECT_EQ(idf(0, 0), 0.0);
}

TEST(Bm25TermScore, WorkedExample)
{
    auto index = Index::build(three_titles());
    Bm25Params params;
    double expected = std::log(2.5 / 1.5) * 2.2 / 2.38;
    double got = bm25_term_score(index, Field::title, "gene", "d3", params);
    EXPECT_NEAR(got, expected, 1e-12);
    EXPECT_NEAR(got, 0.4722, 1e-4);
}

TEST(Bm25TermScore, AbsentAndUnknown)
{
    auto index = Index::build(three_titles());
    Bm25Params params;
    EXPECT_EQ(bm25_term_score(index, Field::title, "gene", "d1", params), 0.0);
    EXPECT_EQ(bm25_term_score(index, Field::title, "unseen", "d1", params), 0.0);
    EXPECT_THROW(bm25_term_score(index, Field::title, "gene", "nope", params), InvalidArgument);
}

TEST(Bm25Params, DefaultsAndRanges)
{
    Bm25Params p;
    EXPECT_EQ(p.k1, 1.2);
    EXPECT_EQ(p.b, 0.75);
    EXPECT_NO_THROW(p.validate());
    EXPECT_THROW((Bm25Params{2.5, 0.5}.validate()), InvalidArgument);
    EXPECT_THROW((Bm25Params{1.0, -0.1}.validate()), InvalidArgument);
}

TEST(Bm25Properties, MonotoneInTfAndLength)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> k1d(0.01, 2.0);
    std::uniform_real_distribution<double> bd(0.01, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        Bm25Params p{k1d(rng), bd(rng)};
        int tf = 1 + static_cast<int>(rng() % 5);
        int pad = static_cast<int>(rng() % 5);
        auto words = [](int n, const std::string& w) {
            std::string s;
            for (int i = 0; i < n; ++i) {
                s += w + " ";
            }
            return s;
        };
        // d1 vs d2: one more occurrence, same length. d1 vs d3: same tf, longer.
        std::vector<Document> docs{titled("d1", words(tf, "x") + words(pad + 1, "y")),
                                   titled("d2", words(tf + 1, "x") + words(pad, "y")),
                                   titled("d3", words(tf, "x") + words(pad + 3, "y")),
                                   titled("d4", "z z z"), titled("d5", "z"),
                                   titled("d6", "z"),     titled("d7", "z z"),
                                   titled("d8", "z")};
        auto index = Index::build(docs);
        double base = bm25_term_score(index, Field::title, "x", "d1", p);
        EXPECT_GT(bm25_term_score(index, Field::title, "x", "d2", p), base);
        EXPECT_LT(bm25_term_score(index, Field::title, "x", "d3", p), base);
    }
}

TEST(Bm25Properties, ZeroBIgnoresLength)
{
    std::vector<Document> docs{titled("a", "x y"), titled("b", "x y y y y y y"), titled("c", "q"),
                               titled("d", "q")};
    auto index = Index::build(docs);
    Bm25Params p{1.2, 0.0};
    EXPECT_EQ(bm25_term_score(index, Field::title, "x", "a", p),
              bm25_term_score(index, Field::title, "x", "b", p));
}

TEST(Bm25Properties, MatchesBruteForceOracle)
{
    std::mt19937_64 rng(2024);
    for (int c = 0; c < 8; ++c) {
        auto docs = testkit::random_corpus(rng, {300, 30, true});
        auto index = Index::build(docs);
        Bm25Params p{std::uniform_real_distribution<double>(0, 2)(rng),
                     std::uniform_real_distribution<double>(0, 1)(rng)};
        testkit::NaiveScorer oracle(docs, p);
        for (int q = 0; q < 200; ++q) {
            auto field = kAllFields[rng() % kFieldCount];
            auto term = testkit::vocab_word(rng() % 30);
            auto d = rng() % docs.size();
            EXPECT_NEAR(bm25_term_score(index, field, term, docs[d].doc_id, p),
                        oracle.term_score(field, term, d), 1e-9);
            EXPECT_EQ(index.field(field).df(term), oracle.df(field, term));
        }
        for (auto f : kAllFields) {
            EXPECT_DOUBLE_EQ(index.field(f).avg_length(), oracle.avg_length(f));
        }
    }
}

TEST(Snapshot, RoundTripsAndIsDeterministic)
{
    std::mt19937_64 rng(5);
    auto docs = testkit::random_corpus(rng, {200, 25, true});
    auto index = Index::build(docs);
    std::stringstream first;
    index.write_snapshot(first);
    auto bytes = first.str();
    auto loaded = Index::read_snapshot(first);
    EXPECT_EQ(loaded, index);
    std::stringstream second;
    Index::build(docs).write_snapshot(second);
    EXPECT_EQ(second.str(), bytes);
}

TEST(Snapshot, RejectsGarbage)
{
    std::stringstream bad("not an index");
    EXPECT_THROW(Index::read_snapshot(bad), ParseError);
    std::stringstream out;
    Index::build(three_titles()).write_snapshot(out);
    auto bytes = out.str();
    std::stringstream truncated(bytes.substr(0, bytes.size() - 3));
    EXPECT_THROW(Index::read_snapshot(truncated), ParseError);
}

TEST(CorpusIo, ParsesCanonicalLines)
{
    std::stringstream in(
        R"({"doc_id":"NCT1","title":"IDH1 trial","abstract":"","mesh":["Cholangiocarcinoma"],"gene":["IDH1"],"min_age":18,"max_age":75,"sex":"all"})"
        "\n\n"
        R"({"doc_id":"PM2","title":"t","abstract":"a","mesh":[],"gene":[]})"
        "\n");
    auto docs = read_corpus(in);
    ASSERT_EQ(docs.size(), 2u);
    EXPECT_EQ(docs[0].min_age, 18);
    EXPECT_EQ(docs[0].sex, Sex::all);
    EXPECT_FALSE(docs[1].sex.has_value());
    std::stringstream out;
    write_corpus(out, docs);
    EXPECT_EQ(out.str(),
              R"({"doc_id":"NCT1","title":"IDH1 trial","abstract":"","mesh":["Cholangiocarcinoma"],"gene":["IDH1"],"min_age":18,"max_age":75,"sex":"all"})"
              "\n"
              R"({"doc_id":"PM2","title":"t","abstract":"a","mesh":[],"gene":[]})"
              "\n");
}

TEST(CorpusIo, ErrorsCarryLineNumbers)
{
    const char* bad[] = {
        "{\"doc_id\":\"a\",\"title\":\"t\",\"abstract\":\"\",\"mesh\":[],\"gene\":[]}\n{broken\n",
        "{\"doc_id\":\"a\",\"title\":\"t\",\"abstract\":\"\",\"mesh\":[],\"gene\":[]}\n"
        "{\"doc_id\":\"b\",\"title\":\"t\",\"abstract\":\"\",\"mesh\":[],\"gene\":[],\"extra\":1}\n",
        "{\"doc_id\":\"a\",\"title\":\"t\",\"abstract\":\"\",\"mesh\":[],\"gene\":[]}\n"
        "{\"doc_id\":\"b\",\"title\":\"t\",\"abstract\":\"\",\"mesh\":\"x\",\"gene\":[]}\n",
    };
    for (const char* text : bad) {
        std::stringstream in(text);
        try {
            read_corpus(in);
            FAIL() << "expected ParseError";
        } catch (const ParseError& e) {
            EXPECT_EQ(e.line(), 2u) << e.what();
        }
    }
}

TEST(CorpusIo, RoundTripProperty)
{
    std::mt19937_64 rng(77);
    for (int i = 0; i < 5; ++i) {
        auto docs = testkit::random_corpus(rng, {50, 20, true});
        std::stringstream out;
        write_corpus(out, docs);
        auto text = out.str();
        std::stringstream in(text);
        EXPECT_EQ(read_corpus(in), docs);
    }
}
