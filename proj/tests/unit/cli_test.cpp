#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <fmt/format.h>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

void spit(const fs::path& p, const std::string& text)
{
    std::ofstream out(p, std::ios::binary);
    out << text;
}

const fs::path toy = fs::path(PMSEARCH_FIXTURE_DIR) / "toy";
const fs::path golden = fs::path(PMSEARCH_FIXTURE_DIR) / "golden";
const fs::path data_dir = fs::path(PMSEARCH_FIXTURE_DIR).parent_path() / "data";

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        std::random_device rd;
        dir_ = fs::temp_directory_path() / fmt::format("pmsearch_cli_{:x}", static_cast<unsigned>(rd()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    Outcome run(const std::string& args) const
    {
        auto out = dir_ / "stdout.txt";
        auto err = dir_ / "stderr.txt";
        auto cmd = fmt::format("\"{}\" {} > \"{}\" 2> \"{}\"", PMSEARCH_CLI_PATH, args, out.string(), err.string());
        int status = std::system(cmd.c_str());
        Outcome o;
        o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        o.out = slurp(out);
        o.err = slurp(err);
        return o;
    }

    std::string at(const std::string& name) const { return (dir_ / name).string(); }

    static std::string toy_file(const std::string& name) { return (toy / name).string(); }

    std::string search_args(const std::string& extra = "") const
    {
        return fmt::format("search --corpus {} --topics {} --lexicon {} --task ba {}", toy_file("ba_corpus.jsonl"),
                           toy_file("topics.xml"), toy_file("lexicon.json"), extra);
    }

    fs::path dir_;
};

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

TEST_F(Cli, HelpAndBadUsage)
{
    EXPECT_EQ(run("--help").code, 0);
    EXPECT_NE(run("").code, 0);
    EXPECT_NE(run("frobnicate").code, 0);
    EXPECT_NE(run("search").code, 0);
}

TEST_F(Cli, IndexSnapshotIsIdempotent)
{
    auto a = run(fmt::format("index --corpus {} --out {}", toy_file("ba_corpus.jsonl"), at("a.idx")));
    auto b = run(fmt::format("index --corpus {} --out {}", toy_file("ba_corpus.jsonl"), at("b.idx")));
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_FALSE(slurp(at("a.idx")).empty());
    EXPECT_EQ(slurp(at("a.idx")), slurp(at("b.idx")));

    auto via_index =
        run(fmt::format("search --index {} --topics {} --lexicon {} --task ba --top-k 100 --tag toy", at("a.idx"),
                        toy_file("topics.xml"), toy_file("lexicon.json")));
    ASSERT_EQ(via_index.code, 0) << via_index.err;
    EXPECT_EQ(via_index.out, slurp(golden / "toy_default_ba.run"));
}

TEST_F(Cli, EmptyCorpusWarns)
{
    spit(at("empty.jsonl"), "");
    auto r = run(fmt::format("index --corpus {} --out {}", at("empty.jsonl"), at("e.idx")));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST_F(Cli, SearchMatchesGoldenRun)
{
    auto r = run(search_args("--top-k 100 --tag toy"));
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, slurp(golden / "toy_default_ba.run"));
}

TEST_F(Cli, SearchTopOne)
{
    auto r = run(search_args("--top-k 1"));
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = lines(r.out);
    EXPECT_FALSE(rows.empty());
    std::set<std::string> topics;
    for (const auto& row : rows) {
        std::istringstream in(row);
        std::string topic, q0, doc;
        int rank = 0;
        in >> topic >> q0 >> doc >> rank;
        EXPECT_EQ(rank, 1);
        EXPECT_TRUE(topics.insert(topic).second) << "topic listed twice: " << topic;
    }
}

TEST_F(Cli, SearchRejectsMissingInputs)
{
    auto r = run(fmt::format("search --corpus {} --topics {} --lexicon {}", toy_file("ba_corpus.jsonl"),
                             at("nope.xml"), toy_file("lexicon.json")));
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.err.rfind("error:", 0), 0u) << r.err;
    EXPECT_NE(run(search_args("--task xyz")).code, 0);
    EXPECT_NE(run(search_args("--set bm25.b=7")).code, 0);
    EXPECT_NE(run(search_args("--set no.such=1")).code, 0);
}

TEST_F(Cli, PresetChangesRanking)
{
    auto plain = run(search_args());
    auto tuned = run(search_args("--preset ba-optimal"));
    ASSERT_EQ(tuned.code, 0) << tuned.err;
    EXPECT_NE(plain.out, tuned.out);
    auto same = run(search_args("--set bm25.b=0.75 --set bm25.k1=1.2"));
    EXPECT_EQ(same.out, plain.out);
}

TEST_F(Cli, EvalOfIdealRunIsOne)
{
    // Ranking qrels rows by descending grade is ideal by construction.
    std::vector<std::tuple<std::string, int, std::string>> judged;
    std::istringstream in(slurp(toy / "ba_qrels.txt"));
    for (std::string topic, iter, doc; in >> topic >> iter >> doc;) {
        int grade = 0;
        in >> grade;
        judged.emplace_back(topic, -grade, doc);
    }
    std::sort(judged.begin(), judged.end());
    std::string run_text;
    std::map<std::string, int> rank;
    for (const auto& [topic, neg, doc] : judged) {
        int r = ++rank[topic];
        run_text += fmt::format("{} Q0 {} {} {} ideal\n", topic, doc, r, 1000 - r);
    }
    spit(at("ideal.run"), run_text);
    auto r = run(fmt::format("eval --run {} --qrels {} --metric ndcg", at("ideal.run"), toy_file("ba_qrels.txt")));
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = lines(r.out);
    ASSERT_FALSE(rows.empty());
    EXPECT_EQ(rows.front(), "topic,score");
    EXPECT_EQ(rows.back(), "mean,1");
}

TEST_F(Cli, InferredEqualsExactUnderFullSampling)
{
    // A sampled-qrels file whose single stratum per topic holds every judged document.
    std::map<std::string, std::vector<std::pair<std::string, int>>> judged;
    std::istringstream in(slurp(toy / "ba_qrels.txt"));
    for (std::string topic, iter, doc; in >> topic >> iter >> doc;) {
        int grade = 0;
        in >> grade;
        judged[topic].emplace_back(doc, grade);
    }
    std::string sampled;
    for (const auto& [topic, docs] : judged) {
        for (const auto& [doc, grade] : docs) {
            sampled += fmt::format("{} 1 {} {} {}\n", topic, docs.size(), doc, grade);
        }
    }
    spit(at("full_sampled.txt"), sampled);
    ASSERT_EQ(run(search_args("--out " + at("toy.run"))).code, 0);
    auto exact = run(fmt::format("eval --run {} --qrels {} --metric ndcg", at("toy.run"), toy_file("ba_qrels.txt")));
    auto inferred =
        run(fmt::format("eval --run {} --sampled {} --metric infndcg", at("toy.run"), at("full_sampled.txt")));
    ASSERT_EQ(exact.code, 0) << exact.err;
    ASSERT_EQ(inferred.code, 0) << inferred.err;
    auto a = lines(exact.out);
    auto b = lines(inferred.out);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 1; i < a.size(); ++i) {
        auto ca = a[i].find(','), cb = b[i].find(',');
        EXPECT_EQ(a[i].substr(0, ca), b[i].substr(0, cb));
        EXPECT_NEAR(std::stod(a[i].substr(ca + 1)), std::stod(b[i].substr(cb + 1)), 1e-12) << a[i];
    }
}

TEST_F(Cli, OptimizeThenAblate)
{
    auto opt = run(fmt::format("--jobs 3 optimize --manifest {} --out {}", toy_file("ba_manifest.json"), at("opt")));
    ASSERT_EQ(opt.code, 0) << opt.err;
    for (int f = 0; f < 3; ++f) {
        EXPECT_TRUE(fs::exists(dir_ / "opt" / fmt::format("best_fold_{}.json", f)));
        auto trace = lines(slurp(dir_ / "opt" / fmt::format("trace_fold_{}.csv", f)));
        EXPECT_EQ(trace.size(), 51u);
    }
    EXPECT_FALSE(fs::exists(dir_ / "opt" / "best_fold_3.json"));
    auto summary = lines(slurp(dir_ / "opt" / "summary.csv"));
    ASSERT_EQ(summary.size(), 4u);
    for (std::size_t i = 1; i < summary.size(); ++i) {
        std::vector<double> v;
        std::istringstream row(summary[i]);
        for (std::string cell; std::getline(row, cell, ',');) {
            v.push_back(std::stod(cell));
        }
        ASSERT_EQ(v.size(), 5u);
        EXPECT_GE(v[2], v[1]);
    }

    auto bare = run(fmt::format("ablate --manifest {} --best {} --no-groups --out {}", toy_file("ba_manifest.json"),
                                at("opt"), at("bare")));
    ASSERT_EQ(bare.code, 0) << bare.err;
    auto rows = lines(slurp(dir_ / "bare" / "ablation.csv"));
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0], "group,score,delta_percent,p_value,stars");
    EXPECT_EQ(rows[1].rfind("baseline,", 0), 0u);

    auto full = run(fmt::format("ablate --manifest {} --best {} --out {}", toy_file("ba_manifest.json"), at("opt"),
                                at("full")));
    ASSERT_EQ(full.code, 0) << full.err;
    auto text = slurp(dir_ / "full" / "ablation.txt");
    EXPECT_NE(text.find("Reduced model"), std::string::npos);
    EXPECT_NE(text.find("Gene expansion"), std::string::npos);
    EXPECT_GT(lines(slurp(dir_ / "full" / "ablation.csv")).size(), 20u);
}

TEST_F(Cli, OptimizeIsReproducible)
{
    auto manifest = toy_file("ct_manifest.json");
    ASSERT_EQ(run(fmt::format("optimize --manifest {} --budget 15 --out {}", manifest, at("a"))).code, 0);
    ASSERT_EQ(run(fmt::format("--jobs 4 optimize --manifest {} --budget 15 --out {}", manifest, at("b"))).code, 0);
    for (const auto* name : {"summary.csv", "folds.json", "best_fold_0.json", "history_fold_2.csv"}) {
        auto a = slurp(dir_ / "a" / name);
        EXPECT_FALSE(a.empty()) << name;
        EXPECT_EQ(a, slurp(dir_ / "b" / name)) << name;
    }
}

TEST_F(Cli, SynthIsDeterministic)
{
    ASSERT_EQ(run("synth --seed 1 --out " + at("s1")).code, 0);
    ASSERT_EQ(run("synth --seed 1 --out " + at("s2")).code, 0);
    ASSERT_EQ(run("synth --seed 2 --out " + at("s3")).code, 0);
    for (const auto& entry : fs::directory_iterator(toy)) {
        auto name = entry.path().filename();
        if (name.extension() == ".json" && name.string().find("manifest") != std::string::npos) {
            continue;
        }
        EXPECT_EQ(slurp(dir_ / "s1" / name), slurp(dir_ / "s2" / name)) << name;
        EXPECT_EQ(slurp(dir_ / "s1" / name), slurp(entry.path())) << name;
    }
    EXPECT_NE(slurp(dir_ / "s1" / "ba_corpus.jsonl"), slurp(dir_ / "s3" / "ba_corpus.jsonl"));
}

TEST_F(Cli, ConfigAndSpaceRoundTrip)
{
    auto r = run("config --preset ct-optimal --out " + at("ct.json"));
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(slurp(at("ct.json")), slurp(data_dir / "presets" / "ct-optimal.json"));
    ASSERT_EQ(run("space --out " + at("space.json")).code, 0);
    EXPECT_EQ(slurp(at("space.json")), slurp(data_dir / "param_space.json"));
}

TEST_F(Cli, FoldsBalanceShown)
{
    auto r = run(fmt::format("folds --topics {} --k 3 --seed 5", toy_file("topics.xml")));
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_FALSE(r.out.empty());
}

}  // namespace
