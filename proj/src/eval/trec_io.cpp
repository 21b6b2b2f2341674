#include "pmsearch/eval/trec_io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "pmsearch/error.hpp"

namespace pmsearch::eval {

namespace {

std::vector<std::string_view> fields_of(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') {
            ++j;
        }
        if (j > i) {
            out.push_back(line.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

/// Calls fn(fields, line_no) for every non-blank line.
template <typename Fn>
void for_each_line(std::istream& in, Fn fn)
{
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto f = fields_of(line);
        if (!f.empty()) {
            fn(f, line_no);
        }
    }
}

template <typename T>
T number(std::string_view text, const std::string& source, std::size_t line, const char* what)
{
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError(source, line, fmt::format("bad {} '{}'", what, text));
    }
    return value;
}

Grade grade(std::string_view text, const std::string& source, std::size_t line)
{
    auto g = number<int>(text, source, line, "grade");
    if (g < 0 || g > 2) {
        throw ParseError(source, line, fmt::format("grade {} outside 0..2", g));
    }
    return g;
}

void expect_arity(const std::vector<std::string_view>& f, std::size_t n, const std::string& source,
                  std::size_t line)
{
    if (f.size() != n) {
        throw ParseError(source, line, fmt::format("expected {} fields, found {}", n, f.size()));
    }
}

template <typename T, typename Reader>
T read_file(const std::string& path, Reader reader)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path);
    }
    return reader(in, path);
}

}  // namespace

Qrels read_qrels(std::istream& in, const std::string& source)
{
    Qrels q;
    for_each_line(in, [&](const auto& f, std::size_t line) {
        expect_arity(f, 4, source, line);
        auto topic = number<TopicId>(f[0], source, line, "topic");
        if (!q.topics[topic].emplace(std::string(f[2]), grade(f[3], source, line)).second) {
            throw ParseError(source, line, fmt::format("duplicate judgment for {}", f[2]));
        }
    });
    return q;
}

void write_qrels(std::ostream& out, const Qrels& qrels)
{
    for (const auto& [topic, judgments] : qrels.topics) {
        for (const auto& [doc, g] : judgments) {
            out << fmt::format("{} 0 {} {}\n", topic, doc, g);
        }
    }
}

Run read_run(std::istream& in, const std::string& source)
{
    Run run;
    bool tagged = false;
    std::map<TopicId, std::map<long, RunEntry>> ranked;
    std::map<TopicId, std::set<std::string, std::less<>>> seen;
    for_each_line(in, [&](const auto& f, std::size_t line) {
        expect_arity(f, 6, source, line);
        auto topic = number<TopicId>(f[0], source, line, "topic");
        auto rank = number<long>(f[3], source, line, "rank");
        auto score = number<double>(f[4], source, line, "score");
        if (rank < 1) {
            throw ParseError(source, line, "rank must be >= 1");
        }
        if (!tagged) {
            run.tag = std::string(f[5]);
            tagged = true;
        } else if (f[5] != run.tag) {
            throw ParseError(source, line, "run tag differs from earlier lines");
        }
        if (!seen[topic].insert(std::string(f[2])).second) {
            throw ParseError(source, line, fmt::format("document {} repeated in topic {}", f[2], topic));
        }
        if (!ranked[topic].emplace(rank, RunEntry{std::string(f[2]), score}).second) {
            throw ParseError(source, line, fmt::format("rank {} repeated in topic {}", rank, topic));
        }
        if (ranked[topic].size() > kMaxRunDepth) {
            throw ParseError(source, line, fmt::format("topic {} exceeds {} entries", topic, kMaxRunDepth));
        }
    });
    for (auto& [topic, entries] : ranked) {
        auto& list = run.topics[topic];
        for (auto& [rank, entry] : entries) {
            list.push_back(std::move(entry));
        }
    }
    return run;
}

void write_run(std::ostream& out, const Run& run)
{
    for (const auto& [topic, entries] : run.topics) {
        if (entries.size() > kMaxRunDepth) {
            throw InvalidArgument(fmt::format("topic {} exceeds {} entries", topic, kMaxRunDepth));
        }
        for (std::size_t i = 0; i < entries.size(); ++i) {
            out << fmt::format("{} Q0 {} {} {} {}\n", topic, entries[i].doc_id, i + 1,
                               entries[i].score, run.tag);
        }
    }
}

SampledQrels read_sampled_qrels(std::istream& in, const std::string& source)
{
    std::map<TopicId, std::map<int, Stratum>> strata;
    std::map<TopicId, std::set<std::string, std::less<>>> seen;
    for_each_line(in, [&](const auto& f, std::size_t line) {
        expect_arity(f, 5, source, line);
        auto topic = number<TopicId>(f[0], source, line, "topic");
        auto id = number<int>(f[1], source, line, "stratum");
        auto pool = number<std::size_t>(f[2], source, line, "pool size");
        auto& s = strata[topic][id];
        if (s.sampled.empty()) {
            s.id = id;
            s.pool_size = pool;
        } else if (s.pool_size != pool) {
            throw ParseError(source, line, "pool size differs within a stratum");
        }
        if (!seen[topic].insert(std::string(f[3])).second) {
            throw ParseError(source, line, fmt::format("document {} repeated in topic {}", f[3], topic));
        }
        s.sampled.push_back({std::string(f[3]), grade(f[4], source, line)});
        if (s.sampled.size() > s.pool_size) {
            throw ParseError(source, line, "stratum sample exceeds its pool size");
        }
    });
    SampledQrels out;
    for (auto& [topic, by_id] : strata) {
        for (auto& [id, s] : by_id) {
            out.topics[topic].push_back(std::move(s));
        }
    }
    return out;
}

void write_sampled_qrels(std::ostream& out, const SampledQrels& sampled)
{
    for (const auto& [topic, strata] : sampled.topics) {
        for (const auto& s : strata) {
            for (const auto& d : s.sampled) {
                out << fmt::format("{} {} {} {} {}\n", topic, s.id, s.pool_size, d.doc_id, d.grade);
            }
        }
    }
}

Qrels flatten(const SampledQrels& sampled)
{
    Qrels q;
    for (const auto& [topic, strata] : sampled.topics) {
        auto& j = q.topics[topic];
        for (const auto& s : strata) {
            for (const auto& d : s.sampled) {
                j[d.doc_id] = d.grade;
            }
        }
    }
    return q;
}

Qrels read_qrels_file(const std::string& path)
{
    return read_file<Qrels>(path, [](std::istream& in, const std::string& p) { return read_qrels(in, p); });
}

Run read_run_file(const std::string& path)
{
    return read_file<Run>(path, [](std::istream& in, const std::string& p) { return read_run(in, p); });
}

SampledQrels read_sampled_qrels_file(const std::string& path)
{
    return read_file<SampledQrels>(
        path, [](std::istream& in, const std::string& p) { return read_sampled_qrels(in, p); });
}

}  // namespace pmsearch::eval
