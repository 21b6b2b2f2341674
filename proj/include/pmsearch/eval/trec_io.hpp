#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace pmsearch::eval {

using TopicId = int;

/// Relevance grade: 0 not, 1 partially, 2 definitely relevant.
using Grade = int;

using Judgments = std::map<std::string, Grade, std::less<>>;

struct Qrels {
    std::map<TopicId, Judgments> topics;

    friend bool operator==(const Qrels&, const Qrels&) = default;
};

struct RunEntry {
    std::string doc_id;
    double score = 0.0;

    friend bool operator==(const RunEntry&, const RunEntry&) = default;
};

inline constexpr std::size_t kMaxRunDepth = 1000;

/// Per topic, entries in rank order (rank = position + 1).
struct Run {
    std::string tag = "pmsearch";
    std::map<TopicId, std::vector<RunEntry>> topics;

    friend bool operator==(const Run&, const Run&) = default;
};

struct SampledDoc {
    std::string doc_id;
    Grade grade = 0;

    friend bool operator==(const SampledDoc&, const SampledDoc&) = default;
};

/// A judged-pool stratum: `sampled` was drawn uniformly from `pool_size` pooled documents.
struct Stratum {
    int id = 0;
    std::size_t pool_size = 0;
    std::vector<SampledDoc> sampled;

    friend bool operator==(const Stratum&, const Stratum&) = default;
};

struct SampledQrels {
    std::map<TopicId, std::vector<Stratum>> topics;  ///< strata ordered by id

    friend bool operator==(const SampledQrels&, const SampledQrels&) = default;
};

// Line formats, whitespace-separated:
//   qrels          topic 0 doc grade
//   run            topic Q0 doc rank score tag
//   sampled qrels  topic stratum pool_size doc grade
// Writers emit single spaces, topics ascending, and scores in shortest
// round-trip form, so write(read(x)) == x for any file a writer produced.
// Readers throw ParseError with the line number.

Qrels read_qrels(std::istream& in, const std::string& source = "qrels");
void write_qrels(std::ostream& out, const Qrels& qrels);

/// Entries per topic are ordered by rank; ranks must be unique, a document
/// may appear once per topic, and at most kMaxRunDepth entries per topic.
Run read_run(std::istream& in, const std::string& source = "run");
void write_run(std::ostream& out, const Run& run);

/// pool_size must agree across a stratum's lines and be >= its sample size.
SampledQrels read_sampled_qrels(std::istream& in, const std::string& source = "sampled qrels");
void write_sampled_qrels(std::ostream& out, const SampledQrels& sampled);

/// Every sampled document with its grade, ignoring strata.
Qrels flatten(const SampledQrels& sampled);

Qrels read_qrels_file(const std::string& path);
Run read_run_file(const std::string& path);
SampledQrels read_sampled_qrels_file(const std::string& path);

}  // namespace pmsearch::eval
