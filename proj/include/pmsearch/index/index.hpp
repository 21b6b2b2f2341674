#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pmsearch/index/document.hpp"

namespace pmsearch::index {

using DocOrdinal = std::uint32_t;

/// What the index keeps of a document once its text has been inverted.
struct DocumentMeta {
    std::string doc_id;
    std::optional<int> min_age;
    std::optional<int> max_age;
    std::optional<Sex> sex;

    friend bool operator==(const DocumentMeta&, const DocumentMeta&) = default;
};

/// Postings of one term in one field, stored column-wise. The parallel
/// term-frequency and document-length columns feed the batch BM25 kernel
/// directly.
class PostingList {
  public:
    std::size_t size() const { return docs_.size(); }
    std::span<const DocOrdinal> docs() const { return docs_; }
    std::span<const double> term_frequencies() const { return tf_; }
    std::span<const double> doc_lengths() const { return lengths_; }
    /// Strictly increasing positions of the i-th posting.
    std::span<const std::uint32_t> positions(std::size_t i) const
    {
        return std::span<const std::uint32_t>(positions_).subspan(offsets_[i],
                                                                  offsets_[i + 1] - offsets_[i]);
    }
    /// Index into docs() of `doc`, if present.
    std::optional<std::size_t> find(DocOrdinal doc) const;

    void append(DocOrdinal doc, double doc_length, std::span<const std::uint32_t> positions);

    friend bool operator==(const PostingList&, const PostingList&) = default;

  private:
    std::vector<DocOrdinal> docs_;
    std::vector<double> tf_;
    std::vector<double> lengths_;
    std::vector<std::uint32_t> offsets_{0};
    std::vector<std::uint32_t> positions_;
};

using TermMap = std::map<std::string, PostingList, std::less<>>;

/// Per-field statistics: document frequencies, lengths, and postings.
class FieldStats {
  public:
    FieldStats() = default;
    FieldStats(TermMap terms, std::vector<std::uint32_t> doc_lengths);

    const PostingList* postings(std::string_view term) const;
    std::size_t df(std::string_view term) const;
    std::uint32_t doc_length(DocOrdinal doc) const { return doc_lengths_.at(doc); }
    std::span<const std::uint32_t> doc_lengths() const { return doc_lengths_; }
    /// Mean token count over all documents of the corpus (0 for an empty corpus).
    double avg_length() const { return avg_length_; }
    const TermMap& terms() const { return terms_; }

    friend bool operator==(const FieldStats&, const FieldStats&) = default;

  private:
    TermMap terms_;
    std::vector<std::uint32_t> doc_lengths_;
    double avg_length_ = 0.0;
};

/// Immutable inverted index over fielded documents. All accessors are const
/// and safe to call from several threads at once.
class Index {
  public:
    Index() = default;

    /// Throws InvalidArgument naming the id on duplicate doc_id, or on any
    /// document that fails validate().
    static Index build(const std::vector<Document>& docs);

    std::size_t doc_count() const { return docs_.size(); }
    const DocumentMeta& doc(DocOrdinal ordinal) const { return docs_.at(ordinal); }
    std::span<const DocumentMeta> docs() const { return docs_; }
    std::optional<DocOrdinal> find(std::string_view doc_id) const;

    const FieldStats& field(Field f) const { return fields_[field_slot(f)]; }

    /// Raw term frequency, 0 when absent.
    std::uint32_t tf(Field f, std::string_view term, DocOrdinal doc) const;

    void write_snapshot(std::ostream& out) const;
    static Index read_snapshot(std::istream& in);

    friend bool operator==(const Index&, const Index&) = default;

  private:
    void rebuild_lookup();

    std::vector<DocumentMeta> docs_;
    std::array<FieldStats, kFieldCount> fields_;
    std::map<std::string, DocOrdinal, std::less<>> lookup_;
};

}  // namespace pmsearch::index
