#include "pmsearch/index/index.hpp"

#include <algorithm>
#include <numeric>

#include "pmsearch/error.hpp"

namespace pmsearch::index {

std::optional<std::size_t> PostingList::find(DocOrdinal doc) const
{
    auto it = std::lower_bound(docs_.begin(), docs_.end(), doc);
    if (it == docs_.end() || *it != doc) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - docs_.begin());
}

void PostingList::append(DocOrdinal doc, double doc_length,
                         std::span<const std::uint32_t> positions)
{
    if (!docs_.empty() && doc <= docs_.back()) {
        throw InvalidArgument("postings must be appended in increasing document order");
    }
    if (positions.empty() ||
        std::adjacent_find(positions.begin(), positions.end(),
                           std::greater_equal<std::uint32_t>()) != positions.end()) {
        throw InvalidArgument("posting positions must be nonempty and strictly increasing");
    }
    docs_.push_back(doc);
    tf_.push_back(static_cast<double>(positions.size()));
    lengths_.push_back(doc_length);
    positions_.insert(positions_.end(), positions.begin(), positions.end());
    offsets_.push_back(static_cast<std::uint32_t>(positions_.size()));
}

FieldStats::FieldStats(TermMap terms, std::vector<std::uint32_t> doc_lengths)
    : terms_(std::move(terms)), doc_lengths_(std::move(doc_lengths))
{
    if (!doc_lengths_.empty()) {
        double total = std::accumulate(doc_lengths_.begin(), doc_lengths_.end(), 0.0);
        avg_length_ = total / static_cast<double>(doc_lengths_.size());
    }
}

const PostingList* FieldStats::postings(std::string_view term) const
{
    auto it = terms_.find(term);
    return it == terms_.end() ? nullptr : &it->second;
}

std::size_t FieldStats::df(std::string_view term) const
{
    const auto* list = postings(term);
    return list == nullptr ? 0 : list->size();
}

Index Index::build(const std::vector<Document>& docs)
{
    Index index;
    index.docs_.reserve(docs.size());
    for (const auto& doc : docs) {
        validate(doc);
        if (index.lookup_.contains(doc.doc_id)) {
            throw InvalidArgument("duplicate doc_id: " + doc.doc_id);
        }
        auto ordinal = static_cast<DocOrdinal>(index.docs_.size());
        index.lookup_.emplace(doc.doc_id, ordinal);
        index.docs_.push_back({doc.doc_id, doc.min_age, doc.max_age, doc.sex});
    }

    for (auto field : kAllFields) {
        TermMap terms;
        std::vector<std::uint32_t> lengths(docs.size(), 0);
        for (DocOrdinal ord = 0; ord < docs.size(); ++ord) {
            auto tokens = field_tokens(docs[ord], field);
            lengths[ord] = static_cast<std::uint32_t>(tokens.size());
            // Group this document's positions per term; positions arrive sorted.
            std::map<std::string_view, std::vector<std::uint32_t>> per_term;
            for (const auto& token : tokens) {
                per_term[token.text].push_back(token.position);
            }
            for (const auto& [term, positions] : per_term) {
                auto it = terms.find(term);
                if (it == terms.end()) {
                    it = terms.emplace(std::string(term), PostingList{}).first;
                }
                it->second.append(ord, static_cast<double>(lengths[ord]), positions);
            }
        }
        index.fields_[field_slot(field)] = FieldStats(std::move(terms), std::move(lengths));
    }
    return index;
}

std::optional<DocOrdinal> Index::find(std::string_view doc_id) const
{
    auto it = lookup_.find(doc_id);
    if (it == lookup_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::uint32_t Index::tf(Field f, std::string_view term, DocOrdinal doc) const
{
    const auto* list = field(f).postings(term);
    if (list == nullptr) {
        return 0;
    }
    auto slot = list->find(doc);
    return slot ? static_cast<std::uint32_t>(list->term_frequencies()[*slot]) : 0;
}

void Index::rebuild_lookup()
{
    lookup_.clear();
    for (DocOrdinal ord = 0; ord < docs_.size(); ++ord) {
        if (!lookup_.emplace(docs_[ord].doc_id, ord).second) {
            throw ParseError("index snapshot: duplicate doc_id " + docs_[ord].doc_id);
        }
    }
}

}  // namespace pmsearch::index
