#include <algorithm>
#include <cassert>

#include "pmsearch/error.hpp"
#include "pmsearch/query/search.hpp"
#include "pmsearch/simd/kernels.hpp"

namespace pmsearch::query {

namespace {

using index::PostingList;

double sum_idf(const Index& index, Field field, const std::vector<std::string>& terms)
{
    double total = 0.0;
    for (const auto& t : terms) {
        total += index::idf(index, field, t);
    }
    return total;
}

simd::Bm25Batch batch(const Index& index, Field field, double idf, const Bm25Params& params)
{
    return {idf, params.k1, params.b, index.field(field).avg_length()};
}

MatchList eval_term(const Index& index, const Term& node, const Bm25Params& params)
{
    MatchList out;
    const auto* list = index.field(node.field).postings(node.term);
    if (list == nullptr) {
        return out;
    }
    out.docs.assign(list->docs().begin(), list->docs().end());
    out.scores.resize(list->size());
    auto c = batch(index, node.field, index::idf(index, node.field, node.term), params);
    simd::bm25_scores(c, list->term_frequencies(), list->doc_lengths(), out.scores);
    return out;
}

// Counts start positions p with terms[i] at p + i for every i.
std::uint32_t count_phrase(const std::vector<const PostingList*>& lists,
                           const std::vector<std::size_t>& slots)
{
    auto first = lists[0]->positions(slots[0]);
    std::uint32_t count = 0;
    for (auto start : first) {
        bool all = true;
        for (std::size_t i = 1; i < lists.size() && all; ++i) {
            auto positions = lists[i]->positions(slots[i]);
            all = std::binary_search(positions.begin(), positions.end(),
                                     start + static_cast<std::uint32_t>(i));
        }
        count += all ? 1 : 0;
    }
    return count;
}

MatchList eval_phrase(const Index& index, const Phrase& node, const Bm25Params& params)
{
    MatchList out;
    const auto& stats = index.field(node.field);
    std::vector<const PostingList*> lists;
    for (const auto& t : node.terms) {
        const auto* list = stats.postings(t);
        if (list == nullptr) {
            return out;
        }
        lists.push_back(list);
    }
    // Drive the intersection from the shortest list.
    auto driver = std::min_element(lists.begin(), lists.end(), [](auto* a, auto* b) {
                      return a->size() < b->size();
                  }) - lists.begin();

    std::vector<double> tf;
    std::vector<double> lengths;
    std::vector<std::size_t> slots(lists.size());
    for (auto doc : lists[driver]->docs()) {
        bool present = true;
        for (std::size_t i = 0; i < lists.size() && present; ++i) {
            auto slot = lists[i]->find(doc);
            present = slot.has_value();
            if (present) {
                slots[i] = *slot;
            }
        }
        if (!present) {
            continue;
        }
        auto count = count_phrase(lists, slots);
        if (count > 0) {
            out.docs.push_back(doc);
            tf.push_back(count);
            lengths.push_back(stats.doc_length(doc));
        }
    }
    out.scores.resize(out.docs.size());
    auto c = batch(index, node.field, sum_idf(index, node.field, node.terms), params);
    simd::bm25_scores(c, tf, lengths, out.scores);
    return out;
}

/// Union; documents present in both get acc + next (acc first).
MatchList union_sum(const MatchList& acc, const MatchList& next)
{
    MatchList out;
    out.docs.reserve(acc.size() + next.size());
    out.scores.reserve(acc.size() + next.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < acc.size() || j < next.size()) {
        if (j == next.size() || (i < acc.size() && acc.docs[i] < next.docs[j])) {
            out.docs.push_back(acc.docs[i]);
            out.scores.push_back(acc.scores[i++]);
        } else if (i == acc.size() || next.docs[j] < acc.docs[i]) {
            out.docs.push_back(next.docs[j]);
            out.scores.push_back(0.0 + next.scores[j++]);
        } else {
            out.docs.push_back(acc.docs[i]);
            out.scores.push_back(acc.scores[i++] + next.scores[j++]);
        }
    }
    return out;
}

MatchList union_max(const MatchList& acc, const MatchList& next)
{
    MatchList out;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < acc.size() || j < next.size()) {
        if (j == next.size() || (i < acc.size() && acc.docs[i] < next.docs[j])) {
            out.docs.push_back(acc.docs[i]);
            out.scores.push_back(acc.scores[i++]);
        } else if (i == acc.size() || next.docs[j] < acc.docs[i]) {
            out.docs.push_back(next.docs[j]);
            out.scores.push_back(next.scores[j++]);
        } else {
            out.docs.push_back(acc.docs[i]);
            out.scores.push_back(std::max(acc.scores[i++], next.scores[j++]));
        }
    }
    return out;
}

std::vector<DocOrdinal> intersect(const std::vector<DocOrdinal>& a,
                                  const std::vector<DocOrdinal>& b)
{
    std::vector<DocOrdinal> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<DocOrdinal> subtract(const std::vector<DocOrdinal>& a,
                                 const std::vector<DocOrdinal>& b)
{
    std::vector<DocOrdinal> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// Dense accumulation over `candidates` of the scores of `list` (a superset
/// or a partial cover of the candidates).
void add_aligned(const std::vector<DocOrdinal>& candidates, std::vector<double>& acc,
                 const MatchList& list)
{
    std::size_t j = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        while (j < list.size() && list.docs[j] < candidates[i]) {
            ++j;
        }
        if (j < list.size() && list.docs[j] == candidates[i]) {
            acc[i] += list.scores[j];
        }
    }
}

MatchList eval(const Index& index, const Query& q, const Bm25Params& params);

MatchList eval_bag(const Index& index, const BagOfWords& node, const Bm25Params& params)
{
    MatchList acc;
    for (auto field : node.fields) {
        for (const auto& t : node.terms) {
            acc = union_sum(acc, eval_term(index, Term{field, t}, params));
        }
    }
    return acc;
}

MatchList eval_bool(const Index& index, const Bool& node, const Bm25Params& params)
{
    std::vector<MatchList> must;
    for (const auto& c : node.must) {
        must.push_back(eval(index, c, params));
    }
    std::vector<MatchList> should;
    for (const auto& c : node.should) {
        should.push_back(eval(index, c, params));
    }

    std::vector<DocOrdinal> candidates;
    bool required = !node.must.empty() || !node.filter.empty();
    if (required) {
        bool first = true;
        auto narrow = [&](const std::vector<DocOrdinal>& docs) {
            candidates = first ? docs : intersect(candidates, docs);
            first = false;
        };
        for (const auto& m : must) {
            narrow(m.docs);
        }
        for (const auto& c : node.filter) {
            narrow(eval(index, c, params).docs);
        }
    } else {
        for (const auto& s : should) {
            std::vector<DocOrdinal> merged;
            std::set_union(candidates.begin(), candidates.end(), s.docs.begin(), s.docs.end(),
                           std::back_inserter(merged));
            candidates = std::move(merged);
        }
    }
    for (const auto& c : node.must_not) {
        if (candidates.empty()) {
            break;
        }
        candidates = subtract(candidates, eval(index, c, params).docs);
    }

    MatchList out;
    out.scores.assign(candidates.size(), 0.0);
    for (const auto& m : must) {
        add_aligned(candidates, out.scores, m);
    }
    for (const auto& s : should) {
        add_aligned(candidates, out.scores, s);
    }
    out.docs = std::move(candidates);
    return out;
}

bool age_matches(const index::DocumentMeta& doc, int age)
{
    return (!doc.min_age || *doc.min_age <= age) && (!doc.max_age || age <= *doc.max_age);
}

bool sex_matches(const index::DocumentMeta& doc, Sex sex)
{
    return sex == Sex::all || !doc.sex || *doc.sex == Sex::all || *doc.sex == sex;
}

template <typename Pred>
MatchList eval_filter(const Index& index, Pred pred)
{
    MatchList out;
    for (DocOrdinal ord = 0; ord < index.doc_count(); ++ord) {
        if (pred(index.doc(ord))) {
            out.docs.push_back(ord);
        }
    }
    out.scores.assign(out.docs.size(), 0.0);
    return out;
}

MatchList eval(const Index& index, const Query& q, const Bm25Params& params)
{
    return std::visit(
        [&](const auto& n) -> MatchList {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Term>) {
                return eval_term(index, n, params);
            } else if constexpr (std::is_same_v<T, Phrase>) {
                return eval_phrase(index, n, params);
            } else if constexpr (std::is_same_v<T, BagOfWords>) {
                return eval_bag(index, n, params);
            } else if constexpr (std::is_same_v<T, Bool>) {
                return eval_bool(index, n, params);
            } else if constexpr (std::is_same_v<T, DisMax>) {
                MatchList acc;
                for (const auto& c : n.subqueries) {
                    acc = union_max(acc, eval(index, c, params));
                }
                return acc;
            } else if constexpr (std::is_same_v<T, Weighted>) {
                auto child = eval(index, n.child, params);
                simd::scale(child.scores, n.weight);
                return child;
            } else if constexpr (std::is_same_v<T, AgeRange>) {
                return eval_filter(index, [&](const auto& d) { return age_matches(d, n.age); });
            } else {
                return eval_filter(index, [&](const auto& d) { return sex_matches(d, n.sex); });
            }
        },
        q.node().value);
}

}  // namespace

MatchList evaluate(const Index& index, const Query& query, const Bm25Params& params)
{
    params.validate();
    return eval(index, query, params);
}

std::uint32_t phrase_frequency(const Index& index, Field field,
                               const std::vector<std::string>& terms, DocOrdinal doc)
{
    if (terms.empty()) {
        return 0;
    }
    std::vector<const PostingList*> lists;
    std::vector<std::size_t> slots;
    for (const auto& t : terms) {
        const auto* list = index.field(field).postings(t);
        if (list == nullptr) {
            return 0;
        }
        auto slot = list->find(doc);
        if (!slot) {
            return 0;
        }
        lists.push_back(list);
        slots.push_back(*slot);
    }
    return count_phrase(lists, slots);
}

namespace {

std::optional<double> score_doc(const Index& index, const Query& q, DocOrdinal doc,
                                const Bm25Params& params)
{
    return std::visit(
        [&](const auto& n) -> std::optional<double> {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Term>) {
                auto tf = index.tf(n.field, n.term, doc);
                if (tf == 0) {
                    return std::nullopt;
                }
                return simd::bm25_weight(batch(index, n.field, index::idf(index, n.field, n.term), params),
                                         tf, index.field(n.field).doc_length(doc));
            } else if constexpr (std::is_same_v<T, Phrase>) {
                auto tf = phrase_frequency(index, n.field, n.terms, doc);
                if (tf == 0) {
                    return std::nullopt;
                }
                return simd::bm25_weight(batch(index, n.field, sum_idf(index, n.field, n.terms), params),
                                         tf, index.field(n.field).doc_length(doc));
            } else if constexpr (std::is_same_v<T, BagOfWords>) {
                std::optional<double> total;
                for (auto field : n.fields) {
                    for (const auto& t : n.terms) {
                        if (auto s = score_doc(index, query::term(field, t), doc, params)) {
                            total = total.value_or(0.0) + *s;
                        }
                    }
                }
                return total;
            } else if constexpr (std::is_same_v<T, Bool>) {
                bool required = !n.must.empty() || !n.filter.empty();
                double total = 0.0;
                for (const auto& c : n.must) {
                    auto s = score_doc(index, c, doc, params);
                    if (!s) {
                        return std::nullopt;
                    }
                    total += *s;
                }
                for (const auto& c : n.filter) {
                    if (!score_doc(index, c, doc, params)) {
                        return std::nullopt;
                    }
                }
                for (const auto& c : n.must_not) {
                    if (score_doc(index, c, doc, params)) {
                        return std::nullopt;
                    }
                }
                bool any_should = false;
                for (const auto& c : n.should) {
                    if (auto s = score_doc(index, c, doc, params)) {
                        total += *s;
                        any_should = true;
                    }
                }
                if (!required && !any_should) {
                    return std::nullopt;
                }
                return total;
            } else if constexpr (std::is_same_v<T, DisMax>) {
                std::optional<double> best;
                for (const auto& c : n.subqueries) {
                    if (auto s = score_doc(index, c, doc, params)) {
                        best = best ? std::max(*best, *s) : *s;
                    }
                }
                return best;
            } else if constexpr (std::is_same_v<T, Weighted>) {
                auto s = score_doc(index, n.child, doc, params);
                if (!s) {
                    return std::nullopt;
                }
                return apply_clause_weight(*s, n.weight);
            } else if constexpr (std::is_same_v<T, AgeRange>) {
                return age_matches(index.doc(doc), n.age) ? std::optional<double>(0.0)
                                                          : std::nullopt;
            } else {
                return sex_matches(index.doc(doc), n.sex) ? std::optional<double>(0.0)
                                                          : std::nullopt;
            }
        },
        q.node().value);
}

}  // namespace

std::optional<double> score_document(const Index& index, const Query& query, DocOrdinal doc,
                                     const Bm25Params& params)
{
    params.validate();
    if (doc >= index.doc_count()) {
        throw InvalidArgument("document ordinal out of range");
    }
    return score_doc(index, query, doc, params);
}

std::vector<ScoredHit> search(const Index& index, const Query& query, const Bm25Params& params,
                              std::size_t top_k)
{
    if (top_k == 0) {
        throw InvalidArgument("top_k must be at least 1");
    }
    auto matches = evaluate(index, query, params);
    std::vector<std::size_t> order(matches.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    auto better = [&](std::size_t a, std::size_t b) {
        if (matches.scores[a] != matches.scores[b]) {
            return matches.scores[a] > matches.scores[b];
        }
        return index.doc(matches.docs[a]).doc_id < index.doc(matches.docs[b]).doc_id;
    };
    auto keep = std::min(top_k, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                      better);
    std::vector<ScoredHit> hits;
    hits.reserve(keep);
    for (std::size_t r = 0; r < keep; ++r) {
        auto i = order[r];
        hits.push_back({index.doc(matches.docs[i]).doc_id, matches.scores[i], r + 1});
    }
    return hits;
}

}  // namespace pmsearch::query
