#include "random_corpus.hpp"

#include <algorithm>

#include "naive_scorer.hpp"

namespace pmsearch::testkit {

std::string vocab_word(std::size_t i)
{
    static const char* syllables[] = {"ka", "lo", "mi", "ne", "ru", "ta", "vo", "xe"};
    std::string w;
    std::size_t x = i + 1;
    while (x > 0) {
        w += syllables[x % 8];
        x /= 8;
    }
    return w;
}

namespace {

std::string random_word(std::mt19937_64& rng, std::size_t vocabulary)
{
    // Squaring a uniform variate skews towards low ids.
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double r = u(rng);
    return vocab_word(static_cast<std::size_t>(r * r * static_cast<double>(vocabulary)));
}

std::string random_text(std::mt19937_64& rng, std::size_t vocabulary, int lo, int hi)
{
    std::uniform_int_distribution<int> len(lo, hi);
    std::string text;
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
        if (i > 0) {
            text += (rng() % 7 == 0) ? "-" : " ";
        }
        auto w = random_word(rng, vocabulary);
        if (rng() % 5 == 0) {
            w[0] = static_cast<char>(w[0] - 'a' + 'A');
        }
        text += w;
    }
    return text;
}

}  // namespace

std::vector<index::Document> random_corpus(std::mt19937_64& rng, const RandomCorpusSpec& spec)
{
    std::uniform_int_distribution<std::size_t> count(1, spec.max_docs);
    std::size_t n = count(rng);
    std::vector<std::size_t> ids(n);
    for (std::size_t i = 0; i < n; ++i) {
        ids[i] = i;
    }
    std::shuffle(ids.begin(), ids.end(), rng);

    std::vector<index::Document> docs;
    for (std::size_t i = 0; i < n; ++i) {
        index::Document d;
        d.doc_id = "D" + std::to_string(100000 + ids[i]);
        d.title = random_text(rng, spec.vocabulary, 0, 8);
        d.abstract = random_text(rng, spec.vocabulary, 0, 40);
        for (std::size_t m = rng() % 4; m > 0; --m) {
            d.mesh.push_back(random_text(rng, spec.vocabulary, 1, 2));
        }
        for (std::size_t g = rng() % 3; g > 0; --g) {
            d.gene.push_back(random_word(rng, spec.vocabulary / 2 + 1));
        }
        if (spec.structured && rng() % 4 != 0) {
            int lo = static_cast<int>(rng() % 60);
            if (rng() % 5 != 0) {
                d.min_age = lo;
            }
            if (rng() % 5 != 0) {
                d.max_age = lo + static_cast<int>(rng() % 50);
            }
            if (rng() % 6 != 0) {
                d.sex = static_cast<index::Sex>(rng() % 3);
            }
        }
        docs.push_back(std::move(d));
    }
    return docs;
}

namespace {

index::Field random_field(std::mt19937_64& rng)
{
    return index::kAllFields[rng() % index::kFieldCount];
}

std::vector<std::string> sampled_phrase(std::mt19937_64& rng,
                                        const std::vector<index::Document>& docs,
                                        index::Field field, std::size_t vocabulary)
{
    const auto& d = docs[rng() % docs.size()];
    std::vector<std::string> toks;
    for (auto& t : index::field_tokens(d, field)) {
        toks.push_back(t.text);
    }
    std::size_t len = 1 + rng() % 3;
    if (toks.size() < len) {
        return {random_word(rng, vocabulary)};
    }
    std::size_t start = rng() % (toks.size() - len + 1);
    return {toks.begin() + static_cast<std::ptrdiff_t>(start),
            toks.begin() + static_cast<std::ptrdiff_t>(start + len)};
}

double random_weight(std::mt19937_64& rng)
{
    switch (rng() % 6) {
    case 0: return 0.0;
    case 1: return -std::uniform_real_distribution<double>(0.1, 2.0)(rng);
    default: return std::uniform_real_distribution<double>(0.1, 3.0)(rng);
    }
}

query::Query random_leaf(std::mt19937_64& rng, const std::vector<index::Document>& docs,
                         std::size_t vocabulary)
{
    switch (rng() % 9) {
    case 0:
    case 1:
    case 2: return query::term(random_field(rng), random_word(rng, vocabulary));
    case 3:
    case 4: {
        auto f = random_field(rng);
        return query::phrase(f, sampled_phrase(rng, docs, f, vocabulary));
    }
    case 5:
    case 6: {
        std::vector<index::Field> fields;
        for (std::size_t i = 1 + rng() % 3; i > 0; --i) {
            fields.push_back(random_field(rng));
        }
        std::vector<std::string> terms;
        for (std::size_t i = 1 + rng() % 3; i > 0; --i) {
            terms.push_back(random_word(rng, vocabulary));
        }
        return query::bag_of_words(fields, terms);
    }
    case 7: return query::age_range(static_cast<int>(rng() % 90));
    default: return query::sex_filter(static_cast<index::Sex>(rng() % 3));
    }
}

}  // namespace

query::Query random_query(std::mt19937_64& rng, const std::vector<index::Document>& docs,
                          std::size_t vocabulary, int depth)
{
    if (depth <= 0 || rng() % 3 == 0) {
        return random_leaf(rng, docs, vocabulary);
    }
    auto children = [&](std::size_t lo, std::size_t hi) {
        std::vector<query::Query> out;
        for (std::size_t i = lo + rng() % (hi - lo + 1); i > 0; --i) {
            out.push_back(random_query(rng, docs, vocabulary, depth - 1));
        }
        return out;
    };
    switch (rng() % 3) {
    case 0: {
        query::Bool b;
        b.must = children(0, 2);
        b.should = children(0, 3);
        b.must_not = rng() % 3 == 0 ? children(1, 1) : std::vector<query::Query>{};
        b.filter = rng() % 3 == 0 ? children(1, 1) : std::vector<query::Query>{};
        return query::boolean(std::move(b));
    }
    case 1: return query::dis_max(children(1, 3));
    default: return query::weighted(random_query(rng, docs, vocabulary, depth - 1),
                                    random_weight(rng));
    }
}

}  // namespace pmsearch::testkit
