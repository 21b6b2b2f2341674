#include "pmsearch/synth/synth.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include <fmt/format.h>

#include "pmsearch/error.hpp"
#include "pmsearch/index/corpus_io.hpp"
#include "pmsearch/topics/vocabulary.hpp"

namespace pmsearch::synth {

namespace {

using Rng = std::mt19937_64;
using index::Document;
using index::Sex;

std::size_t pick(Rng& rng, std::size_t n)
{
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// Unique pronounceable pseudo-words that collide with no shipped word list.
class WordMaker {
  public:
    explicit WordMaker(Rng& rng) : rng_(rng)
    {
        for (auto w : topics::stopwords()) {
            used_.insert(std::string(w));
        }
        for (auto k : topics::positive_keywords()) {
            used_.insert(index::to_lower(k.word));
        }
        for (auto k : topics::negative_keywords()) {
            used_.insert(std::string(k.word));
        }
    }

    std::string word(std::size_t syllables)
    {
        static constexpr std::array<const char*, 14> kOnsets{"b", "d", "f", "g", "k", "l", "m",
                                                             "n", "p", "r", "s", "t", "v", "z"};
        static constexpr std::array<const char*, 5> kVowels{"a", "e", "i", "o", "u"};
        static constexpr std::array<const char*, 6> kCodas{"", "", "n", "r", "l", "s"};
        for (;;) {
            std::string w;
            for (std::size_t s = 0; s < syllables; ++s) {
                w += kOnsets[pick(rng_, kOnsets.size())];
                w += kVowels[pick(rng_, kVowels.size())];
                w += kCodas[pick(rng_, kCodas.size())];
            }
            if (used_.insert(w).second) {
                return w;
            }
        }
    }

    std::string symbol()
    {
        static constexpr const char* kLetters = "BCDFGHJKLMNPRSTVWXZ";
        for (;;) {
            std::string s;
            for (int i = 0; i < 3; ++i) {
                s += kLetters[pick(rng_, 19)];
            }
            if (used_.insert(index::to_lower(s)).second) {
                return s;
            }
        }
    }

  private:
    Rng& rng_;
    std::set<std::string> used_;
};

struct Disease {
    std::string name;       // topic term, "<adjective> <noun>"
    std::string adjective;
    std::string noun;
    std::string preferred;  // single word
    std::vector<std::string> synonyms;
    std::string hypernym;
    bool solid = true;
};

struct Gene {
    std::string symbol;  // family + digit
    std::string family;
    std::vector<std::string> synonyms;
    std::string description;
};

// Planted document roles, by grade.
enum class Role {
    direct,          // 2: topic disease and gene terms, positive keywords
    via_synonyms,    // 2: disease and gene only through synonyms
    via_preferred,   // 2: disease through the preferred term
    partial,         // 1: topic terms, no keywords
    via_family,      // 1: disease synonym, gene only through its family
    hypernym,        // 0: disease hypernym with the gene
    other_gene,      // 0: right disease, another topic's gene
    other_disease,   // 0: right gene, another topic's disease
    scattered,       // 0: disease words apart, gene, negative keywords
    off_focus,       // 0: both topic terms in the title, no outcome keywords
    ineligible,      // 0: relevant text, demographics exclude the patient
};

int grade_of(Role r)
{
    switch (r) {
    case Role::direct:
    case Role::via_synonyms:
    case Role::via_preferred: return 2;
    case Role::partial:
    case Role::via_family: return 1;
    default: return 0;
    }
}

constexpr std::array<Role, 16> kBaTemplate{
    Role::direct,     Role::other_gene,    Role::via_synonyms, Role::scattered,
    Role::via_preferred, Role::hypernym,   Role::partial,      Role::via_synonyms,
    Role::off_focus,  Role::direct,        Role::via_family,   Role::other_gene,
    Role::via_synonyms, Role::scattered,   Role::partial,      Role::other_disease};

constexpr std::array<Role, 10> kCtTemplate{
    Role::direct,  Role::ineligible,   Role::via_synonyms, Role::off_focus,    Role::via_preferred,
    Role::scattered, Role::partial,    Role::other_gene,   Role::hypernym,     Role::via_synonyms};

// Positive keywords used by relevant documents, and keywords of distractors.
constexpr std::array<const char*, 8> kRelevantKeywords{"survival", "prognosis", "therapy", "treatment",
                                                       "outcome", "clinical", "resistance", "prognostic"};
constexpr std::array<const char*, 5> kDistractorKeywords{"dna", "staining", "cell", "specific", "expression"};

class Writer {
  public:
    Writer(Rng& rng, const std::vector<std::string>& filler) : rng_(rng), filler_(filler) {}

    std::string filler_word()
    {
        // Skewed toward the head of the list, like natural text.
        std::size_t a = pick(rng_, filler_.size()), b = pick(rng_, filler_.size());
        return filler_[std::min(a, b)];
    }

    /// `count` filler words with each mention inserted whole at a random slot.
    std::string text(std::size_t count, const std::vector<std::string>& mentions)
    {
        std::vector<std::string> parts;
        for (std::size_t i = 0; i < count; ++i) {
            parts.push_back(filler_word());
        }
        for (const auto& m : mentions) {
            parts.insert(parts.begin() + static_cast<long>(pick(rng_, parts.size() + 1)), m);
        }
        std::string out;
        for (const auto& p : parts) {
            if (!out.empty()) {
                out += ' ';
            }
            out += p;
        }
        return out;
    }

  private:
    Rng& rng_;
    const std::vector<std::string>& filler_;
};

template <class T>
const T& any_of(Rng& rng, const std::vector<T>& v)
{
    return v[pick(rng, v.size())];
}

std::vector<std::string> keywords(Rng& rng, std::size_t n, bool relevant)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.emplace_back(relevant ? kRelevantKeywords[pick(rng, kRelevantKeywords.size())]
                                  : kDistractorKeywords[pick(rng, kDistractorKeywords.size())]);
    }
    return out;
}

struct Planted {
    Document doc;
    int topic_index = -1;
    int grade = 0;
};

class Generator {
  public:
    explicit Generator(const SynthSpec& spec) : spec_(spec), rng_(spec.seed), words_(rng_) {}

    SynthData run()
    {
        if (spec_.topics == 0) {
            throw InvalidArgument("synthetic collection needs at least one topic");
        }
        make_vocabulary();
        make_topics();
        SynthData data;
        data.topics = topics_;
        data.lexicon = lexicon();
        collection(spec_.ba_docs, false, "BA", data.ba_docs, data.ba_qrels, data.ba_sampled);
        collection(spec_.ct_docs, true, "NCT", data.ct_docs, data.ct_qrels, data.ct_sampled);
        return data;
    }

  private:
    void make_vocabulary()
    {
        for (int i = 0; i < 400; ++i) {
            filler_.push_back(words_.word(2 + pick(rng_, 2)));
        }
        const std::array<const char*, 4> nouns{"carcinoma", "sarcoma", "lymphoma", "adenoma"};
        std::vector<std::string> hypernyms;
        for (int i = 0; i < 3; ++i) {
            hypernyms.push_back(words_.word(3) + " disorder");
        }
        std::size_t n_diseases = std::max<std::size_t>(1, (spec_.topics * 2 + 2) / 3);
        for (std::size_t i = 0; i < n_diseases; ++i) {
            Disease d;
            d.adjective = words_.word(3);
            d.noun = nouns[i % nouns.size()];
            d.name = d.adjective + " " + d.noun;
            d.preferred = words_.word(4);
            d.synonyms = {words_.word(3) + " " + nouns[(i + 1) % nouns.size()], words_.word(4)};
            d.hypernym = hypernyms[i % hypernyms.size()];
            d.solid = d.noun != "lymphoma";
            diseases_.push_back(std::move(d));
        }
        std::size_t n_genes = std::max<std::size_t>(1, (spec_.topics * 5 + 5) / 6);
        for (std::size_t i = 0; i < n_genes; ++i) {
            Gene g;
            g.family = words_.symbol();
            g.symbol = g.family + std::to_string(1 + pick(rng_, 9));
            auto alias = words_.symbol();
            g.synonyms = {alias + std::to_string(10 + pick(rng_, 90)), words_.word(3) + " kinase"};
            g.description = words_.word(3) + " receptor " + words_.word(2);
            genes_.push_back(std::move(g));
        }
    }

    void make_topics()
    {
        for (std::size_t i = 0; i < spec_.topics; ++i) {
            topics::Topic t;
            t.number = static_cast<int>(i + 1);
            t.disease = diseases_[i % diseases_.size()].name;
            t.gene = genes_[i % genes_.size()].symbol;
            t.age = static_cast<int>(20 + pick(rng_, 61));
            t.sex = chance(rng_, 0.5) ? Sex::male : Sex::female;
            topics_.push_back(t);
        }
    }

    topics::Lexicon lexicon() const
    {
        topics::Lexicon lex;
        for (const auto& d : diseases_) {
            lex.add_disease(d.name, {d.synonyms, {d.hypernym}, {d.preferred, d.preferred, d.name}});
            if (d.solid) {
                lex.add_solid_tumor(d.name);
            }
        }
        for (const auto& g : genes_) {
            lex.add_gene(g.symbol, {g.synonyms, g.description});
        }
        return lex;
    }

    const Disease& disease_of(std::size_t t) const { return diseases_[t % diseases_.size()]; }
    const Gene& gene_of(std::size_t t) const { return genes_[t % genes_.size()]; }

    Document planted(std::size_t t, Role role, bool ct, Writer& w)
    {
        const auto& d = disease_of(t);
        const auto& g = gene_of(t);
        const auto& other_d = disease_of(t + 1);
        const auto& other_g = gene_of(t + 1 + pick(rng_, std::max<std::size_t>(genes_.size(), 2) - 1));
        std::vector<std::string> title, body, mesh, tagged;
        auto kw = [&](std::size_t n, bool rel) {
            for (auto& k : keywords(rng_, n, rel)) {
                body.push_back(std::move(k));
            }
        };
        auto either = [&](const std::string& m) { (chance(rng_, 0.5) ? title : body).push_back(m); };
        switch (role) {
        case Role::direct:
        case Role::ineligible:
            either(d.name);
            body.push_back(g.symbol);
            mesh.push_back(d.name);
            tagged.push_back(g.symbol);
            kw(2, true);
            break;
        case Role::via_synonyms:
            either(any_of(rng_, d.synonyms));
            body.push_back(any_of(rng_, g.synonyms));
            if (chance(rng_, 0.5)) {
                tagged.push_back(g.symbol);
            }
            kw(2, true);
            break;
        case Role::via_preferred:
            either(d.preferred);
            body.push_back(g.symbol);
            tagged.push_back(g.symbol);
            kw(2, true);
            break;
        case Role::partial:
            body.push_back(d.name);
            body.push_back(g.symbol);
            break;
        case Role::via_family:
            either(any_of(rng_, d.synonyms));
            body.push_back(g.family + " family");
            kw(1, true);
            break;
        case Role::hypernym:
            either(d.hypernym);
            body.push_back(g.symbol);
            mesh.push_back(d.hypernym);
            kw(2, false);
            break;
        case Role::other_gene:
            either(d.name);
            body.push_back(other_g.symbol);
            tagged.push_back(other_g.symbol);
            kw(2, false);
            break;
        case Role::other_disease:
            either(other_d.name);
            body.push_back(g.symbol);
            tagged.push_back(g.symbol);
            kw(1, false);
            break;
        case Role::off_focus:
            title.push_back(d.name);
            title.push_back(g.symbol);
            mesh.push_back(d.name);
            tagged.push_back(g.symbol);
            break;
        case Role::scattered:
            title.push_back(d.adjective);
            body.push_back(d.noun);
            body.push_back(g.symbol);
            if (chance(rng_, 0.5)) {
                body.push_back(g.symbol);
            }
            kw(2, false);
            break;
        }
        Document doc;
        doc.title = w.text(3 + pick(rng_, 4), title);
        doc.abstract = w.text(30 + pick(rng_, 30), body);
        mesh.push_back("humans");
        doc.mesh = mesh;
        if (!ct) {
            doc.gene = tagged;
        } else {
            const auto& topic = topics_[t];
            int lo = std::max(0, topic.age - 5 - static_cast<int>(pick(rng_, 20)));
            int hi = topic.age + 5 + static_cast<int>(pick(rng_, 20));
            Sex sex = chance(rng_, 0.5) ? Sex::all : topic.sex;
            if (role == Role::ineligible) {
                if (chance(rng_, 0.5)) {
                    lo = topic.age + 1 + static_cast<int>(pick(rng_, 10));
                    hi = lo + 30;
                } else {
                    sex = topic.sex == Sex::male ? Sex::female : Sex::male;
                }
            }
            doc.min_age = lo;
            doc.max_age = hi;
            doc.sex = sex;
        }
        return doc;
    }

    Document background(bool ct, Writer& w)
    {
        Document doc;
        std::vector<std::string> body;
        if (chance(rng_, 0.3)) {
            for (auto& k : keywords(rng_, 1, chance(rng_, 0.5))) {
                body.push_back(std::move(k));
            }
        }
        doc.title = w.text(3 + pick(rng_, 4), {});
        doc.abstract = w.text(30 + pick(rng_, 30), body);
        if (ct) {
            doc.min_age = static_cast<int>(18 + pick(rng_, 30));
            doc.max_age = *doc.min_age + 10 + static_cast<int>(pick(rng_, 40));
            doc.sex = Sex::all;
        }
        return doc;
    }

    void collection(std::size_t total, bool ct, const std::string& prefix,
                    std::vector<Document>& docs, eval::Qrels& qrels, eval::SampledQrels& sampled)
    {
        if (total == 0) {
            return;
        }
        const std::size_t per_topic = total * 9 / 10 / spec_.topics;
        if (per_topic < 4) {
            throw InvalidArgument(
                fmt::format("{} documents leave fewer than 4 planted documents per topic", total));
        }
        Writer w(rng_, filler_);
        std::vector<Planted> all;
        for (std::size_t t = 0; t < spec_.topics; ++t) {
            for (std::size_t j = 0; j < per_topic; ++j) {
                Role role = ct ? kCtTemplate[j % kCtTemplate.size()] : kBaTemplate[j % kBaTemplate.size()];
                all.push_back({planted(t, role, ct, w), static_cast<int>(t), grade_of(role)});
            }
        }
        while (all.size() < total) {
            all.push_back({background(ct, w), -1, 0});
        }
        std::shuffle(all.begin(), all.end(), rng_);
        for (std::size_t i = 0; i < all.size(); ++i) {
            all[i].doc.doc_id = fmt::format("{}{:06}", prefix, i + 1);
            docs.push_back(all[i].doc);
        }

        for (std::size_t t = 0; t < spec_.topics; ++t) {
            // Pool: the topic's planted documents plus a few others.
            std::vector<std::size_t> pool;
            std::vector<std::size_t> others;
            for (std::size_t i = 0; i < all.size(); ++i) {
                (all[i].topic_index == static_cast<int>(t) ? pool : others).push_back(i);
            }
            std::shuffle(others.begin(), others.end(), rng_);
            for (std::size_t i = 0; i < std::min<std::size_t>(4, others.size()); ++i) {
                pool.push_back(others[i]);
            }
            std::sort(pool.begin(), pool.end());
            const int topic = topics_[t].number;
            auto grade = [&](std::size_t i) {
                return all[i].topic_index == static_cast<int>(t) ? all[i].grade : 0;
            };
            for (std::size_t i : pool) {
                qrels.topics[topic][all[i].doc.doc_id] = grade(i);
            }
            std::shuffle(pool.begin(), pool.end(), rng_);
            std::size_t first = (pool.size() + 1) / 2;
            eval::Stratum judged{1, first, {}};
            eval::Stratum sampled_half{2, pool.size() - first, {}};
            for (std::size_t k = 0; k < pool.size(); ++k) {
                eval::SampledDoc s{all[pool[k]].doc.doc_id, grade(pool[k])};
                if (k < first) {
                    judged.sampled.push_back(s);
                } else if ((k - first) % 2 == 0) {
                    sampled_half.sampled.push_back(s);
                }
            }
            auto by_id = [](const eval::SampledDoc& a, const eval::SampledDoc& b) {
                return a.doc_id < b.doc_id;
            };
            std::sort(judged.sampled.begin(), judged.sampled.end(), by_id);
            std::sort(sampled_half.sampled.begin(), sampled_half.sampled.end(), by_id);
            sampled.topics[topic].push_back(std::move(judged));
            if (!sampled_half.sampled.empty()) {
                sampled.topics[topic].push_back(std::move(sampled_half));
            }
        }
    }

    SynthSpec spec_;
    Rng rng_;
    WordMaker words_;
    std::vector<std::string> filler_;
    std::vector<Disease> diseases_;
    std::vector<Gene> genes_;
    std::vector<topics::Topic> topics_;
};

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << text;
}

template <class F>
void write_stream(const std::filesystem::path& path, F&& write)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    write(out);
}

}  // namespace

SynthData generate(const SynthSpec& spec) { return Generator(spec).run(); }

void write_files(const SynthData& data, const std::string& dir)
{
    std::filesystem::path root(dir);
    std::filesystem::create_directories(root);
    write_stream(root / kBaCorpusFile, [&](std::ostream& o) { index::write_corpus(o, data.ba_docs); });
    write_stream(root / kCtCorpusFile, [&](std::ostream& o) { index::write_corpus(o, data.ct_docs); });
    write_text(root / kTopicsFile, topics::write_topics(data.topics));
    write_text(root / kLexiconFile, topics::write_lexicon(data.lexicon));
    write_stream(root / kBaQrelsFile, [&](std::ostream& o) { eval::write_qrels(o, data.ba_qrels); });
    write_stream(root / kCtQrelsFile, [&](std::ostream& o) { eval::write_qrels(o, data.ct_qrels); });
    write_stream(root / kBaSampledFile, [&](std::ostream& o) { eval::write_sampled_qrels(o, data.ba_sampled); });
    write_stream(root / kCtSampledFile, [&](std::ostream& o) { eval::write_sampled_qrels(o, data.ct_sampled); });
}

}  // namespace pmsearch::synth
