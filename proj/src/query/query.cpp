#include "pmsearch/query/query.hpp"

#include <cmath>

#include <fmt/format.h>

#include "pmsearch/error.hpp"
#include "pmsearch/index/tokenizer.hpp"

namespace pmsearch::query {

namespace {

Query make(QueryNode node)
{
    return Query(std::make_shared<const QueryNode>(std::move(node)));
}

std::string normalize_term(const std::string& raw)
{
    if (raw.empty()) {
        throw InvalidArgument("query term must not be empty");
    }
    return index::to_lower(raw);
}

}  // namespace

Query term(Field field, std::string text)
{
    return make({Term{field, normalize_term(text)}});
}

Query phrase(Field field, std::vector<std::string> terms)
{
    if (terms.empty()) {
        throw InvalidArgument("phrase needs at least one term");
    }
    for (auto& t : terms) {
        t = normalize_term(t);
    }
    return make({Phrase{field, std::move(terms)}});
}

Query bag_of_words(std::vector<Field> fields, std::vector<std::string> terms)
{
    if (fields.empty() || terms.empty()) {
        throw InvalidArgument("bag-of-words needs at least one field and one term");
    }
    for (auto& t : terms) {
        t = normalize_term(t);
    }
    return make({BagOfWords{std::move(fields), std::move(terms)}});
}

Query boolean(Bool clauses)
{
    return make({std::move(clauses)});
}

Query dis_max(std::vector<Query> subqueries)
{
    if (subqueries.empty()) {
        throw InvalidArgument("dis_max needs at least one subquery");
    }
    return make({DisMax{std::move(subqueries)}});
}

Query weighted(Query child, double weight)
{
    if (!std::isfinite(weight)) {
        throw InvalidArgument("query weight must be finite");
    }
    return make({Weighted{std::move(child), weight}});
}

Query age_range(int age)
{
    return make({AgeRange{age}});
}

Query sex_filter(Sex sex)
{
    return make({SexFilter{sex}});
}

namespace {

std::string quoted_terms(const std::vector<std::string>& terms)
{
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i > 0) {
            out += ' ';
        }
        out += '"' + terms[i] + '"';
    }
    return out;
}

void render_into(const Query& q, int depth, std::string& out);

void render_clauses(const char* label, const std::vector<Query>& clauses, int depth,
                    std::string& out)
{
    if (clauses.empty()) {
        return;
    }
    out += std::string(static_cast<std::size_t>(depth) * 2, ' ') + label + ":\n";
    for (const auto& c : clauses) {
        render_into(c, depth + 1, out);
    }
}

void render_into(const Query& q, int depth, std::string& out)
{
    std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Term>) {
                out += fmt::format("{}term {}:\"{}\"\n", indent, index::field_name(n.field), n.term);
            } else if constexpr (std::is_same_v<T, Phrase>) {
                out += fmt::format("{}phrase {}:{}\n", indent, index::field_name(n.field),
                                   quoted_terms(n.terms));
            } else if constexpr (std::is_same_v<T, BagOfWords>) {
                std::string fields;
                for (std::size_t i = 0; i < n.fields.size(); ++i) {
                    fields += (i ? "," : "") + std::string(index::field_name(n.fields[i]));
                }
                out += fmt::format("{}bag_of_words [{}] {}\n", indent, fields, quoted_terms(n.terms));
            } else if constexpr (std::is_same_v<T, Bool>) {
                out += indent + "bool\n";
                render_clauses("must", n.must, depth + 1, out);
                render_clauses("should", n.should, depth + 1, out);
                render_clauses("must_not", n.must_not, depth + 1, out);
                render_clauses("filter", n.filter, depth + 1, out);
            } else if constexpr (std::is_same_v<T, DisMax>) {
                out += indent + "dis_max\n";
                for (const auto& c : n.subqueries) {
                    render_into(c, depth + 1, out);
                }
            } else if constexpr (std::is_same_v<T, Weighted>) {
                out += fmt::format("{}weight {}\n", indent, n.weight);
                render_into(n.child, depth + 1, out);
            } else if constexpr (std::is_same_v<T, AgeRange>) {
                out += fmt::format("{}age_range {}\n", indent, n.age);
            } else {
                out += fmt::format("{}sex_filter {}\n", indent, index::sex_name(n.sex));
            }
        },
        q.node().value);
}

void collect_into(const Query& q, std::vector<std::string>& out)
{
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Term>) {
                out.push_back(n.term);
            } else if constexpr (std::is_same_v<T, Phrase> || std::is_same_v<T, BagOfWords>) {
                out.insert(out.end(), n.terms.begin(), n.terms.end());
            } else if constexpr (std::is_same_v<T, Bool>) {
                for (const auto* list : {&n.must, &n.should, &n.must_not, &n.filter}) {
                    for (const auto& c : *list) {
                        collect_into(c, out);
                    }
                }
            } else if constexpr (std::is_same_v<T, DisMax>) {
                for (const auto& c : n.subqueries) {
                    collect_into(c, out);
                }
            } else if constexpr (std::is_same_v<T, Weighted>) {
                collect_into(n.child, out);
            }
        },
        q.node().value);
}

}  // namespace

std::string render(const Query& query)
{
    std::string out;
    render_into(query, 0, out);
    return out;
}

std::vector<std::string> collect_terms(const Query& query)
{
    std::vector<std::string> out;
    collect_into(query, out);
    return out;
}

}  // namespace pmsearch::query
