#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "pmsearch/index/document.hpp"

namespace pmsearch::query {

using index::Field;
using index::Sex;

struct QueryNode;

/// Immutable, cheaply copyable handle to a query tree node.
class Query {
  public:
    explicit Query(std::shared_ptr<const QueryNode> node) : node_(std::move(node)) {}

    const QueryNode& node() const { return *node_; }

  private:
    std::shared_ptr<const QueryNode> node_;
};

/// Single token in one field.
struct Term {
    Field field;
    std::string term;
};

/// Exact adjacent token sequence in one field; tf is the occurrence count.
struct Phrase {
    Field field;
    std::vector<std::string> terms;
};

/// Any of `terms` in any of `fields`; the score sums every matching
/// (field, term) pair, field-major.
struct BagOfWords {
    std::vector<Field> fields;
    std::vector<std::string> terms;
};

/// Boolean compound. Matches when every must and filter clause matches and no
/// must_not clause does; with no must and no filter clause at least one should
/// clause has to match. Score = sum of must scores + sum of matching should
/// scores. Filter and must_not clauses never score.
struct Bool {
    std::vector<Query> must;
    std::vector<Query> should;
    std::vector<Query> must_not;
    std::vector<Query> filter;
};

/// Highest subquery score; matches when any subquery matches.
struct DisMax {
    std::vector<Query> subqueries;
};

/// weight * child score. The weight may be zero or negative.
struct Weighted {
    Query child;
    double weight;
};

/// Non-scoring: min_age <= age <= max_age, a missing bound is open.
struct AgeRange {
    int age;
};

/// Non-scoring: documents whose sex is `sex`, "all", or unrecorded. `all`
/// matches every document.
struct SexFilter {
    Sex sex;
};

struct QueryNode {
    std::variant<Term, Phrase, BagOfWords, Bool, DisMax, Weighted, AgeRange, SexFilter> value;
};

// Factories validate node invariants and throw InvalidArgument.
Query term(Field field, std::string term);
Query phrase(Field field, std::vector<std::string> terms);
Query bag_of_words(std::vector<Field> fields, std::vector<std::string> terms);
Query boolean(Bool clauses);
Query dis_max(std::vector<Query> subqueries);
Query weighted(Query child, double weight);
Query age_range(int age);
Query sex_filter(Sex sex);

/// Multiplicative field and clause weights; both are the plain product.
inline double apply_field_weight(double child_score, double field_weight)
{
    return child_score * field_weight;
}
inline double apply_clause_weight(double child_score, double clause_weight)
{
    return child_score * clause_weight;
}

/// Canonical indented text rendering, stable across runs.
std::string render(const Query& query);

/// Every term occurring in the tree, in rendering order.
std::vector<std::string> collect_terms(const Query& query);

}  // namespace pmsearch::query
