#pragma once

#include <optional>
#include <string_view>

#include "pmsearch/optim/param_space.hpp"
#include "pmsearch/query/query.hpp"
#include "pmsearch/topics/lexicon.hpp"
#include "pmsearch/topics/settings.hpp"
#include "pmsearch/topics/topic.hpp"

namespace pmsearch::topics {

/// BA searches scientific abstracts, CT searches clinical trials; only CT
/// queries carry demographic filters.
enum class Task { ba, ct };

std::string_view task_name(Task task);
std::optional<Task> parse_task(std::string_view name);

/// Root is a Bool:
///   must     weighted disease compound, one weighted gene compound per aspect
///   should   positive keywords, negative keywords, gene-tagger field match
///   must_not non-melanoma phrase (melanoma topics, when enabled)
///   filter   age range and sex (CT only)
/// A compound combines its topic clause and toggled expansions by dis_max or
/// disjunction. Each clause is weighted by its clause type and searched across
/// the compound's fields with per-field weights. Clauses left empty by stop
/// word removal, or repeating an earlier clause's tokens, are dropped.
query::Query build_query(const Topic& topic, const QuerySettings& settings, Task task,
                         const Lexicon& lexicon);
query::Query build_query(const Topic& topic, const optim::Configuration& config, Task task,
                         const Lexicon& lexicon);

}  // namespace pmsearch::topics
