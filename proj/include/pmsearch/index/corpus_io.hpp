#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pmsearch/index/document.hpp"

namespace pmsearch::index {

// Corpus files are JSON lines, one object per document:
//   {"doc_id":"...","title":"...","abstract":"...","mesh":[...],"gene":[...]}
// plus, for clinical trials, optional "min_age" and "max_age" (integers,
// years) and "sex" ("male" | "female" | "all"). Blank lines are skipped; any
// other key is rejected.

/// Throws ParseError with the 1-based line number of the first bad line.
std::vector<Document> read_corpus(std::istream& in, const std::string& source = "corpus");
std::vector<Document> read_corpus_file(const std::string& path);

/// Canonical form: keys in the order above, compact separators, one line each.
void write_corpus(std::ostream& out, const std::vector<Document>& docs);
std::string to_json_line(const Document& doc);

}  // namespace pmsearch::index
