#pragma once

#include <string>
#include <vector>

#include "pmsearch/index/document.hpp"

namespace pmsearch::topics {

struct Topic {
    int number = 0;
    std::string disease;
    std::string gene;  ///< one or more comma-separated gene aspects
    int age = 0;
    index::Sex sex = index::Sex::all;

    friend bool operator==(const Topic&, const Topic&) = default;
};

/// Comma-split, trimmed, empty aspects dropped.
std::vector<std::string> gene_aspects(const Topic& topic);

// Topic files:
//   <topics>
//     <topic number="38">
//       <disease>cholangiocarcinoma</disease>
//       <gene>IDH1</gene>
//       <demographic>50-year-old male</demographic>
//     </topic>
//   </topics>
// Extra child elements (e.g. <other>) are ignored.

/// Throws ParseError on malformed XML, and on a missing or malformed
/// element naming the topic number.
std::vector<Topic> parse_topics(const std::string& xml_text);
std::vector<Topic> read_topics_file(const std::string& path);
std::string write_topics(const std::vector<Topic>& topics);

}  // namespace pmsearch::topics
