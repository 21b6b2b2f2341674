#include "pmsearch/topics/topic.hpp"

#include <charconv>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fmt/format.h>

#include "pmsearch/error.hpp"

namespace pmsearch::topics {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string required(const pt::ptree& node, const char* key, int number)
{
    auto child = node.get_child_optional(key);
    std::string value = child ? trim(child->data()) : std::string();
    if (value.empty()) {
        throw ParseError(fmt::format("topic {}: missing <{}> element", number, key));
    }
    return value;
}

}  // namespace

std::vector<std::string> gene_aspects(const Topic& topic)
{
    std::vector<std::string> out;
    std::string_view rest = topic.gene;
    while (true) {
        auto comma = rest.find(',');
        auto part = trim(rest.substr(0, comma));
        if (!part.empty()) {
            out.push_back(std::move(part));
        }
        if (comma == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(comma + 1);
    }
    return out;
}

std::vector<Topic> parse_topics(const std::string& xml_text)
{
    pt::ptree tree;
    std::istringstream in(xml_text);
    try {
        pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw ParseError("topics", e.line(), e.message());
    }
    auto root = tree.get_child_optional("topics");
    if (!root) {
        throw ParseError("topics: missing <topics> root element");
    }
    static const std::regex demographic(R"(^\s*(\d{1,3})-year-old\s+(male|female)\s*$)",
                                        std::regex::icase);
    std::vector<Topic> topics;
    std::set<int> seen;
    for (const auto& [tag, node] : *root) {
        if (tag != "topic") {
            continue;
        }
        Topic t;
        auto number_text = trim(node.get<std::string>("<xmlattr>.number", ""));
        auto [ptr, ec] = std::from_chars(number_text.data(), number_text.data() + number_text.size(),
                                         t.number);
        if (ec != std::errc() || ptr != number_text.data() + number_text.size() || t.number < 1) {
            throw ParseError(fmt::format("topic with bad number attribute '{}'", number_text));
        }
        if (!seen.insert(t.number).second) {
            throw ParseError(fmt::format("topic {}: duplicate number", t.number));
        }
        t.disease = required(node, "disease", t.number);
        t.gene = required(node, "gene", t.number);
        auto demo = required(node, "demographic", t.number);
        std::smatch m;
        if (!std::regex_match(demo, m, demographic)) {
            throw ParseError(fmt::format("topic {}: malformed demographic '{}'", t.number, demo));
        }
        t.age = std::stoi(m[1].str());
        t.sex = *index::parse_sex(m[2].str());
        topics.push_back(std::move(t));
    }
    return topics;
}

std::vector<Topic> read_topics_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_topics(ss.str());
}

namespace {

std::string escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string write_topics(const std::vector<Topic>& topics)
{
    std::string out = "<topics>\n";
    for (const auto& t : topics) {
        out += fmt::format("  <topic number=\"{}\">\n", t.number);
        out += fmt::format("    <disease>{}</disease>\n", escape(t.disease));
        out += fmt::format("    <gene>{}</gene>\n", escape(t.gene));
        out += fmt::format("    <demographic>{}-year-old {}</demographic>\n", t.age,
                           index::sex_name(t.sex));
        out += "  </topic>\n";
    }
    out += "</topics>\n";
    return out;
}

}  // namespace pmsearch::topics
