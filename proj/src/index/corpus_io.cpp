#include "pmsearch/index/corpus_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "pmsearch/error.hpp"

namespace pmsearch::index {

namespace {

using nlohmann::json;

std::vector<std::string> string_array(const json& value, const char* key)
{
    if (!value.is_array()) {
        throw InvalidArgument(std::string("\"") + key + "\" must be an array of strings");
    }
    std::vector<std::string> out;
    for (const auto& item : value) {
        if (!item.is_string()) {
            throw InvalidArgument(std::string("\"") + key + "\" must be an array of strings");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

std::string string_value(const json& obj, const char* key)
{
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw InvalidArgument(std::string("missing key \"") + key + "\"");
    }
    if (!it->is_string()) {
        throw InvalidArgument(std::string("\"") + key + "\" must be a string");
    }
    return it->get<std::string>();
}

int age_value(const json& value, const char* key)
{
    if (!value.is_number_integer()) {
        throw InvalidArgument(std::string("\"") + key + "\" must be an integer");
    }
    return value.get<int>();
}

Document parse_document(const std::string& line)
{
    json obj = json::parse(line);
    if (!obj.is_object()) {
        throw InvalidArgument("expected a JSON object");
    }
    for (const auto& [key, _] : obj.items()) {
        if (key != "doc_id" && key != "title" && key != "abstract" && key != "mesh" &&
            key != "gene" && key != "min_age" && key != "max_age" && key != "sex") {
            throw InvalidArgument("unknown key \"" + key + "\"");
        }
    }
    Document doc;
    doc.doc_id = string_value(obj, "doc_id");
    doc.title = string_value(obj, "title");
    doc.abstract = string_value(obj, "abstract");
    for (const char* key : {"mesh", "gene"}) {
        if (!obj.contains(key)) {
            throw InvalidArgument(std::string("missing key \"") + key + "\"");
        }
    }
    doc.mesh = string_array(obj["mesh"], "mesh");
    doc.gene = string_array(obj["gene"], "gene");
    if (obj.contains("min_age")) {
        doc.min_age = age_value(obj["min_age"], "min_age");
    }
    if (obj.contains("max_age")) {
        doc.max_age = age_value(obj["max_age"], "max_age");
    }
    if (obj.contains("sex")) {
        if (!obj["sex"].is_string()) {
            throw InvalidArgument("\"sex\" must be a string");
        }
        auto sex = parse_sex(obj["sex"].get<std::string>());
        if (!sex) {
            throw InvalidArgument("\"sex\" must be male, female or all");
        }
        doc.sex = sex;
    }
    validate(doc);
    return doc;
}

}  // namespace

std::vector<Document> read_corpus(std::istream& in, const std::string& source)
{
    std::vector<Document> docs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            docs.push_back(parse_document(line));
        } catch (const json::exception& e) {
            throw ParseError(source, line_no, e.what());
        } catch (const InvalidArgument& e) {
            throw ParseError(source, line_no, e.what());
        }
    }
    return docs;
}

std::vector<Document> read_corpus_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open corpus file: " + path);
    }
    return read_corpus(in, path);
}

std::string to_json_line(const Document& doc)
{
    nlohmann::ordered_json obj;
    obj["doc_id"] = doc.doc_id;
    obj["title"] = doc.title;
    obj["abstract"] = doc.abstract;
    obj["mesh"] = doc.mesh;
    obj["gene"] = doc.gene;
    if (doc.min_age) {
        obj["min_age"] = *doc.min_age;
    }
    if (doc.max_age) {
        obj["max_age"] = *doc.max_age;
    }
    if (doc.sex) {
        obj["sex"] = std::string(sex_name(*doc.sex));
    }
    return obj.dump();
}

void write_corpus(std::ostream& out, const std::vector<Document>& docs)
{
    for (const auto& doc : docs) {
        out << to_json_line(doc) << '\n';
    }
}

}  // namespace pmsearch::index
