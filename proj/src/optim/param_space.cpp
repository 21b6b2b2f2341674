#include "pmsearch/optim/param_space.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "pmsearch/error.hpp"

namespace pmsearch::optim {

using nlohmann::ordered_json;

std::string_view kind_name(ParamKind kind)
{
    switch (kind) {
    case ParamKind::binary: return "binary";
    case ParamKind::categorical: return "categorical";
    case ParamKind::numeric: return "numeric";
    }
    return "?";
}

Parameter Parameter::binary(std::string name, bool default_value)
{
    Parameter p;
    p.name = std::move(name);
    p.kind = ParamKind::binary;
    p.default_value = default_value;
    return p;
}

Parameter Parameter::categorical(std::string name, std::vector<std::string> choices,
                                 std::string default_value)
{
    Parameter p;
    p.name = std::move(name);
    p.kind = ParamKind::categorical;
    p.choices = std::move(choices);
    p.default_value = std::move(default_value);
    return p;
}

Parameter Parameter::numeric(std::string name, double lo, double hi, double default_value)
{
    Parameter p;
    p.name = std::move(name);
    p.kind = ParamKind::numeric;
    p.lo = lo;
    p.hi = hi;
    p.default_value = default_value;
    return p;
}

void Parameter::check(const ParamValue& value) const
{
    switch (kind) {
    case ParamKind::binary:
        if (!std::holds_alternative<bool>(value)) {
            throw InvalidArgument(name + ": expected a boolean");
        }
        return;
    case ParamKind::categorical: {
        const auto* s = std::get_if<std::string>(&value);
        if (s == nullptr || std::find(choices.begin(), choices.end(), *s) == choices.end()) {
            throw InvalidArgument(name + ": expected one of its choices");
        }
        return;
    }
    case ParamKind::numeric: {
        const auto* d = std::get_if<double>(&value);
        if (d == nullptr || !std::isfinite(*d) || *d < lo || *d > hi) {
            throw InvalidArgument(fmt::format("{}: expected a number in [{}, {}]", name, lo, hi));
        }
        return;
    }
    }
}

const ParamValue& Configuration::at(std::string_view name) const
{
    auto it = values_.find(name);
    if (it == values_.end()) {
        throw InvalidArgument("configuration has no parameter " + std::string(name));
    }
    return it->second;
}

namespace {

template <typename T>
const T& typed(const Configuration& c, std::string_view name, const char* kind)
{
    const auto* v = std::get_if<T>(&c.at(name));
    if (v == nullptr) {
        throw InvalidArgument(fmt::format("parameter {} is not {}", name, kind));
    }
    return *v;
}

}  // namespace

bool Configuration::flag(std::string_view name) const
{
    return typed<bool>(*this, name, "binary");
}

double Configuration::number(std::string_view name) const
{
    return typed<double>(*this, name, "numeric");
}

const std::string& Configuration::choice(std::string_view name) const
{
    return typed<std::string>(*this, name, "categorical");
}

ParamSpace::ParamSpace(std::vector<Parameter> parameters) : params_(std::move(parameters))
{
    for (std::size_t i = 0; i < params_.size(); ++i) {
        const auto& p = params_[i];
        if (p.name.empty()) {
            throw InvalidArgument("parameter name must not be empty");
        }
        if (!lookup_.emplace(p.name, i).second) {
            throw InvalidArgument("duplicate parameter " + p.name);
        }
        if (p.kind == ParamKind::categorical) {
            std::set<std::string> distinct(p.choices.begin(), p.choices.end());
            if (p.choices.size() < 2 || distinct.size() != p.choices.size()) {
                throw InvalidArgument(p.name + ": needs at least two distinct choices");
            }
        }
        if (p.kind == ParamKind::numeric && !(p.lo < p.hi)) {
            throw InvalidArgument(p.name + ": lo must be below hi");
        }
        p.check(p.default_value);
    }
}

std::size_t ParamSpace::count(ParamKind kind) const
{
    return static_cast<std::size_t>(std::count_if(
        params_.begin(), params_.end(), [&](const Parameter& p) { return p.kind == kind; }));
}

const Parameter* ParamSpace::find(std::string_view name) const
{
    auto it = lookup_.find(name);
    return it == lookup_.end() ? nullptr : &params_[it->second];
}

std::size_t ParamSpace::position(std::string_view name) const
{
    auto it = lookup_.find(name);
    if (it == lookup_.end()) {
        throw InvalidArgument("unknown parameter " + std::string(name));
    }
    return it->second;
}

Configuration ParamSpace::defaults() const
{
    Configuration c;
    for (const auto& p : params_) {
        c.set(p.name, p.default_value);
    }
    return c;
}

void ParamSpace::validate(const Configuration& config) const
{
    for (const auto& [name, value] : config.values()) {
        const auto* p = find(name);
        if (p == nullptr) {
            throw InvalidArgument("unknown parameter " + name);
        }
        p->check(value);
    }
    if (config.values().size() != params_.size()) {
        for (const auto& p : params_) {
            if (!config.contains(p.name)) {
                throw InvalidArgument("configuration lacks parameter " + p.name);
            }
        }
    }
}

Configuration ParamSpace::complete(const Configuration& partial) const
{
    Configuration c = defaults();
    for (const auto& [name, value] : partial.values()) {
        const auto* p = find(name);
        if (p == nullptr) {
            throw InvalidArgument("unknown parameter " + name);
        }
        p->check(value);
        c.set(name, value);
    }
    return c;
}

std::size_t ParamSpace::encoded_dim() const
{
    std::size_t dim = 0;
    for (const auto& p : params_) {
        dim += p.kind == ParamKind::categorical ? p.choices.size() : 1;
    }
    return dim;
}

std::vector<double> encode(const Configuration& config, const ParamSpace& space)
{
    space.validate(config);
    std::vector<double> out;
    out.reserve(space.encoded_dim());
    for (const auto& p : space.parameters()) {
        const auto& v = config.at(p.name);
        switch (p.kind) {
        case ParamKind::binary: out.push_back(std::get<bool>(v) ? 1.0 : 0.0); break;
        case ParamKind::categorical:
            for (const auto& c : p.choices) {
                out.push_back(c == std::get<std::string>(v) ? 1.0 : 0.0);
            }
            break;
        case ParamKind::numeric: out.push_back((std::get<double>(v) - p.lo) / (p.hi - p.lo)); break;
        }
    }
    return out;
}

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ordered_json parse_json(const std::string& text, const std::string& source)
{
    try {
        return ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw ParseError(source + ": " + e.what());
    }
}

ParamValue value_from_json(const Parameter& p, const ordered_json& j, const std::string& source)
{
    try {
        switch (p.kind) {
        case ParamKind::binary: return j.get<bool>();
        case ParamKind::categorical: return j.get<std::string>();
        case ParamKind::numeric:
            if (!j.is_number()) {
                break;
            }
            return j.get<double>();
        }
    } catch (const ordered_json::exception&) {
    }
    throw ParseError(fmt::format("{}: bad value for {} parameter {}", source, kind_name(p.kind),
                                 p.name));
}

ordered_json value_to_json(const ParamValue& v)
{
    return std::visit([](const auto& x) { return ordered_json(x); }, v);
}

}  // namespace

ParamSpace read_space_json(const std::string& text, const std::string& source)
{
    auto root = parse_json(text, source);
    if (!root.is_object() || !root.contains("parameters") || !root["parameters"].is_array()) {
        throw ParseError(source + ": expected an object with a \"parameters\" array");
    }
    std::vector<Parameter> params;
    try {
        for (const auto& j : root["parameters"]) {
            auto name = j.at("name").get<std::string>();
            auto kind = j.at("kind").get<std::string>();
            Parameter p;
            if (kind == "binary") {
                p = Parameter::binary(name, false);
            } else if (kind == "categorical") {
                p = Parameter::categorical(name, j.at("choices").get<std::vector<std::string>>(), "");
            } else if (kind == "numeric") {
                p = Parameter::numeric(name, j.at("lo").get<double>(), j.at("hi").get<double>(), 0);
            } else {
                throw ParseError(source + ": unknown kind " + kind + " for " + name);
            }
            p.default_value = value_from_json(p, j.at("default"), source);
            params.push_back(std::move(p));
        }
    } catch (const ordered_json::exception& e) {
        throw ParseError(source + ": " + e.what());
    }
    try {
        return ParamSpace(std::move(params));
    } catch (const InvalidArgument& e) {
        throw ParseError(source + ": " + e.what());
    }
}

ParamSpace read_space_file(const std::string& path)
{
    return read_space_json(slurp(path), path);
}

std::string write_space_json(const ParamSpace& space)
{
    ordered_json params = ordered_json::array();
    for (const auto& p : space.parameters()) {
        ordered_json j;
        j["name"] = p.name;
        j["kind"] = std::string(kind_name(p.kind));
        if (p.kind == ParamKind::categorical) {
            j["choices"] = p.choices;
        } else if (p.kind == ParamKind::numeric) {
            j["lo"] = p.lo;
            j["hi"] = p.hi;
        }
        j["default"] = value_to_json(p.default_value);
        params.push_back(std::move(j));
    }
    ordered_json root;
    root["parameters"] = std::move(params);
    return root.dump(2) + "\n";
}

Configuration read_config_json(const std::string& text, const ParamSpace& space,
                               const std::string& source)
{
    auto root = parse_json(text, source);
    if (!root.is_object()) {
        throw ParseError(source + ": expected a JSON object");
    }
    Configuration partial;
    for (const auto& [name, j] : root.items()) {
        const auto* p = space.find(name);
        if (p == nullptr) {
            throw ParseError(source + ": unknown parameter " + name);
        }
        partial.set(name, value_from_json(*p, j, source));
    }
    try {
        return space.complete(partial);
    } catch (const InvalidArgument& e) {
        throw ParseError(source + ": " + e.what());
    }
}

Configuration read_config_file(const std::string& path, const ParamSpace& space)
{
    return read_config_json(slurp(path), space, path);
}

std::string write_config_json(const Configuration& config, const ParamSpace& space)
{
    space.validate(config);
    ordered_json root = ordered_json::object();
    for (const auto& p : space.parameters()) {
        root[p.name] = value_to_json(config.at(p.name));
    }
    return root.dump(2) + "\n";
}

void apply_override(Configuration& config, const ParamSpace& space, std::string_view assignment)
{
    auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw InvalidArgument("override must look like name=value: " + std::string(assignment));
    }
    std::string name(assignment.substr(0, eq));
    std::string text(assignment.substr(eq + 1));
    const auto* p = space.find(name);
    if (p == nullptr) {
        throw InvalidArgument("unknown parameter " + name);
    }
    ParamValue value;
    switch (p->kind) {
    case ParamKind::binary:
        if (text == "true" || text == "1" || text == "on") {
            value = true;
        } else if (text == "false" || text == "0" || text == "off") {
            value = false;
        } else {
            throw InvalidArgument(name + ": expected true or false");
        }
        break;
    case ParamKind::categorical: value = text; break;
    case ParamKind::numeric: {
        double d = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            throw InvalidArgument(name + ": expected a number");
        }
        value = d;
        break;
    }
    }
    p->check(value);
    config.set(name, std::move(value));
}

}  // namespace pmsearch::optim
