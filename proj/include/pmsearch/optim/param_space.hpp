#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pmsearch::optim {

enum class ParamKind { binary, categorical, numeric };

std::string_view kind_name(ParamKind kind);

/// bool for binary, double for numeric, the choice label for categorical.
using ParamValue = std::variant<bool, double, std::string>;

struct Parameter {
    std::string name;
    ParamKind kind = ParamKind::binary;
    std::vector<std::string> choices;  ///< categorical only, >= 2 distinct labels
    double lo = 0.0;                   ///< numeric only, lo < hi
    double hi = 1.0;
    ParamValue default_value = false;

    static Parameter binary(std::string name, bool default_value);
    static Parameter categorical(std::string name, std::vector<std::string> choices,
                                 std::string default_value);
    static Parameter numeric(std::string name, double lo, double hi, double default_value);

    /// Throws InvalidArgument when `value` has the wrong type or is out of range.
    void check(const ParamValue& value) const;

    friend bool operator==(const Parameter&, const Parameter&) = default;
};

/// Assignment of a value to every parameter of a space.
class Configuration {
  public:
    using Map = std::map<std::string, ParamValue, std::less<>>;

    Configuration() = default;
    explicit Configuration(Map values) : values_(std::move(values)) {}

    const Map& values() const { return values_; }
    bool contains(std::string_view name) const { return values_.find(name) != values_.end(); }
    const ParamValue& at(std::string_view name) const;
    void set(const std::string& name, ParamValue value) { values_[name] = std::move(value); }

    // Typed accessors throw InvalidArgument when the parameter is missing or
    // holds another kind.
    bool flag(std::string_view name) const;
    double number(std::string_view name) const;
    const std::string& choice(std::string_view name) const;

    friend bool operator==(const Configuration&, const Configuration&) = default;

  private:
    Map values_;
};

class ParamSpace {
  public:
    ParamSpace() = default;
    /// Throws InvalidArgument on duplicate names or invalid ranges/defaults.
    explicit ParamSpace(std::vector<Parameter> parameters);

    const std::vector<Parameter>& parameters() const { return params_; }
    std::size_t size() const { return params_.size(); }
    std::size_t count(ParamKind kind) const;
    const Parameter* find(std::string_view name) const;
    /// Position of `name` in parameters(); throws when unknown.
    std::size_t position(std::string_view name) const;

    Configuration defaults() const;
    /// Throws InvalidArgument unless `config` assigns exactly this space's
    /// parameters, each in range.
    void validate(const Configuration& config) const;
    /// Defaults overlaid with `partial`; unknown names are rejected.
    Configuration complete(const Configuration& partial) const;

    /// Length of encode() vectors: one slot per binary and numeric parameter,
    /// one per choice of each categorical.
    std::size_t encoded_dim() const;

    friend bool operator==(const ParamSpace&, const ParamSpace&) = default;

  private:
    std::vector<Parameter> params_;
    std::map<std::string, std::size_t, std::less<>> lookup_;
};

/// binary -> {0,1}; categorical -> one-hot; numeric -> (v - lo) / (hi - lo).
std::vector<double> encode(const Configuration& config, const ParamSpace& space);

// Manifest: {"parameters": [{"name", "kind", "default", "choices" | "lo","hi"}]}.
ParamSpace read_space_json(const std::string& text, const std::string& source = "manifest");
ParamSpace read_space_file(const std::string& path);
std::string write_space_json(const ParamSpace& space);

// Configuration files: a flat JSON object name -> value, in space order.
/// Partial files are completed with defaults.
Configuration read_config_json(const std::string& text, const ParamSpace& space,
                               const std::string& source = "config");
Configuration read_config_file(const std::string& path, const ParamSpace& space);
std::string write_config_json(const Configuration& config, const ParamSpace& space);

/// Inline "name=value" override, parsed according to the parameter kind.
void apply_override(Configuration& config, const ParamSpace& space, std::string_view assignment);

}  // namespace pmsearch::optim
