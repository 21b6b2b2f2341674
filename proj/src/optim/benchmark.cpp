#include "pmsearch/optim/benchmark.hpp"

#include <array>
#include <cmath>
#include <string>

#include <fmt/format.h>

namespace pmsearch::optim {

namespace {

constexpr std::array<bool, 8> kBinaryTarget{true, false, true, true, false, true, false, false};
constexpr std::array<const char*, 4> kChoiceTarget{"b", "c", "a", "b"};
constexpr std::array<double, 8> kNumericTarget{0.8, 0.15, 0.6, 0.35, 0.9, 0.05, 0.5, 0.7};

std::string bin(int i) { return fmt::format("x{}", i); }
std::string cat(int i) { return fmt::format("c{}", i); }
std::string num(int i) { return fmt::format("u{}", i); }

}  // namespace

ParamSpace planted_space()
{
    std::vector<Parameter> ps;
    for (int i = 0; i < 8; ++i) {
        ps.push_back(Parameter::binary(bin(i), false));
    }
    for (int i = 0; i < 4; ++i) {
        ps.push_back(Parameter::categorical(cat(i), {"a", "b", "c"}, "a"));
    }
    for (int i = 0; i < 8; ++i) {
        ps.push_back(Parameter::numeric(num(i), 0.0, 1.0, 0.5));
    }
    return ParamSpace(std::move(ps));
}

Configuration planted_optimum()
{
    Configuration c;
    for (int i = 0; i < 8; ++i) {
        c.set(bin(i), kBinaryTarget[i]);
        c.set(num(i), kNumericTarget[i]);
    }
    for (int i = 0; i < 4; ++i) {
        c.set(cat(i), std::string(kChoiceTarget[i]));
    }
    return c;
}

double planted_objective(const Configuration& config)
{
    // Additive part: 8 + 4 + 8 unit terms.
    double additive = 0.0;
    std::array<bool, 8> bits{};
    std::array<bool, 4> cats{};
    std::array<double, 8> closeness{};
    for (int i = 0; i < 8; ++i) {
        bits[i] = config.flag(bin(i)) == kBinaryTarget[i];
        additive += bits[i] ? 1.0 : 0.0;
        double d = config.number(num(i)) - kNumericTarget[i];
        closeness[i] = std::exp(-d * d / 0.02);
        additive += closeness[i];
    }
    for (int i = 0; i < 4; ++i) {
        cats[i] = config.choice(cat(i)) == kChoiceTarget[i];
        additive += cats[i] ? 1.0 : 0.0;
    }
    // Interactions: each pays only when both partners are right.
    double interaction = 0.0;
    for (int i = 0; i < 4; ++i) {
        interaction += (bits[2 * i] && bits[2 * i + 1]) ? 1.0 : 0.0;
        interaction += (cats[i] ? 1.0 : 0.0) * closeness[2 * i] * closeness[2 * i + 1];
    }
    return (additive + 2.0 * interaction) / (20.0 + 2.0 * 8.0);
}

}  // namespace pmsearch::optim
