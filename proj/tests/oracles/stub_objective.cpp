#include "stub_objective.hpp"

namespace pmsearch::testkit {

using optim::Parameter;

optim::ParamSpace stub_space()
{
    return optim::ParamSpace({Parameter::binary("feature.x", false), Parameter::binary("feature.y", false),
                              Parameter::numeric("weight.z", 0.0, 2.0, 1.0),
                              Parameter::categorical("mode", {"plain", "fancy"}, "plain")});
}

double stub_topic_score(const optim::Configuration& config, int topic)
{
    double s = 0.3 + 0.01 * static_cast<double>(topic % 7);
    s += config.flag("feature.x") ? 0.1 : 0.0;
    s += config.flag("feature.y") ? 0.05 : 0.0;
    s += 0.05 * (config.number("weight.z") - 1.0);
    s += config.choice("mode") == "fancy" ? 0.02 : 0.0;
    return s;
}

optim::Configuration stub_optimized()
{
    auto c = stub_space().defaults();
    c.set("feature.x", true);
    c.set("feature.y", true);
    c.set("weight.z", 1.8);
    c.set("mode", std::string("fancy"));
    return c;
}

harness::FoldEvaluator stub_evaluator(const harness::FoldPlan& plan)
{
    return [plan](const optim::Configuration& config, std::size_t fold) {
        std::map<eval::TopicId, double> out;
        for (int t : plan.test_topics(fold)) {
            out[t] = stub_topic_score(config, t);
        }
        return out;
    };
}

}  // namespace pmsearch::testkit
