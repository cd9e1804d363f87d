#include "mobnet/config.hpp"
#include "mobnet/experiment.hpp"

#include <doctest.h>

using namespace mobnet;

namespace {

std::string rejected_key(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "";
}

} // namespace

TEST_SUITE("config") {

TEST_CASE("empty file gives the default desk configuration") {
    const ExperimentSpec spec = parse_config("");
    CHECK(spec.base.n_agents == 1500);
    CHECK(spec.base.side_length == 10.0);
    CHECK(spec.base.capacity.per_step() == 1);
    CHECK(spec.base.transient_steps == 5000);
    CHECK(spec.base.measure_steps == 50000);
    CHECK(spec.base.recovery_rate == 1.0);
    CHECK(spec.base.initial_infected_fraction == 0.1);
    CHECK(spec.base.distance == Metric::torus);
    CHECK(spec.base.queue == QueueDiscipline::strict);
    CHECK(spec.realizations == 5);
    CHECK(spec.policy == Policy::greedy);
}

TEST_CASE("infinite-capacity configuration with R=4000") {
    const ExperimentSpec spec = parse_config("speed=0.1\nradius=1.4\ngen_rate=4000\ncapacity=inf");
    CHECK(spec.base.speed == 0.1);
    CHECK(spec.base.radius == 1.4);
    CHECK(spec.base.gen_rate == 4000);
    CHECK(spec.base.capacity.is_infinite());
}

TEST_CASE("comments, blank lines and whitespace") {
    const ExperimentSpec spec = parse_config("# header\n\n  speed = 0.5  # inline\npolicy=random\nsweep_values=1, 2,3\n");
    CHECK(spec.base.speed == 0.5);
    CHECK(spec.policy == Policy::random);
    CHECK(spec.sweep_values == std::vector<double>{1, 2, 3});
}

TEST_CASE("errors name the offending key") {
    CHECK(rejected_key("radius=0") == "radius");
    CHECK(rejected_key("radius=5") == "radius");
    CHECK(rejected_key("speed=-1") == "speed");
    CHECK(rejected_key("n_agents=1") == "n_agents");
    CHECK(rejected_key("capacity=0") == "capacity");
    CHECK(rejected_key("capacity=lots") == "capacity");
    CHECK(rejected_key("gen_rate=0") == "gen_rate");
    CHECK(rejected_key("spread_rate=1.5") == "spread_rate");
    CHECK(rejected_key("recovery_rate=-0.1") == "recovery_rate");
    CHECK(rejected_key("measure_steps=0") == "measure_steps");
    CHECK(rejected_key("flux=3") == "flux");
    CHECK(rejected_key("speed=0.1\nspeed=0.2") == "speed");
    CHECK(rejected_key("speed=") == "speed");
    CHECK(rejected_key("speed=fast") == "speed");
    CHECK(rejected_key("distance=manhattan") == "distance");
    CHECK(rejected_key("queue=lifo") == "queue");
    CHECK(rejected_key("policy=flood") == "policy");
    CHECK(rejected_key("realizations=0") == "realizations");
    CHECK_FALSE(rejected_key("just words").empty());
}

TEST_CASE("sweep validation") {
    ExperimentSpec spec = parse_config("sweep_values=50,10");
    CHECK_THROWS_AS(validate(spec), ConfigError);
    spec.sweep_values = {};
    CHECK_THROWS_AS(validate(spec), ConfigError);
    spec.sweep_values = {10, 50};
    CHECK_NOTHROW(validate(spec));
    spec.sweep_values = {10.5};
    CHECK_THROWS_AS(validate(spec), ConfigError);
}

TEST_CASE("capacity") {
    CHECK(Capacity(10).to_string() == "10");
    CHECK(Capacity::infinite().to_string() == "inf");
    CHECK(Capacity::infinite().is_infinite());
    CHECK_THROWS_AS((void)Capacity::infinite().finite_value(), std::domain_error);
    CHECK(Capacity(3).finite_value() == 3);
}

TEST_CASE("missing config file") {
    CHECK_THROWS_AS(load_config("/nonexistent/dir/cfg.txt"), std::runtime_error);
}

}
