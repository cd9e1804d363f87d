#include "mobnet/experiment.hpp"

#include "mobnet/epidemic.hpp"
#include "mobnet/metrics.hpp"
#include "mobnet/traffic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mobnet {

std::string to_string(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::gen_rate: return "R";
    case SweepAxis::speed: return "v";
    case SweepAxis::radius: return "r";
    case SweepAxis::beta: return "beta";
    }
    return "?";
}

SweepAxis parse_sweep_axis(const std::string& text) {
    if (text == "R" || text == "gen_rate") return SweepAxis::gen_rate;
    if (text == "v" || text == "speed") return SweepAxis::speed;
    if (text == "r" || text == "radius") return SweepAxis::radius;
    if (text == "beta" || text == "spread_rate") return SweepAxis::beta;
    throw ConfigError("sweep_axis", "expected R|v|r|beta, got '" + text + "'");
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw ConfigError(key, "expected a number, got '" + text + "'");
    }
    return v;
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& text) {
    Int v = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        throw ConfigError(key, "expected a non-negative integer, got '" + text + "'");
    }
    return v;
}

Capacity parse_capacity(const std::string& text) {
    if (text == "inf" || text == "infinite") {
        return Capacity::infinite();
    }
    return Capacity(parse_int<std::uint32_t>("capacity", text));
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_double(key, trim(item)));
    }
    return out;
}

using Setter = std::function<void(ExperimentSpec&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"n_agents", [](ExperimentSpec& s, const std::string& v) { s.base.n_agents = parse_int<std::uint32_t>("n_agents", v); }},
        {"side_length", [](ExperimentSpec& s, const std::string& v) { s.base.side_length = parse_double("side_length", v); }},
        {"speed", [](ExperimentSpec& s, const std::string& v) { s.base.speed = parse_double("speed", v); }},
        {"radius", [](ExperimentSpec& s, const std::string& v) { s.base.radius = parse_double("radius", v); }},
        {"capacity", [](ExperimentSpec& s, const std::string& v) { s.base.capacity = parse_capacity(v); }},
        {"gen_rate", [](ExperimentSpec& s, const std::string& v) { s.base.gen_rate = parse_int<std::uint32_t>("gen_rate", v); }},
        {"spread_rate", [](ExperimentSpec& s, const std::string& v) { s.base.spread_rate = parse_double("spread_rate", v); }},
        {"recovery_rate", [](ExperimentSpec& s, const std::string& v) { s.base.recovery_rate = parse_double("recovery_rate", v); }},
        {"initial_infected_fraction", [](ExperimentSpec& s, const std::string& v) {
             s.base.initial_infected_fraction = parse_double("initial_infected_fraction", v);
         }},
        {"rng_seed", [](ExperimentSpec& s, const std::string& v) { s.base.rng_seed = parse_int<std::uint64_t>("rng_seed", v); }},
        {"transient_steps", [](ExperimentSpec& s, const std::string& v) { s.base.transient_steps = parse_int<Step>("transient_steps", v); }},
        {"measure_steps", [](ExperimentSpec& s, const std::string& v) { s.base.measure_steps = parse_int<Step>("measure_steps", v); }},
        {"rho_window", [](ExperimentSpec& s, const std::string& v) { s.base.rho_window = parse_int<Step>("rho_window", v); }},
        {"distance", [](ExperimentSpec& s, const std::string& v) {
             if (v == "torus") s.base.distance = Metric::torus;
             else if (v == "euclidean") s.base.distance = Metric::euclidean;
             else throw ConfigError("distance", "expected torus|euclidean, got '" + v + "'");
         }},
        {"queue", [](ExperimentSpec& s, const std::string& v) {
             if (v == "strict") s.base.queue = QueueDiscipline::strict;
             else if (v == "skip_stuck") s.base.queue = QueueDiscipline::skip_stuck;
             else throw ConfigError("queue", "expected strict|skip_stuck, got '" + v + "'");
         }},
        {"policy", [](ExperimentSpec& s, const std::string& v) { s.policy = parse_policy(v); }},
        {"sweep_axis", [](ExperimentSpec& s, const std::string& v) { s.sweep_axis = parse_sweep_axis(v); }},
        {"sweep_values", [](ExperimentSpec& s, const std::string& v) { s.sweep_values = parse_list("sweep_values", v); }},
        {"realizations", [](ExperimentSpec& s, const std::string& v) { s.realizations = parse_int<std::uint32_t>("realizations", v); }},
        {"output_path", [](ExperimentSpec& s, const std::string& v) { s.output_path = v; }},
    };
    return table;
}

} // namespace

ExperimentSpec parse_config(std::string_view text) {
    ExperimentSpec spec;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        const std::string stripped = trim(line);
        if (stripped.empty()) {
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no), "expected key=value");
        }
        const std::string key = trim(std::string_view(stripped).substr(0, eq));
        const std::string value = trim(std::string_view(stripped).substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) {
            throw ConfigError(key, "unknown key");
        }
        if (!seen.insert(key).second) {
            throw ConfigError(key, "duplicate key");
        }
        if (value.empty()) {
            throw ConfigError(key, "missing value");
        }
        it->second(spec, value);
    }
    validate(spec.base);
    if (spec.realizations < 1) {
        throw ConfigError("realizations", "must be at least 1");
    }
    return spec;
}

ExperimentSpec load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read config '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate(const ExperimentSpec& spec) {
    validate(spec.base);
    if (spec.realizations < 1) {
        throw ConfigError("realizations", "must be at least 1");
    }
    if (spec.sweep_values.empty()) {
        throw ConfigError("sweep_values", "required for sweeps");
    }
    if (!std::is_sorted(spec.sweep_values.begin(), spec.sweep_values.end())) {
        throw ConfigError("sweep_values", "must be sorted ascending");
    }
    for (double v : spec.sweep_values) {
        WorldConfig probe = spec.base;
        switch (spec.sweep_axis) {
        case SweepAxis::gen_rate:
            if (v < 1 || v != std::floor(v)) throw ConfigError("sweep_values", "R values must be positive integers");
            probe.gen_rate = static_cast<std::uint32_t>(v);
            break;
        case SweepAxis::speed: probe.speed = v; break;
        case SweepAxis::radius: probe.radius = v; break;
        case SweepAxis::beta: probe.spread_rate = v; break;
        }
        try {
            validate(probe);
        } catch (const ConfigError& e) {
            throw ConfigError("sweep_values", e.what());
        }
    }
}

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

void write_csv(const ResultTable& table, std::ostream& out) {
    auto write_row = [&](const std::vector<std::string>& row) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            out << (k ? "," : "") << row[k];
        }
        out << '\n';
    };
    write_row(table.header);
    for (const auto& row : table.rows) {
        write_row(row);
    }
}

void write_csv(const ResultTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    write_csv(table, out);
    out.flush();
    if (!out) {
        throw std::runtime_error("error while writing '" + path + "'");
    }
}

namespace {

WorldConfig with_axis(WorldConfig c, SweepAxis axis, double value) {
    switch (axis) {
    case SweepAxis::gen_rate: c.gen_rate = static_cast<std::uint32_t>(value); break;
    case SweepAxis::speed: c.speed = value; break;
    case SweepAxis::radius: c.radius = value; break;
    case SweepAxis::beta: c.spread_rate = value; break;
    }
    return c;
}

} // namespace

ResultTable run_experiment(const ExperimentSpec& spec, unsigned threads, double eps_eta) {
    validate(spec);
    const std::size_t points = spec.sweep_values.size();
    const std::size_t jobs = points * spec.realizations;
    const std::string master = std::to_string(spec.base.rng_seed);
    const std::string reps = std::to_string(spec.realizations);
    ResultTable table;

    auto config_for = [&](std::size_t job) {
        WorldConfig c = with_axis(spec.base, spec.sweep_axis, spec.sweep_values[job / spec.realizations]);
        c.rng_seed = spec.base.rng_seed + job % spec.realizations;
        return c;
    };

    if (spec.sweep_axis == SweepAxis::beta) {
        std::vector<double> rho(jobs);
        parallel_for(jobs, threads, [&](std::size_t job) {
            rho[job] = simulate_epidemic(config_for(job), spec.policy).rho_steady;
        });
        table.header = csv::kBetaSweep;
        for (std::size_t p = 0; p < points; ++p) {
            const auto s = mean_se({rho.begin() + static_cast<std::ptrdiff_t>(p * spec.realizations),
                                    rho.begin() + static_cast<std::ptrdiff_t>((p + 1) * spec.realizations)});
            table.rows.push_back({format_number(spec.sweep_values[p]), format_number(s.mean), format_number(s.se),
                                  master, master, reps});
        }
        return table;
    }

    std::vector<double> eta(jobs);
    std::vector<double> avg_t(jobs);
    parallel_for(jobs, threads, [&](std::size_t job) {
        const auto run = simulate_traffic(config_for(job), spec.policy);
        eta[job] = run.eta;
        avg_t[job] = run.avg_travel_time;
    });
    table.header = csv::kRcSweep;
    std::vector<MeanSe> eta_stats;
    std::vector<MeanSe> t_stats;
    for (std::size_t p = 0; p < points; ++p) {
        const auto b = static_cast<std::ptrdiff_t>(p * spec.realizations);
        const auto e = static_cast<std::ptrdiff_t>((p + 1) * spec.realizations);
        eta_stats.push_back(mean_se({eta.begin() + b, eta.begin() + e}));
        t_stats.push_back(mean_se({avg_t.begin() + b, avg_t.begin() + e}));
    }
    // Scan estimate: last free-flow point before the first congested one.
    // Unset when the sweep never leaves free flow or starts congested.
    std::optional<std::size_t> rc_row;
    for (std::size_t p = 1; p < points && eta_stats[0].mean < eps_eta; ++p) {
        if (!(eta_stats[p].mean < eps_eta)) {
            if (eta_stats[p - 1].mean < eps_eta) {
                rc_row = p - 1;
            }
            break;
        }
    }
    for (std::size_t p = 0; p < points; ++p) {
        table.rows.push_back({format_number(spec.sweep_values[p]), format_number(eta_stats[p].mean),
                              format_number(eta_stats[p].se), rc_row == p ? "1" : "0", format_number(t_stats[p].mean),
                              format_number(t_stats[p].se), master, master, reps});
    }
    return table;
}

ResultTable run_trace(const WorldConfig& config, Policy policy, std::vector<std::uint64_t>* queue_sums) {
    Simulation sim(config, policy);
    ResultTable table;
    table.header = csv::kRun;
    const std::string seed = std::to_string(config.rng_seed);
    const Step total = config.transient_steps + config.measure_steps;
    const double n = static_cast<double>(config.n_agents);
    for (Step t = 0; t < total; ++t) {
        if (t == config.transient_steps && config.spread_rate > 0.0) {
            sim.seed_epidemic();
        }
        const StepRecord rec = sim.step();
        table.rows.push_back({std::to_string(rec.t), std::to_string(rec.packets_in_system),
                              std::to_string(rec.delivered), format_number(rec.infected / n), seed});
        if (queue_sums && t >= config.transient_steps) {
            accumulate_queue_lengths(sim.world(), *queue_sums);
        }
    }
    return table;
}

} // namespace mobnet
