// Acceptance runner. Each criterion prints exactly one PASS/FAIL line on
// stdout; progress and intermediate numbers go to stderr.
//
//   mobnet_acceptance [criterion...]     (no arguments runs all of them)

#include "mobnet/ensemble.hpp"
#include "mobnet/theory.hpp"
#include "support/property_checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace mobnet;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v, int precision = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

std::string pm(const MeanSe& s) {
    return fmt(s.mean) + "+-" + fmt(s.se, 2);
}

double combined(double a, double b) {
    return std::sqrt(a * a + b * b);
}

void log(const std::string& line) {
    std::cerr << "  " << line << std::endl;
}

WorldConfig base(double speed, double radius, Capacity capacity, Step transient, Step measure) {
    WorldConfig c;
    c.speed = speed;
    c.radius = radius;
    c.capacity = capacity;
    c.transient_steps = transient;
    c.measure_steps = measure;
    return c;
}

EnsembleOptions ensemble(std::uint32_t realizations) {
    EnsembleOptions opt;
    opt.realizations = realizations;
    // Deep congestion is unambiguous long before this many packets pile up.
    opt.traffic.max_packets = 500'000;
    return opt;
}

ThresholdEstimate rc_search(const std::string& label, const WorldConfig& cfg, Policy policy, std::uint32_t lo,
                            std::uint32_t hi, std::uint32_t realizations = 5) {
    const auto t0 = std::chrono::steady_clock::now();
    const ThresholdEstimate est = find_rc(cfg, policy, lo, hi, 0.01, ensemble(realizations));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream trail;
    for (const auto& ev : est.evaluations) {
        trail << " R=" << ev.parameter << ":" << fmt(ev.ensemble_mean, 3);
    }
    log(label + ": R_c=" + fmt(est.value) + " per-realization " + pm(est.spread) + " [" + fmt(secs, 3) + "s]" +
        trail.str());
    return est;
}

BetaThreshold beta_search(const std::string& label, const WorldConfig& cfg, double lo, double hi,
                          std::uint32_t realizations = 10, double rel_tol = 0.02) {
    const auto t0 = std::chrono::steady_clock::now();
    EnsembleOptions opt;
    opt.realizations = realizations;
    const BetaThreshold res = find_beta_c(cfg, Policy::greedy, lo, hi, -1.0, opt, rel_tol);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream trail;
    for (const auto& ev : res.estimate.evaluations) {
        trail << " b=" << fmt(ev.parameter, 4) << ":" << fmt(ev.ensemble_mean, 3);
    }
    log(label + ": beta_c=" + fmt(res.estimate.value) + " per-realization " + pm(res.estimate.spread) +
        " <T>=" + pm(res.avg_travel_time) + " [" + fmt(secs, 3) + "s]" + trail.str());
    return res;
}

// Per-realization threshold spread plus the search resolution.
double beta_error(const BetaThreshold& b, double rel_tol = 0.02) {
    return combined(b.estimate.spread.se, rel_tol * b.estimate.value);
}

// ---------------------------------------------------------------------------

Outcome capacity_gap() {
    const WorldConfig cfg = base(0.1, 1.0, Capacity(1), 2000, 10000);
    const auto random = rc_search("random", cfg, Policy::random, 1, 40);
    const auto greedy = rc_search("greedy", cfg, Policy::greedy, 100, 500);
    const bool ok = random.value >= 6 && random.value <= 12 && greedy.value >= 190 && greedy.value <= 350;
    return {ok, "R_c random=" + fmt(random.value) + " (want 6..12), greedy=" + fmt(greedy.value) +
                    " (want 190..350)"};
}

struct RcPoint {
    double speed;
    double radius;
    std::uint32_t lo;
    std::uint32_t hi;
};

std::vector<ThresholdEstimate> rc_points(const std::vector<RcPoint>& points) {
    std::vector<ThresholdEstimate> out;
    for (const auto& p : points) {
        const WorldConfig cfg = base(p.speed, p.radius, Capacity(1), 1000, 5000);
        out.push_back(rc_search("v=" + fmt(p.speed) + " r=" + fmt(p.radius), cfg, Policy::greedy, p.lo, p.hi));
    }
    return out;
}

// a strictly above b, by more than the combined standard error.
bool clearly_above(const ThresholdEstimate& a, const ThresholdEstimate& b) {
    return a.spread.mean - b.spread.mean > combined(a.spread.se, b.spread.se) && a.value > b.value;
}

Outcome rc_vs_radius() {
    std::ostringstream detail;
    bool ok = true;
    for (const auto& [speed, brackets] :
         std::vector<std::pair<double, std::vector<RcPoint>>>{
             {0.1, {{0.1, 0.8, 100, 300}, {0.1, 1.0, 150, 400}, {0.1, 2.0, 300, 1000}}},
             {0.01, {{0.01, 0.8, 60, 300}, {0.01, 1.0, 100, 400}, {0.01, 2.0, 200, 900}}}}) {
        const auto rc = rc_points(brackets);
        const bool mono = clearly_above(rc[1], rc[0]) && clearly_above(rc[2], rc[1]);
        ok = ok && mono;
        detail << (speed == 0.1 ? "" : "; ") << "v=" << speed << ": R_c(r=0.8,1,2)=" << pm(rc[0].spread) << ", "
               << pm(rc[1].spread) << ", " << pm(rc[2].spread);
    }
    return {ok, detail.str()};
}

Outcome rc_vs_speed() {
    const auto rc = rc_points({{0.001, 1.0, 50, 300}, {0.1, 1.0, 150, 400}, {0.8, 1.0, 50, 300}});
    const bool ok = clearly_above(rc[1], rc[0]) && clearly_above(rc[1], rc[2]);
    return {ok, "R_c(v=0.001,0.1,0.8)=" + pm(rc[0].spread) + ", " + pm(rc[1].spread) + ", " + pm(rc[2].spread)};
}

MeanSe travel_time(double speed, double radius, std::uint32_t rate) {
    WorldConfig cfg = base(speed, radius, Capacity(1), 1000, 4000);
    cfg.gen_rate = rate;
    std::vector<double> t;
    std::vector<double> eta;
    for (const auto& run : traffic_ensemble(cfg, Policy::greedy, ensemble(5))) {
        t.push_back(run.avg_travel_time);
        eta.push_back(run.eta);
    }
    const MeanSe s = mean_se(t);
    log("v=" + fmt(speed) + " r=" + fmt(radius) + " R=" + std::to_string(rate) + ": <T>=" + pm(s) +
        " eta=" + pm(mean_se(eta)));
    return s;
}

Outcome travel_time_trends() {
    const MeanSe r50 = travel_time(0.1, 1.0, 50);
    const MeanSe r100 = travel_time(0.1, 1.0, 100);
    const MeanSe r200 = travel_time(0.1, 1.0, 200);
    const MeanSe wide = travel_time(0.1, 2.0, 100);
    const MeanSe fast = travel_time(0.7, 1.0, 50);
    const bool in_r = r50.mean < r100.mean && r100.mean < r200.mean;
    const bool in_radius = wide.mean < r100.mean;
    const bool in_speed = fast.mean > r50.mean;
    return {in_r && in_radius && in_speed,
            "<T>(R=50,100,200)=" + pm(r50) + ", " + pm(r100) + ", " + pm(r200) + "; <T>(r=2)=" + pm(wide) +
                " vs <T>(r=1)=" + pm(r100) + "; <T>(v=0.7)=" + pm(fast) + " vs <T>(v=0.1)=" + pm(r50)};
}

WorldConfig epidemic_config(double speed, double radius, Capacity capacity, std::uint32_t rate) {
    WorldConfig cfg = base(speed, radius, capacity, 300, 1000);
    cfg.gen_rate = rate;
    cfg.rho_window = 500;
    return cfg;
}

Outcome mean_field_threshold() {
    const WorldConfig cfg = epidemic_config(0.1, 1.4, Capacity::infinite(), 4000);
    const BetaThreshold b = beta_search("C=inf R=4000", cfg, 0.01, 0.5);
    const double theory_bc = theory::beta_c_free(cfg.n_agents, cfg.gen_rate, b.avg_travel_time.mean);
    const double rel = std::fabs(b.estimate.value - theory_bc) / theory_bc;
    return {rel <= 0.15, "beta_c=" + fmt(b.estimate.value) + " vs N/(R<T>)=" + fmt(theory_bc) + " with <T>=" +
                             pm(b.avg_travel_time) + ": relative error " + fmt(100 * rel, 3) + "% (limit 15%)"};
}

// Shared by the two congested criteria; computed once per process.
std::uint32_t congested_rc() {
    static const std::uint32_t rc = [] {
        const WorldConfig cfg = base(0.5, 1.0, Capacity(10), 500, 2000);
        return static_cast<std::uint32_t>(rc_search("C=10 v=0.5", cfg, Policy::greedy, 200, 8000).value);
    }();
    return rc;
}

Outcome congested_limit() {
    const std::uint32_t rc = congested_rc();
    const BetaThreshold high = beta_search("C=10 R=5R_c", epidemic_config(0.5, 1.0, Capacity(10), 5 * rc), 0.01, 0.5);
    const std::uint32_t low_rate = rc / 2;
    const BetaThreshold low10 =
        beta_search("C=10 R=R_c/2", epidemic_config(0.5, 1.0, Capacity(10), low_rate), 0.01, 1.0);
    const BetaThreshold low_inf =
        beta_search("C=inf R=R_c/2", epidemic_config(0.5, 1.0, Capacity::infinite(), low_rate), 0.01, 1.0);
    const double bc = high.estimate.value;
    const double gap = std::fabs(low10.estimate.value - low_inf.estimate.value);
    const double err = combined(beta_error(low10), beta_error(low_inf));
    const bool ok = bc >= 0.08 && bc <= 0.12 && gap <= err;
    return {ok, "R_c=" + std::to_string(rc) + "; beta_c(R=" + std::to_string(5 * rc) + ")=" + fmt(bc) +
                    " (want 0.08..0.12); at R=" + std::to_string(low_rate) + " beta_c(C=10)=" +
                    fmt(low10.estimate.value) + " vs beta_c(C=inf)=" + fmt(low_inf.estimate.value) + ", gap " +
                    fmt(gap, 3) + " vs combined error " + fmt(err, 3)};
}

Outcome congestion_suppression() {
    const std::uint32_t rc = congested_rc();
    const std::uint32_t rate = 2 * rc;
    const BetaThreshold finite =
        beta_search("C=10 R=2R_c", epidemic_config(0.5, 1.0, Capacity(10), rate), 0.01, 0.6);
    const BetaThreshold infinite =
        beta_search("C=inf R=2R_c", epidemic_config(0.5, 1.0, Capacity::infinite(), rate), 0.005, 0.6);
    const double gap = finite.estimate.value - infinite.estimate.value;
    const double err = combined(beta_error(finite), beta_error(infinite));
    return {gap > err, "R=" + std::to_string(rate) + " (R_c=" + std::to_string(rc) + "): beta_c(C=10)=" +
                           fmt(finite.estimate.value) + " vs beta_c(C=inf)=" + fmt(infinite.estimate.value) +
                           ", gap " + fmt(gap, 3) + " vs combined error " + fmt(err, 3)};
}

Outcome property_suite() {
    const std::vector<std::pair<std::string, std::function<checks::Verdict()>>> parts = {
        {"metric", [] { return checks::torus_metric_axioms(100000, 11); }},
        {"index", [] { return checks::index_matches_oracle(1000, 100, 12); }},
        {"greedy", [] { return checks::greedy_matches_argmin(10000, 13); }},
        {"conservation", [] { return checks::conservation_and_fifo(10000, 14); }},
        {"infection", [] { return checks::infection_composition(0.3, 100000, 15); }},
        {"determinism", [] { return checks::seeded_determinism(16); }},
    };
    bool ok = true;
    std::ostringstream detail;
    for (const auto& [name, check] : parts) {
        const checks::Verdict v = check();
        log(name + ": " + (v.ok ? "ok" : "FAILED") + " (" + v.detail + ")");
        ok = ok && v.ok;
        detail << (detail.tellp() > 0 ? ", " : "") << name << (v.ok ? " ok" : " FAILED");
    }
    return {ok, detail.str()};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
    static const std::vector<std::pair<std::string, std::function<Outcome()>>> table = {
        {"capacity_gap", capacity_gap},
        {"rc_vs_radius", rc_vs_radius},
        {"rc_vs_speed", rc_vs_speed},
        {"travel_time_trends", travel_time_trends},
        {"mean_field_threshold", mean_field_threshold},
        {"congested_limit", congested_limit},
        {"congestion_suppression", congestion_suppression},
        {"property_suite", property_suite},
    };
    return table;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> wanted(argv + 1, argv + argc);
    int failures = 0;
    for (const auto& [name, run] : criteria()) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), name) == wanted.end()) {
            continue;
        }
        std::cerr << name << ":" << std::endl;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = run();
        } catch (const std::exception& e) {
            out = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (out.pass ? "PASS " : "FAIL ") << name << " [" << fmt(secs, 3) << "s]: " << out.detail
                  << std::endl;
        failures += out.pass ? 0 : 1;
    }
    for (const auto& w : wanted) {
        bool known = false;
        for (const auto& c : criteria()) {
            known = known || c.first == w;
        }
        if (!known) {
            std::cout << "FAIL " << w << ": unknown criterion" << std::endl;
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}
