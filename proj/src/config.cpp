#include "dnls/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "dnls/errors.hpp"

namespace dnls {

double default_dt(double beta) {
    if (beta <= 0.25) return 0.1;
    if (beta <= 0.5) return 0.02;
    if (beta <= 0.75) return 0.01;
    if (beta <= 1.0) return 0.00025;
    return 0.1;
}

std::string SimulationConfig::resolve() {
    std::string warning;
    if (dt <= 0.0) {
        dt = default_dt(beta);
        if (beta > 1.0)
            warning = "default dt for beta > 1 is not certified by criteria (t1)/(t2)";
    }
    validate();
    return warning;
}

void SimulationConfig::validate() const {
    if (beta < 0.0) throw ConfigError("beta must be >= 0");
    if (p < 0.0) throw ConfigError("p must be >= 0");
    if (W < 0.0) throw ConfigError("W must be >= 0");
    if (dt <= 0.0) throw ConfigError("dt must be > 0");
    if (t_max <= 0.0) throw ConfigError("t_max must be > 0");
    if (half_width < 1) throw ConfigError("lattice half-width L must be >= 1");
    if (sample_points < 1) throw ConfigError("sample_points must be >= 1");
    const double steps = t_max / dt;
    if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps))
        throw ConfigError("t_max must be a multiple of dt");
    SplitScheme::by_name(scheme).validate();
}

std::vector<double> SimulationConfig::make_sample_times() const {
    const double t_lo = std::min(1.0, t_max);
    std::set<long long> steps;
    steps.insert(0);
    if (sample_points == 1 || t_max == t_lo) {
        steps.insert(std::llround(t_max / dt));
    } else {
        const double ratio = std::log(t_max / t_lo) / (sample_points - 1);
        for (int i = 0; i < sample_points; ++i) {
            const double t = t_lo * std::exp(ratio * i);
            const long long k = std::llround(t / dt);
            if (k >= 1) steps.insert(std::min(k, std::llround(t_max / dt)));
        }
        steps.insert(std::llround(t_max / dt));
    }
    std::vector<double> times;
    times.reserve(steps.size());
    for (long long k : steps) times.push_back(static_cast<double>(k) * dt);
    return times;
}

std::string SimulationConfig::to_json() const {
    nlohmann::json j;
    j["beta"] = beta;
    j["p"] = p;
    j["W"] = W;
    j["dt"] = dt;
    j["t_max"] = t_max;
    j["half_width"] = half_width;
    j["scheme"] = scheme;
    j["sample_points"] = sample_points;
    j["seed"] = seed;
    j["centroid_m2"] = centroid_m2;
    return j.dump();
}

SimulationConfig SimulationConfig::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config JSON: ") + e.what());
    }
    SimulationConfig cfg;
    try {
        if (j.contains("beta")) cfg.beta = j["beta"].get<double>();
        if (j.contains("p")) cfg.p = j["p"].get<double>();
        if (j.contains("W")) cfg.W = j["W"].get<double>();
        if (j.contains("dt")) cfg.dt = j["dt"].get<double>();
        if (j.contains("t_max")) cfg.t_max = j["t_max"].get<double>();
        if (j.contains("half_width")) cfg.half_width = j["half_width"].get<int>();
        if (j.contains("scheme")) cfg.scheme = j["scheme"].get<std::string>();
        if (j.contains("sample_points")) cfg.sample_points = j["sample_points"].get<int>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("centroid_m2")) cfg.centroid_m2 = j["centroid_m2"].get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config field: ") + e.what());
    }
    return cfg;
}

std::string config_diff(const std::string& json_a, const std::string& json_b) {
    const auto a = nlohmann::json::parse(json_a);
    const auto b = nlohmann::json::parse(json_b);
    std::string diff;
    std::set<std::string> keys;
    for (auto it = a.begin(); it != a.end(); ++it) keys.insert(it.key());
    for (auto it = b.begin(); it != b.end(); ++it) keys.insert(it.key());
    for (const auto& k : keys) {
        const std::string va = a.contains(k) ? a[k].dump() : "<missing>";
        const std::string vb = b.contains(k) ? b[k].dump() : "<missing>";
        if (va != vb) diff += "  " + k + ": " + va + " != " + vb + "\n";
    }
    return diff;
}

}  // namespace dnls
