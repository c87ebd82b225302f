#include "dnls/validation.hpp"

#include <cmath>

#include <json.hpp>

#include "dnls/errors.hpp"
#include "dnls/propagator.hpp"

namespace dnls {

std::string CriterionReport::to_json() const {
    nlohmann::json j;
    j["criterion"] = criterion;
    j["value"] = value;
    j["threshold"] = threshold;
    j["passed"] = passed;
    j["config"] = config_json.empty() ? nlohmann::json::object()
                                      : nlohmann::json::parse(config_json);
    j["detail"] = detail;
    return j.dump();
}

double delta_m2_integral(const std::vector<double>& times, const std::vector<double>& m2_a,
                         const std::vector<double>& m2_b) {
    if (times.size() != m2_a.size() || times.size() != m2_b.size())
        throw EnsembleError("delta_m2: series lengths differ");
    std::vector<double> t, f;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] <= 0.0) continue;
        if (m2_b[i] <= 0.0)
            throw EnsembleError("delta_m2: reference series nonpositive at t = " +
                                std::to_string(times[i]));
        t.push_back(times[i]);
        f.push_back(std::abs((m2_a[i] - m2_b[i]) / m2_b[i]));
    }
    if (t.size() < 2) throw EnsembleError("delta_m2: need at least two positive-time samples");
    double integral = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i)
        integral += 0.5 * (f[i] + f[i - 1]) * (t[i] - t[i - 1]);
    return integral / (t.back() - t.front());
}

CriterionReport check_t1(const SimulationConfig& config, std::uint64_t seed, double T) {
    SimulationConfig cfg = config;
    cfg.seed = seed;
    cfg.resolve();
    if (T > cfg.t_max) throw ConfigError("check_t1: T exceeds t_max");

    const auto disorder = make_disorder(seed, cfg.size(), cfg.W);
    const auto psi0 = initial_wavepacket(cfg.size());
    const auto rev = time_reverse_run(psi0, disorder, cfg.params(), cfg.split_scheme(),
                                      cfg.dt, T);

    CriterionReport rep;
    rep.criterion = "t1";
    rep.value = rev.delta_tr;
    rep.threshold = kT1Threshold;
    rep.passed = rep.value < rep.threshold;
    rep.config_json = cfg.to_json();
    rep.detail = "T=" + std::to_string(T) + " dt=" + std::to_string(cfg.dt) +
                 " seed=" + std::to_string(seed);
    return rep;
}

CriterionReport check_t2(const SimulationConfig& config, std::uint64_t seed, double T) {
    SimulationConfig cfg = config;
    cfg.seed = seed;
    cfg.resolve();
    if (T > cfg.t_max) throw ConfigError("check_t2: T exceeds t_max");
    cfg.t_max = T;

    const auto disorder = make_disorder(seed, cfg.size(), cfg.W);
    const auto psi0 = initial_wavepacket(cfg.size());
    const auto sample_times = cfg.make_sample_times();
    const auto scheme = cfg.split_scheme();

    const auto coarse =
        evolve(psi0, disorder, cfg.params(), scheme, cfg.dt, T, sample_times);
    const auto fine =
        evolve(psi0, disorder, cfg.params(), scheme, cfg.dt / 2.0, T, sample_times);

    CriterionReport rep;
    rep.criterion = "t2";
    rep.value = delta_m2_integral(coarse.series.times(), coarse.series.m2(),
                                  fine.series.m2());
    rep.threshold = kT2Threshold;
    rep.passed = rep.value < rep.threshold;
    rep.config_json = cfg.to_json();
    rep.detail = "T=" + std::to_string(T) + " dt=" + std::to_string(cfg.dt) + " vs dt/2, seed=" +
                 std::to_string(seed) + ", trapezoid over the shared sample grid";
    return rep;
}

CriterionReport check_t3(const EnsembleResult& at_dt, const EnsembleResult& at_half_dt) {
    if (at_dt.times != at_half_dt.times)
        throw EnsembleError("check_t3: sample grids differ");
    if (at_dt.completed != at_half_dt.completed)
        throw EnsembleError("check_t3: realization counts differ");

    CriterionReport rep;
    rep.criterion = "t3";
    rep.value = delta_m2_integral(at_dt.times, at_dt.mean_m2, at_half_dt.mean_m2);
    rep.threshold = kT2Threshold;
    rep.passed = rep.value < rep.threshold;
    rep.config_json = at_dt.meta_json;
    rep.detail = "ensemble mean over " + std::to_string(at_dt.completed) +
                 " realizations, dt vs dt/2";
    return rep;
}

}  // namespace dnls
