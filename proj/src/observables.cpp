#include "dnls/observables.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "dnls/errors.hpp"

namespace dnls {

double norm(const WaveFunction& psi) {
    double s = 0.0;
    for (const auto& a : psi.amp) s += std::norm(a);
    return s;
}

double second_moment(const WaveFunction& psi) {
    const int c = psi.center();
    double s = 0.0;
    for (int j = 0; j < psi.size(); ++j) {
        const double n = j - c;
        s += n * n * std::norm(psi.amp[static_cast<std::size_t>(j)]);
    }
    return s;
}

double second_moment_centroid(const WaveFunction& psi) {
    const int c = psi.center();
    double w = 0.0, mean = 0.0;
    for (int j = 0; j < psi.size(); ++j) {
        const double pj = std::norm(psi.amp[static_cast<std::size_t>(j)]);
        w += pj;
        mean += (j - c) * pj;
    }
    if (w <= 0.0) throw FitError("second_moment_centroid: zero state");
    mean /= w;
    double s = 0.0;
    for (int j = 0; j < psi.size(); ++j) {
        const double n = (j - c) - mean;
        s += n * n * std::norm(psi.amp[static_cast<std::size_t>(j)]);
    }
    return s;
}

double energy(const WaveFunction& psi, const DisorderRealization& disorder,
              const ModelParams& params) {
    if (psi.size() != disorder.size())
        throw LatticeMismatchError("energy: state and disorder sizes differ");
    if (params.p <= -2.0) throw ConfigError("energy: p must be > -2");
    const int n = psi.size();
    const double nl_coeff = 2.0 * params.beta / (params.p + 2.0);
    const double half_exp = 0.5 * (params.p + 2.0);
    double e = 0.0;
    for (int j = 0; j < n; ++j) {
        const Complex& a = psi.amp[static_cast<std::size_t>(j)];
        const Complex& b = psi.amp[static_cast<std::size_t>((j + 1) % n)];
        const double abs2 = std::norm(a);
        e += -2.0 * (a.real() * b.real() + a.imag() * b.imag());
        e += disorder.epsilons[static_cast<std::size_t>(j)] * abs2;
        if (nl_coeff != 0.0) e += nl_coeff * std::pow(abs2, half_exp);
    }
    return e;
}

double participation_number(const WaveFunction& psi) {
    double s2 = 0.0, s4 = 0.0;
    for (const auto& a : psi.amp) {
        const double p = std::norm(a);
        s2 += p;
        s4 += p * p;
    }
    if (s4 <= 0.0) throw FitError("participation_number: zero state");
    return s2 * s2 / s4;
}

double tail_mass(const WaveFunction& psi, int margin) {
    if (margin < 0 || 2 * margin >= psi.size())
        throw ConfigError("tail_mass: margin must satisfy 0 <= margin < size/2");
    double s = 0.0;
    for (int j = 0; j < margin; ++j) {
        s += std::norm(psi.amp[static_cast<std::size_t>(j)]);
        s += std::norm(psi.amp[static_cast<std::size_t>(psi.size() - 1 - j)]);
    }
    return s;
}

ObservableRecord measure(double t, const WaveFunction& psi,
                         const DisorderRealization& disorder, const ModelParams& params,
                         bool centroid_m2) {
    ObservableRecord r;
    r.t = t;
    r.m2 = centroid_m2 ? second_moment_centroid(psi) : second_moment(psi);
    r.norm = norm(psi);
    r.energy = energy(psi, disorder, params);
    r.participation = participation_number(psi);
    r.tail_mass = tail_mass(psi, kTailGuardMargin);
    return r;
}

std::vector<double> MomentSeries::times() const {
    std::vector<double> v;
    v.reserve(records.size());
    for (const auto& r : records) v.push_back(r.t);
    return v;
}

std::vector<double> MomentSeries::m2() const {
    std::vector<double> v;
    v.reserve(records.size());
    for (const auto& r : records) v.push_back(r.m2);
    return v;
}

std::string MomentSeries::to_csv() const {
    std::string out = "t,m2,norm,energy,participation,tail_mass\n";
    char line[256];
    for (const auto& r : records) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.m2,
                      r.norm, r.energy, r.participation, r.tail_mass);
        out += line;
    }
    return out;
}

std::string MomentSeries::to_json() const {
    nlohmann::json j;
    j["meta"] = meta_json.empty() ? nlohmann::json::object()
                                  : nlohmann::json::parse(meta_json);
    j["columns"] = {"t", "m2", "norm", "energy", "participation", "tail_mass"};
    auto rows = nlohmann::json::array();
    for (const auto& r : records)
        rows.push_back({r.t, r.m2, r.norm, r.energy, r.participation, r.tail_mass});
    j["data"] = rows;
    return j.dump(2);
}

}  // namespace dnls
