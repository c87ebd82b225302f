#include "dnls/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "dnls/errors.hpp"

namespace dnls {

namespace {

// FFTW's planner is not thread-safe; executing plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct Dft {
    int n = 0;
    Complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    explicit Dft(int size) : n(size) {
        buf = static_cast<Complex*>(fftw_malloc(sizeof(Complex) * static_cast<std::size_t>(n)));
        if (!buf) throw std::bad_alloc();
        std::lock_guard<std::mutex> lock(planner_mutex());
        auto* raw = reinterpret_cast<fftw_complex*>(buf);
        // FFTW_ESTIMATE keeps plan selection deterministic run to run.
        fwd = fftw_plan_dft_1d(n, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(n, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    ~Dft() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (buf) fftw_free(buf);
    }

    Dft(const Dft&) = delete;
    Dft& operator=(const Dft&) = delete;

    void forward() { fftw_execute(fwd); }
    void backward_normalized() {
        fftw_execute(bwd);
        const double inv = 1.0 / n;
        for (int i = 0; i < n; ++i) buf[i] *= inv;
    }
};

std::vector<Complex> kinetic_phases(int n, double tau) {
    std::vector<Complex> ph(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
        const double k = 2.0 * std::numbers::pi * m / n;
        ph[static_cast<std::size_t>(m)] = std::polar(1.0, 2.0 * std::cos(k) * tau);
    }
    return ph;
}

std::vector<Complex> disorder_phases(const std::vector<double>& eps, double tau) {
    std::vector<Complex> ph(eps.size());
    for (std::size_t i = 0; i < eps.size(); ++i) ph[i] = std::polar(1.0, -eps[i] * tau);
    return ph;
}

// psi_n *= exp(-i (eps_n + beta |psi_n|^p) tau), with the disorder factor
// taken from a precomputed table.
void apply_potential_phases(Complex* psi, int n, const std::vector<Complex>& dis_phase,
                            double beta, double p, double tau) {
    const double bt = beta * tau;
    if (beta == 0.0 || bt == 0.0) {
        for (int i = 0; i < n; ++i) psi[i] *= dis_phase[static_cast<std::size_t>(i)];
    } else if (p == 2.0) {
        for (int i = 0; i < n; ++i) {
            const double abs2 = std::norm(psi[i]);
            psi[i] *= dis_phase[static_cast<std::size_t>(i)] * std::polar(1.0, -bt * abs2);
        }
    } else if (p == 0.0) {
        // |psi|^0 == 1: a constant beta phase on every site. Sites with
        // psi_n = 0 stay 0, so the convention at the origin is moot.
        const Complex ph = std::polar(1.0, -bt);
        for (int i = 0; i < n; ++i) psi[i] *= dis_phase[static_cast<std::size_t>(i)] * ph;
    } else {
        const double half_p = 0.5 * p;
        for (int i = 0; i < n; ++i) {
            const double amp_p = std::pow(std::norm(psi[i]), half_p);
            psi[i] *= dis_phase[static_cast<std::size_t>(i)] * std::polar(1.0, -bt * amp_p);
        }
    }
}

}  // namespace

struct Propagator::Impl {
    Dft dft;
    std::vector<double> eps;
    ModelParams params;
    SplitScheme scheme;
    double dt;

    // Lazily built tables, keyed by the exact tau value.
    std::vector<std::pair<double, std::vector<Complex>>> kin_tables;
    std::vector<std::pair<double, std::vector<Complex>>> dis_tables;

    Impl(const DisorderRealization& disorder, const ModelParams& prm, const SplitScheme& sch,
         double step)
        : dft(disorder.size()), eps(disorder.epsilons), params(prm), scheme(sch), dt(step) {
        scheme.validate();
    }

    const std::vector<Complex>& kin_table(double tau) {
        for (const auto& [key, table] : kin_tables)
            if (key == tau) return table;
        kin_tables.emplace_back(tau, kinetic_phases(dft.n, tau));
        return kin_tables.back().second;
    }

    const std::vector<Complex>& dis_table(double tau) {
        for (const auto& [key, table] : dis_tables)
            if (key == tau) return table;
        dis_tables.emplace_back(tau, disorder_phases(eps, tau));
        return dis_tables.back().second;
    }

    void apply_kinetic(double coeff) {
        if (coeff == 0.0) return;
        const auto& ph = kin_table(coeff * dt);
        dft.forward();
        Complex* b = dft.buf;
        for (int m = 0; m < dft.n; ++m) b[m] *= ph[static_cast<std::size_t>(m)];
        dft.backward_normalized();
    }

    void apply_potential(double coeff) {
        const double tau = coeff * dt;
        apply_potential_phases(dft.buf, dft.n, dis_table(tau), params.beta, params.p, tau);
    }

    void step_through(double lead_coeff, bool flush, double& pending) {
        const auto& c = scheme.kinetic_coeffs;
        const auto& d = scheme.potential_coeffs;
        const std::size_t nk = c.size();
        apply_kinetic(lead_coeff);
        for (std::size_t j = 0; j + 1 < nk; ++j) {
            apply_potential(d[j]);
            if (j + 2 < nk) apply_kinetic(c[j + 1]);
        }
        if (flush) {
            apply_kinetic(c[nk - 1]);
            pending = 0.0;
        } else {
            pending = c[nk - 1];
        }
    }
};

Propagator::Propagator(const DisorderRealization& disorder, const ModelParams& params,
                       const SplitScheme& scheme, double dt)
    : impl_(std::make_unique<Impl>(disorder, params, scheme, dt)) {
    if (dt == 0.0) throw ConfigError("Propagator: dt must be nonzero");
}

Propagator::~Propagator() = default;

int Propagator::size() const { return impl_->dft.n; }

void Propagator::load(const WaveFunction& psi) {
    if (psi.size() != impl_->dft.n)
        throw LatticeMismatchError("Propagator::load: state size differs from lattice size");
    std::memcpy(impl_->dft.buf, psi.amp.data(), sizeof(Complex) * psi.amp.size());
}

void Propagator::store(WaveFunction& psi) const {
    psi.amp.resize(static_cast<std::size_t>(impl_->dft.n));
    std::memcpy(psi.amp.data(), impl_->dft.buf, sizeof(Complex) * psi.amp.size());
}

void Propagator::step() {
    double pending = 0.0;
    impl_->step_through(impl_->scheme.kinetic_coeffs.front(), true, pending);
}

void Propagator::run(long long n_steps, const std::vector<long long>& flush_steps,
                     const std::function<void(long long)>& on_flush) {
    const double c_first = impl_->scheme.kinetic_coeffs.front();
    double pending = 0.0;
    std::size_t next = 0;
    while (next < flush_steps.size() && flush_steps[next] < 1) ++next;
    for (long long s = 1; s <= n_steps; ++s) {
        const bool sampled = next < flush_steps.size() && flush_steps[next] == s;
        const bool flush = sampled || s == n_steps;
        impl_->step_through(c_first + pending, flush, pending);
        if (sampled) {
            on_flush(s);
            ++next;
        }
    }
}

WaveFunction potential_phase_step(const WaveFunction& psi, const DisorderRealization& disorder,
                                  const ModelParams& params, double tau) {
    if (psi.size() != disorder.size())
        throw LatticeMismatchError("potential_phase_step: state and disorder sizes differ");
    WaveFunction out = psi;
    const auto dis = disorder_phases(disorder.epsilons, tau);
    apply_potential_phases(out.amp.data(), out.size(), dis, params.beta, params.p, tau);
    return out;
}

WaveFunction kinetic_step(const WaveFunction& psi, double tau) {
    Dft dft(psi.size());
    std::memcpy(dft.buf, psi.amp.data(), sizeof(Complex) * psi.amp.size());
    const auto ph = kinetic_phases(dft.n, tau);
    dft.forward();
    for (int m = 0; m < dft.n; ++m) dft.buf[m] *= ph[static_cast<std::size_t>(m)];
    dft.backward_normalized();
    WaveFunction out;
    out.amp.assign(dft.buf, dft.buf + dft.n);
    return out;
}

WaveFunction saba_step(const WaveFunction& psi, const DisorderRealization& disorder,
                       const ModelParams& params, const SplitScheme& scheme, double dt) {
    Propagator prop(disorder, params, scheme, dt);
    prop.load(psi);
    prop.step();
    WaveFunction out;
    prop.store(out);
    return out;
}

namespace {

std::vector<long long> to_steps(const std::vector<double>& sample_times, double dt,
                                double t_max) {
    std::vector<long long> steps;
    steps.reserve(sample_times.size());
    for (double t : sample_times) {
        if (t < 0.0 || t > t_max * (1.0 + 1e-12))
            throw ConfigError("sample time outside [0, t_max]");
        const long long k = std::llround(t / dt);
        if (std::abs(static_cast<double>(k) * dt - t) > 1e-9 * std::max(1.0, std::abs(t)))
            throw ConfigError("sample time " + std::to_string(t) + " is not a multiple of dt");
        steps.push_back(k);
    }
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
    return steps;
}

long long step_count(double t_max, double dt) {
    const double steps = t_max / dt;
    const long long n = std::llround(steps);
    if (n < 1 || std::abs(steps - static_cast<double>(n)) > 1e-9 * std::max(1.0, steps))
        throw ConfigError("t_max must be a positive multiple of dt");
    return n;
}

}  // namespace

EvolveResult evolve(const WaveFunction& psi0, const DisorderRealization& disorder,
                    const ModelParams& params, const SplitScheme& scheme, double dt,
                    double t_max, const std::vector<double>& sample_times,
                    const EvolveOptions& opts) {
    if (psi0.size() != disorder.size())
        throw LatticeMismatchError("evolve: state and disorder sizes differ");
    if (dt <= 0.0) throw ConfigError("evolve: dt must be > 0");
    const long long n_steps = step_count(t_max, dt);
    auto flush_steps = to_steps(sample_times, dt, t_max);

    EvolveResult out;
    out.series.meta_json = opts.meta_json;

    WaveFunction scratch;
    Propagator prop(disorder, params, scheme, dt);
    prop.load(psi0);

    auto record = [&](double t) {
        prop.store(scratch);
        auto rec = measure(t, scratch, disorder, params, opts.centroid_m2);
        if (rec.tail_mass > opts.tail_threshold)
            throw BoundaryContaminationError(t, rec.tail_mass, opts.tail_threshold);
        out.series.records.push_back(rec);
    };

    record(0.0);
    if (!flush_steps.empty() && flush_steps.front() == 0)
        flush_steps.erase(flush_steps.begin());

    prop.run(n_steps, flush_steps, [&](long long s) { record(static_cast<double>(s) * dt); });
    prop.store(out.final_state);
    return out;
}

TimeReversalResult time_reverse_run(const WaveFunction& psi0,
                                    const DisorderRealization& disorder,
                                    const ModelParams& params, const SplitScheme& scheme,
                                    double dt, double T, const EvolveOptions& opts) {
    if (psi0.size() != disorder.size())
        throw LatticeMismatchError("time_reverse_run: state and disorder sizes differ");
    if (dt <= 0.0) throw ConfigError("time_reverse_run: dt must be > 0");
    const long long n_steps = step_count(T, dt);

    // Guard checkpoints only; a coarse geometric grid is enough to catch
    // boundary contamination.
    std::vector<long long> guards;
    for (long long k = 1; k < n_steps; k = std::max(k + 1, 2 * k)) guards.push_back(k);

    WaveFunction scratch;
    auto guard = [&](Propagator& prop, long long s, double sign) {
        prop.store(scratch);
        const double tm = tail_mass(scratch, opts.tail_margin);
        if (tm > opts.tail_threshold)
            throw BoundaryContaminationError(sign * static_cast<double>(s) * dt, tm,
                                             opts.tail_threshold);
    };

    Propagator fwd(disorder, params, scheme, dt);
    fwd.load(psi0);
    fwd.run(n_steps, guards, [&](long long s) { guard(fwd, s, 1.0); });
    WaveFunction at_T;
    fwd.store(at_T);

    Propagator bwd(disorder, params, scheme, -dt);
    bwd.load(at_T);
    bwd.run(n_steps, guards, [&](long long s) { guard(bwd, s, -1.0); });

    TimeReversalResult res;
    bwd.store(res.reversed);
    res.delta_tr = 0.0;
    for (int i = 0; i < psi0.size(); ++i)
        res.delta_tr += std::abs(psi0.amp[static_cast<std::size_t>(i)] -
                                 res.reversed.amp[static_cast<std::size_t>(i)]);
    return res;
}

}  // namespace dnls
