#include "dnls/ensemble.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "dnls/errors.hpp"
#include "dnls/propagator.hpp"
#include "dnls/rng.hpp"
#include "dnls/version.hpp"

namespace dnls {

namespace {

enum class Status : std::uint8_t { Pending = 0, Done = 1, Failed = 2 };

struct Progress {
    std::string config_json;
    std::vector<double> sample_times;
    std::vector<Status> status;
    std::vector<std::vector<double>> m2;  // per realization, filled when Done
    std::vector<FailureRecord> failures;  // for Failed entries
};

constexpr char kMagic[8] = {'D', 'N', 'L', 'S', 'E', 'N', 'S', '1'};
constexpr std::uint32_t kCkptVersion = 1;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

template <typename T>
void put(std::string& out, const T& v) {
    const char* p = reinterpret_cast<const char*>(&v);
    out.append(p, sizeof(T));
}

template <typename T>
T take(const std::string& in, std::size_t& pos) {
    if (pos + sizeof(T) > in.size()) throw CheckpointError("checkpoint truncated");
    T v;
    std::memcpy(&v, in.data() + pos, sizeof(T));
    pos += sizeof(T);
    return v;
}

void checkpoint_save(const Progress& prog, const std::string& path) {
    std::string blob;
    blob.append(kMagic, sizeof(kMagic));
    put(blob, kCkptVersion);
    put(blob, fnv1a(prog.config_json));
    put(blob, static_cast<std::uint32_t>(prog.config_json.size()));
    blob += prog.config_json;
    put(blob, static_cast<std::uint32_t>(prog.sample_times.size()));
    for (double t : prog.sample_times) put(blob, t);
    put(blob, static_cast<std::uint32_t>(prog.status.size()));
    for (std::size_t r = 0; r < prog.status.size(); ++r) {
        put(blob, static_cast<std::uint8_t>(prog.status[r]));
        if (prog.status[r] == Status::Done) {
            for (double v : prog.m2[r]) put(blob, v);
        } else if (prog.status[r] == Status::Failed) {
            const FailureRecord* rec = nullptr;
            for (const auto& f : prog.failures)
                if (f.realization == static_cast<int>(r)) rec = &f;
            if (!rec) throw CheckpointError("failure record missing");
            put(blob, rec->time);
            put(blob, static_cast<std::uint32_t>(rec->message.size()));
            blob += rec->message;
        }
    }

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write checkpoint " + tmp);
        out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
        if (!out) throw IoError("short write on checkpoint " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

Progress checkpoint_load(const std::string& path, const std::string& expected_config,
                         const std::vector<double>& expected_times,
                         const EnsembleConfig& cfg) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckpointError("cannot open checkpoint " + path);
    std::string blob((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    std::size_t pos = 0;
    if (blob.size() < sizeof(kMagic) || std::memcmp(blob.data(), kMagic, sizeof(kMagic)) != 0)
        throw CheckpointError("not an ensemble checkpoint: " + path);
    pos += sizeof(kMagic);
    if (take<std::uint32_t>(blob, pos) != kCkptVersion)
        throw CheckpointError("unsupported checkpoint version in " + path);
    const auto stored_hash = take<std::uint64_t>(blob, pos);
    const auto cfg_len = take<std::uint32_t>(blob, pos);
    if (pos + cfg_len > blob.size()) throw CheckpointError("checkpoint truncated");
    const std::string stored_config = blob.substr(pos, cfg_len);
    pos += cfg_len;
    if (stored_hash != fnv1a(stored_config))
        throw CheckpointError("checkpoint config hash mismatch (corrupt file?)");
    if (stored_config != expected_config)
        throw CheckpointError("checkpoint was produced by a different config:\n" +
                              config_diff(stored_config, expected_config));

    Progress prog;
    prog.config_json = stored_config;
    const auto n_times = take<std::uint32_t>(blob, pos);
    prog.sample_times.resize(n_times);
    for (auto& t : prog.sample_times) t = take<double>(blob, pos);
    if (prog.sample_times != expected_times)
        throw CheckpointError("checkpoint sample grid differs from config grid");

    const auto n_runs = take<std::uint32_t>(blob, pos);
    if (static_cast<int>(n_runs) != cfg.realizations)
        throw CheckpointError("checkpoint realization count differs");
    prog.status.resize(n_runs, Status::Pending);
    prog.m2.resize(n_runs);
    for (std::uint32_t r = 0; r < n_runs; ++r) {
        const auto st = static_cast<Status>(take<std::uint8_t>(blob, pos));
        prog.status[r] = st;
        if (st == Status::Done) {
            prog.m2[r].resize(n_times);
            for (auto& v : prog.m2[r]) v = take<double>(blob, pos);
        } else if (st == Status::Failed) {
            FailureRecord f;
            f.realization = static_cast<int>(r);
            f.seed = cfg.base_seed + r;
            f.time = take<double>(blob, pos);
            const auto len = take<std::uint32_t>(blob, pos);
            if (pos + len > blob.size()) throw CheckpointError("checkpoint truncated");
            f.message = blob.substr(pos, len);
            pos += len;
            prog.failures.push_back(std::move(f));
        }
    }
    return prog;
}

}  // namespace

std::string EnsembleConfig::to_json() const {
    nlohmann::json j = nlohmann::json::parse(base.to_json());
    j["realizations"] = realizations;
    j["base_seed"] = base_seed;
    return j.dump();
}

EnsembleConfig EnsembleConfig::from_json(const std::string& text) {
    EnsembleConfig cfg;
    cfg.base = SimulationConfig::from_json(text);
    const auto j = nlohmann::json::parse(text);
    if (j.contains("realizations")) cfg.realizations = j["realizations"].get<int>();
    if (j.contains("base_seed")) cfg.base_seed = j["base_seed"].get<std::uint64_t>();
    return cfg;
}

std::string EnsembleResult::to_csv() const {
    std::string out = "t,mean_m2,stderr_m2,mean_log_m2\n";
    char line[160];
    for (std::size_t i = 0; i < times.size(); ++i) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g\n", times[i], mean_m2[i],
                      stderr_m2[i], mean_log_m2[i]);
        out += line;
    }
    return out;
}

EnsembleResult run_ensemble(const EnsembleConfig& cfg, const EnsembleOptions& opts) {
    EnsembleConfig resolved = cfg;
    resolved.base.resolve();
    if (resolved.realizations < 1) throw ConfigError("realizations must be >= 1");
    const std::string config_json = resolved.to_json();
    const auto sample_times = resolved.base.make_sample_times();
    const int R = resolved.realizations;

    Progress prog;
    if (!opts.resume_from.empty()) {
        prog = checkpoint_load(opts.resume_from, config_json, sample_times, resolved);
    } else {
        prog.config_json = config_json;
        prog.sample_times = sample_times;
        prog.status.assign(static_cast<std::size_t>(R), Status::Pending);
        prog.m2.resize(static_cast<std::size_t>(R));
    }

    std::vector<int> pending;
    for (int r = 0; r < R; ++r)
        if (prog.status[static_cast<std::size_t>(r)] == Status::Pending) pending.push_back(r);
    if (opts.stop_after >= 0 && static_cast<int>(pending.size()) > opts.stop_after)
        pending.resize(static_cast<std::size_t>(opts.stop_after));

    const auto t_start = std::chrono::steady_clock::now();
    const auto scheme = resolved.base.split_scheme();
    const auto params = resolved.base.params();
    const int size = resolved.base.size();

    std::atomic<std::size_t> cursor{0};
    std::atomic<int> done_counter{0};
    std::mutex mtx;  // guards status/failures and checkpoint writes
    std::exception_ptr first_error;

    auto worker = [&]() {
        const auto psi0 = initial_wavepacket(size);
        while (true) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= pending.size()) return;
            const int r = pending[i];
            const std::uint64_t seed = resolved.base_seed + static_cast<std::uint64_t>(r);
            try {
                const auto disorder = make_disorder(seed, size, resolved.base.W);
                auto res = evolve(psi0, disorder, params, scheme, resolved.base.dt,
                                  resolved.base.t_max, sample_times);
                auto m2 = res.series.m2();
                std::lock_guard<std::mutex> lock(mtx);
                prog.m2[static_cast<std::size_t>(r)] = std::move(m2);
                prog.status[static_cast<std::size_t>(r)] = Status::Done;
            } catch (const BoundaryContaminationError& e) {
                std::lock_guard<std::mutex> lock(mtx);
                prog.status[static_cast<std::size_t>(r)] = Status::Failed;
                prog.failures.push_back(FailureRecord{r, seed, e.time, e.what()});
            } catch (...) {
                std::lock_guard<std::mutex> lock(mtx);
                if (!first_error) first_error = std::current_exception();
                return;
            }
            const int done = ++done_counter;
            if (opts.progress) opts.progress(done, static_cast<int>(pending.size()));
            if (!opts.checkpoint_path.empty() && opts.checkpoint_every > 0 &&
                done % opts.checkpoint_every == 0) {
                std::lock_guard<std::mutex> lock(mtx);
                checkpoint_save(prog, opts.checkpoint_path);
            }
        }
    };

    int jobs = resolved.jobs > 0 ? resolved.jobs
                                 : static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    jobs = std::min(jobs, std::max(1, static_cast<int>(pending.size())));
    {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    if (!opts.checkpoint_path.empty()) checkpoint_save(prog, opts.checkpoint_path);

    // Deterministic reduction in realization-index order (Welford).
    const std::size_t K = sample_times.size();
    EnsembleResult out;
    out.times = sample_times;
    out.mean_m2.assign(K, 0.0);
    out.stderr_m2.assign(K, 0.0);
    out.mean_log_m2.assign(K, 0.0);
    out.requested = R;
    out.failures = prog.failures;

    std::vector<double> m2_mean(K, 0.0), m2_msq(K, 0.0), log_mean(K, 0.0);
    std::vector<bool> log_valid(K, true);
    int n = 0;
    for (int r = 0; r < R; ++r) {
        if (prog.status[static_cast<std::size_t>(r)] != Status::Done) continue;
        ++n;
        const auto& series = prog.m2[static_cast<std::size_t>(r)];
        for (std::size_t k = 0; k < K; ++k) {
            const double x = series[k];
            const double delta = x - m2_mean[k];
            m2_mean[k] += delta / n;
            m2_msq[k] += delta * (x - m2_mean[k]);
            if (x > 0.0 && log_valid[k]) {
                log_mean[k] += (std::log(x) - log_mean[k]) / n;
            } else {
                log_valid[k] = false;
            }
        }
    }
    out.completed = n;
    if (n == 0) throw EnsembleError("no realization completed");
    for (std::size_t k = 0; k < K; ++k) {
        out.mean_m2[k] = m2_mean[k];
        out.stderr_m2[k] = n > 1 ? std::sqrt(m2_msq[k] / (n - 1) / n) : 0.0;
        out.mean_log_m2[k] =
            log_valid[k] ? log_mean[k] : std::numeric_limits<double>::quiet_NaN();
    }

    const int failed = static_cast<int>(prog.failures.size());
    if (failed > 0 && failed * 100 > R)
        throw EnsembleError("ensemble invalid: " + std::to_string(failed) + " of " +
                            std::to_string(R) +
                            " realizations hit the boundary guard (lattice too small)");

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    nlohmann::json meta = nlohmann::json::parse(config_json);
    meta["generator"] = std::string("dnlslab ") + kVersion;
    meta["completed"] = out.completed;
    meta["wall_time_s"] = wall;
    auto fails = nlohmann::json::array();
    for (const auto& f : prog.failures)
        fails.push_back({{"realization", f.realization},
                         {"seed", f.seed},
                         {"time", f.time},
                         {"message", f.message}});
    meta["failures"] = fails;
    out.meta_json = meta.dump();
    return out;
}

SweepResult sweep(const std::vector<double>& p_values, const std::vector<double>& beta_values,
                  const EnsembleConfig& tmpl, bool dt_from_table,
                  const EnsembleOptions& opts) {
    if (p_values.empty() || beta_values.empty())
        throw ConfigError("sweep: grid must be nonempty");
    SweepResult result;
    for (std::size_t bi = 0; bi < beta_values.size(); ++bi) {
        for (std::size_t pi = 0; pi < p_values.size(); ++pi) {
            SweepPoint point;
            point.p_index = static_cast<int>(pi);
            point.beta_index = static_cast<int>(bi);
            point.p = p_values[pi];
            point.beta = beta_values[bi];
            point.seed = mix_seed(tmpl.base_seed, static_cast<std::uint64_t>(pi),
                                  static_cast<std::uint64_t>(bi));

            EnsembleConfig cfg = tmpl;
            cfg.base.p = point.p;
            cfg.base.beta = point.beta;
            cfg.base_seed = point.seed;
            if (dt_from_table) cfg.base.dt = 0.0;
            try {
                cfg.base.resolve();
                EnsembleOptions point_opts = opts;
                point_opts.checkpoint_path.clear();  // per-point checkpoints not kept
                point_opts.resume_from.clear();
                point.result = run_ensemble(cfg, point_opts);
            } catch (const std::exception& e) {
                point.error = e.what();
            }
            result.points.push_back(std::move(point));
        }
    }
    return result;
}

}  // namespace dnls
