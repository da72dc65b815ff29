#include "core/montecarlo.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <thread>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/stats.hpp"
#include "core/threads.hpp"

namespace adseq {

void SourceSpec::validate() const {
    if (kind == Kind::Map) {
        map.validate();
        observable.validate();
    } else if (weights.empty()) {
        throw ConfigError("source: mdep weights must be non-empty");
    }
}

std::string SourceSpec::label() const {
    if (kind == Kind::Map) return observable.label();
    return sign_map ? "rademacher" : "mdep";
}

void SimConfig::validate() const {
    source.validate();
    if (n_grid.empty()) throw ConfigError("sim: n_grid must be non-empty");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (n_grid[i] == 0) throw ConfigError("sim: n values must be positive");
        if (i > 0 && n_grid[i] <= n_grid[i - 1])
            throw ConfigError("sim: n_grid must be strictly increasing");
    }
    if (replicas < 100) throw ConfigError("sim: statistical output needs replicas >= 100");
    if (!(holder_beta > 0.0 && holder_beta < 0.5))
        throw ConfigError("sim: holder_beta must lie in (0, 1/2); no tightness beyond");
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

struct ReplicaStats {
    double max_abs = 0.0;
    double final_sum = 0.0;
    double holder = 0.0;
};

// One replica serves every grid size: a single stationary orbit of
// length max(n_grid) is snapshotted at each n. Cells at different n
// then share their rare excursions, which keeps ratio and slope
// statistics stable, and one burn-in pays for the whole grid.
class TaskRunner {
public:
    TaskRunner(const SimConfig& cfg, double center, bool want_holder)
        : cfg_(cfg), center_(center), want_holder_(want_holder) {}

    // out must hold cfg.n_grid.size() records
    void run(std::uint32_t replica, std::vector<double>& buf, std::vector<double>& sums,
             std::vector<double>& ts, std::vector<double>& path, ReplicaStats* out) const {
        const std::uint64_t n_max = cfg_.n_grid.back();
        buf.resize(n_max);
        OrbitConfig oc;
        oc.seed = cfg_.seed;
        oc.replica_index = replica;
        oc.stream_purpose_sub = 0;
        oc.burn_in = cfg_.burn_in;
        oc.length = n_max;
        if (cfg_.source.kind == SourceSpec::Kind::Map) {
            generate_orbit_into(oc, cfg_.source.map, buf.data());
            const Observable& f = cfg_.source.observable;
            for (std::uint64_t i = 0; i < n_max; ++i) buf[i] = f.eval(buf[i]);
        } else {
            oc.burn_in = 0;
            mdep_sequence_into(oc, cfg_.source.weights, buf.data());
            if (cfg_.source.sign_map)
                for (std::uint64_t i = 0; i < n_max; ++i) buf[i] = buf[i] < 0.0 ? -1.0 : 1.0;
        }

        if (want_holder_) sums.resize(n_max);
        double s = 0.0, max_abs = 0.0;
        std::size_t cell = 0;
        for (std::uint64_t i = 0; i < n_max; ++i) {
            s += buf[i] - center_;
            const double a = std::abs(s);
            if (a > max_abs) max_abs = a;
            if (want_holder_) sums[i] = s;
            if (i + 1 == cfg_.n_grid[cell]) {
                out[cell].max_abs = max_abs;
                out[cell].final_sum = s;
                if (want_holder_) out[cell].holder = prefix_holder(cfg_.n_grid[cell], sums, ts, path);
                ++cell;
            }
        }
    }

private:
    // Holder norm of the normalized partial-sum line over the first n steps.
    double prefix_holder(std::uint64_t n, const std::vector<double>& sums,
                         std::vector<double>& ts, std::vector<double>& path) const {
        ts.resize(n + 1);
        path.resize(n + 1);
        ts[0] = 0.0;
        path[0] = 0.0;
        const double sqrt_n = std::sqrt(static_cast<double>(n));
        for (std::uint64_t i = 1; i <= n; ++i) {
            ts[i] = static_cast<double>(i) / static_cast<double>(n);
            path[i] = sums[i - 1] / sqrt_n;
        }
        return holder_norm(ts, path, cfg_.holder_beta).norm;
    }

    const SimConfig& cfg_;
    double center_;
    bool want_holder_;
};

void append_flag(std::string& flags, const std::string& f) {
    if (!flags.empty()) flags += ";";
    flags += f;
}

} // namespace

EmpiricalResult run_experiment(const SimConfig& cfg, unsigned stats) {
    cfg.validate();
    EmpiricalResult result;

    // centering constant and its uncertainty
    double center = 0.0, center_se = 0.0;
    if (cfg.source.kind == SourceSpec::Kind::Map) {
        if (cfg.source.observable.center) {
            center = cfg.source.observable.center->first;
            center_se = cfg.source.observable.center->second;
        } else {
            const CenterEstimate ce =
                estimate_center(cfg.source.observable, cfg.source.map, cfg.center_budget, cfg.seed);
            center = ce.mean;
            center_se = ce.std_error;
        }
    }
    result.meta["source"] = cfg.source.label();
    result.meta["center"] = format_double(center);
    result.meta["center_stderr"] = format_double(center_se);
    if (cfg.source.kind == SourceSpec::Kind::Map) {
        result.meta["gamma"] = format_double(cfg.source.map.gamma);
        try {
            result.meta["b"] =
                format_double(quantile_params(cfg.source.observable, cfg.source.map.gamma).b);
        } catch (const std::exception&) {
            // tabulated quantile tag: no scalar b
        }
    }

    const bool want_holder = (stats & kHip) != 0;
    const TaskRunner runner(cfg, center, want_holder);
    const std::size_t n_count = cfg.n_grid.size();
    std::vector<ReplicaStats> records(n_count * cfg.replicas);

    const std::uint32_t threads = resolve_threads(cfg.threads);
    const auto worker = [&](std::uint32_t lo, std::uint32_t hi) {
        std::vector<double> buf, sums, ts, path;
        for (std::uint32_t r = lo; r < hi; ++r)
            runner.run(r, buf, sums, ts, path, &records[static_cast<std::size_t>(r) * n_count]);
    };
    if (threads <= 1) {
        worker(0, cfg.replicas);
    } else {
        std::vector<std::thread> pool;
        const std::uint32_t chunk = (cfg.replicas + threads - 1) / threads;
        for (std::uint32_t w = 0; w < threads; ++w) {
            const std::uint32_t lo = std::min(w * chunk, cfg.replicas);
            const std::uint32_t hi = std::min(lo + chunk, cfg.replicas);
            if (lo < hi) pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    const auto record = [&](std::size_t n_idx, std::uint32_t r) -> const ReplicaStats& {
        return records[static_cast<std::size_t>(r) * n_count + n_idx];
    };

    if (stats & kMoments) {
        for (std::size_t ni = 0; ni < n_count; ++ni) {
            for (double p : cfg.p_list) {
                std::vector<double> vals(cfg.replicas);
                for (std::uint32_t r = 0; r < cfg.replicas; ++r)
                    vals[r] = std::pow(record(ni, r).max_abs, p);
                const MeanWithError m = jackknife_mean(vals);
                EmpiricalRow row;
                row.n = cfg.n_grid[ni];
                row.statistic = "moment";
                row.param = p;
                row.estimate = m.mean;
                // first-order sensitivity to the estimated center enters
                // the reported error as a bias bound
                const double bias = p * static_cast<double>(row.n) * center_se *
                                    std::pow(std::max(m.mean, 0.0), (p - 1.0) / p);
                row.std_error = m.std_error + bias;
                row.replicas = cfg.replicas;
                row.seed = cfg.seed;
                result.rows.push_back(std::move(row));
            }
        }
    }

    if (stats & kTails) {
        for (std::size_t ni = 0; ni < n_count; ++ni) {
            for (double x : cfg.x_grid) {
                const double level = static_cast<double>(cfg.n_grid[ni]) * x;
                std::uint32_t hits = 0;
                for (std::uint32_t r = 0; r < cfg.replicas; ++r)
                    if (record(ni, r).max_abs >= level) ++hits;
                const double phat = static_cast<double>(hits) / cfg.replicas;
                EmpiricalRow row;
                row.n = cfg.n_grid[ni];
                row.statistic = "tail";
                row.param = x;
                row.estimate = phat;
                row.std_error = std::sqrt(phat * (1.0 - phat) / cfg.replicas);
                row.replicas = cfg.replicas;
                row.seed = cfg.seed;
                if (static_cast<double>(hits) < 5.0) append_flag(row.flags, "low-power");
                result.rows.push_back(std::move(row));
            }
        }
    }

    if (stats & kClt) {
        // long-run variance from a single long run, then the KS distance
        // of the normalized endpoint sums
        std::vector<double> series(cfg.sigma_orbit_length);
        OrbitConfig oc;
        oc.seed = cfg.seed;
        oc.replica_index = 0;
        oc.stream_purpose_sub = 0xFFFF; // keep clear of the replica substreams
        oc.burn_in = cfg.burn_in;
        oc.length = cfg.sigma_orbit_length;
        if (cfg.source.kind == SourceSpec::Kind::Map) {
            generate_orbit_into(oc, cfg.source.map, series.data());
            for (auto& v : series) v = cfg.source.observable.eval(v) - center;
        } else {
            oc.burn_in = 0;
            mdep_sequence_into(oc, cfg.source.weights, series.data());
            if (cfg.source.sign_map)
                for (auto& v : series) v = v < 0.0 ? -1.0 : 1.0;
        }
        const Sigma2Estimate s2 = sigma2_estimate(series, cfg.sigma_bandwidth);
        EmpiricalRow srow;
        srow.n = cfg.sigma_orbit_length;
        srow.statistic = "sigma2";
        srow.param = static_cast<double>(s2.bandwidth);
        srow.estimate = s2.value;
        srow.std_error = s2.std_error;
        srow.replicas = cfg.replicas;
        srow.seed = cfg.seed;
        result.rows.push_back(srow);

        for (std::size_t ni = 0; ni < n_count; ++ni) {
            EmpiricalRow row;
            row.n = cfg.n_grid[ni];
            row.statistic = "ks_normal";
            row.param = s2.value > 0.0 ? std::sqrt(s2.value) : 0.0;
            row.replicas = cfg.replicas;
            row.seed = cfg.seed;
            if (s2.value > 0.0) {
                const double sd = std::sqrt(s2.value * static_cast<double>(cfg.n_grid[ni]));
                std::vector<double> samples(cfg.replicas);
                for (std::uint32_t r = 0; r < cfg.replicas; ++r)
                    samples[r] = record(ni, r).final_sum / sd;
                row.estimate = ks_normal(samples, 1.0);
                row.std_error = 0.26 / std::sqrt(static_cast<double>(cfg.replicas));
            } else {
                append_flag(row.flags, "degenerate-sigma");
                row.std_error = 1.0;
            }
            result.rows.push_back(std::move(row));
        }
    }

    if (stats & kHip) {
        for (std::size_t ni = 0; ni < n_count; ++ni) {
            std::vector<double> hs(cfg.replicas);
            for (std::uint32_t r = 0; r < cfg.replicas; ++r) hs[r] = record(ni, r).holder;
            const MeanWithError m = jackknife_mean(hs);
            EmpiricalRow mean_row;
            mean_row.n = cfg.n_grid[ni];
            mean_row.statistic = "holder_mean";
            mean_row.param = cfg.holder_beta;
            mean_row.estimate = m.mean;
            mean_row.std_error = m.std_error;
            mean_row.replicas = cfg.replicas;
            mean_row.seed = cfg.seed;
            if (cfg.n_grid[ni] + 1 > 4096) append_flag(mean_row.flags, "approx");
            result.rows.push_back(mean_row);

            EmpiricalRow qrow = mean_row;
            qrow.statistic = "holder_q95";
            qrow.estimate = percentile(hs, 0.95);
            // order-statistic bracket around the 95th percentile
            std::vector<double> sorted(hs);
            std::sort(sorted.begin(), sorted.end());
            const double rf = 0.95 * cfg.replicas;
            const double half = 1.96 * std::sqrt(cfg.replicas * 0.95 * 0.05);
            const auto idx = [&](double v) {
                const long i = std::lround(v);
                return static_cast<std::size_t>(std::clamp<long>(i, 1, cfg.replicas) - 1);
            };
            qrow.std_error =
                std::max(1e-12, (sorted[idx(rf + half)] - sorted[idx(rf - half)]) / (2.0 * 1.96));
            result.rows.push_back(std::move(qrow));
        }
    }

    return result;
}

std::string EmpiricalResult::to_csv() const {
    std::string out = "n,statistic,p_or_x_or_beta,estimate,stderr,replicas,seed,flags\n";
    for (const auto& r : rows) {
        out += std::to_string(r.n);
        out += ',';
        out += r.statistic;
        out += ',';
        out += format_double(r.param);
        out += ',';
        out += format_double(r.estimate);
        out += ',';
        out += format_double(r.std_error);
        out += ',';
        out += std::to_string(r.replicas);
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        out += r.flags;
        out += '\n';
    }
    return out;
}

std::string EmpiricalResult::to_json() const {
    std::ostringstream os;
    os << "{\"meta\":{";
    bool first = true;
    for (const auto& [k, v] : meta) {
        if (!first) os << ',';
        first = false;
        os << '"' << k << "\":\"" << v << '"';
    }
    os << "},\"rows\":[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (i) os << ',';
        os << "{\"n\":" << r.n << ",\"statistic\":\"" << r.statistic
           << "\",\"param\":" << format_double(r.param)
           << ",\"estimate\":" << format_double(r.estimate)
           << ",\"stderr\":" << format_double(r.std_error) << ",\"replicas\":" << r.replicas
           << ",\"seed\":" << r.seed << ",\"flags\":\"" << r.flags << "\"}";
    }
    os << "]}";
    return os.str();
}

} // namespace adseq
