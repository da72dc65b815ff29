#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/dynamics.hpp"
#include "core/observables.hpp"

namespace adseq {

/// Where replicas come from: an interval-map orbit pushed through an
/// observable, or a synthetic m-dependent moving average (optionally
/// sign-mapped to a Rademacher sequence) used as an exactly solvable
/// oracle.
struct SourceSpec {
    enum class Kind { Map, MDep };
    Kind kind = Kind::Map;
    MapSpec map;
    Observable observable;
    std::vector<double> weights = {1.0};
    bool sign_map = false;

    void validate() const;
    std::string label() const;
};

struct SimConfig {
    SourceSpec source;
    std::vector<std::uint64_t> n_grid = {1024};
    std::uint32_t replicas = 200;
    std::uint64_t seed = 1;
    std::uint64_t burn_in = 10000;
    std::vector<double> p_list = {2.0};
    std::vector<double> x_grid;
    double holder_beta = 0.2;
    std::uint64_t center_budget = 10000000;
    std::uint64_t sigma_orbit_length = 1000000;
    std::uint32_t sigma_bandwidth = 0; // 0: floor(len^(1/3))
    std::uint32_t threads = 0;         // 0: env ADSEQ_THREADS, then hardware

    void validate() const;
};

struct EmpiricalRow {
    std::uint64_t n = 0;
    std::string statistic;  // moment | tail | ks_normal | sigma2 | holder_q95 | holder_mean
    double param = 0.0;     // p, x, or beta (bandwidth for sigma2)
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint32_t replicas = 0;
    std::uint64_t seed = 0;
    std::string flags;      // semicolon-joined: low-power, approx, ...
};

struct EmpiricalResult {
    std::map<std::string, std::string> meta; // gamma, b, observable, config_hash, ...
    std::vector<EmpiricalRow> rows;

    std::string to_csv() const;  // schema: n,statistic,p_or_x_or_beta,estimate,stderr,replicas,seed,flags
    std::string to_json() const;
};

enum StatRequest : unsigned {
    kMoments = 1u << 0,
    kTails = 1u << 1,
    kClt = 1u << 2,
    kHip = 1u << 3,
};

// Runs the replica grid and reduces the requested statistics. Replicas
// use counter-based substreams and a fixed-order reduction, so the
// result is bit-identical for any thread count.
EmpiricalResult run_experiment(const SimConfig& cfg, unsigned stats);

// Deterministic shortest round-trip formatting used in CSV/JSON output.
std::string format_double(double v);

} // namespace adseq
