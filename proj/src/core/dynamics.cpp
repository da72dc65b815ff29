#include "core/dynamics.hpp"

#include <cmath>
#include <limits>

#include "core/errors.hpp"
#include "core/rng.hpp"

namespace adseq {

MapSpec MapSpec::lsv(double gamma) {
    MapSpec s;
    s.kind = MapKind::LSV;
    s.gamma = gamma;
    s.validate();
    return s;
}

MapSpec MapSpec::piecewise_gpm(double gamma, std::vector<double> breakpoints) {
    MapSpec s;
    s.kind = MapKind::PiecewiseGPM;
    s.gamma = gamma;
    s.breakpoints = std::move(breakpoints);
    s.validate();
    return s;
}

void MapSpec::validate() const {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw ConfigError("map: gamma must lie strictly inside (0,1)");
    if (kind == MapKind::LSV) {
        if (!breakpoints.empty() &&
            !(breakpoints.size() == 3 && breakpoints[0] == 0.0 &&
              breakpoints[1] == 0.5 && breakpoints[2] == 1.0))
            throw ConfigError("map: LSV has implicit breakpoints {0, 1/2, 1}");
        return;
    }
    if (breakpoints.size() < 3)
        throw ConfigError("map: piecewise GPM needs at least two branches");
    if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0)
        throw ConfigError("map: breakpoints must start at 0 and end at 1");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i] > breakpoints[i - 1]))
            throw ConfigError("map: breakpoints must be strictly increasing");
}

namespace {

// Iteration state with the per-spec constants precomputed. gamma = 1/4
// and 1/2 get sqrt-based powers; they dominate the workloads here.
struct MapIter {
    double gamma;
    double neutral_coef;   // a in x + a x^(1+gamma)
    double neutral_end;    // right end of the neutral branch
    const std::vector<double>* bp; // nullptr for LSV
    int pow_case;          // 0 generic, 1 gamma=1/2, 2 gamma=1/4

    explicit MapIter(const MapSpec& spec) : gamma(spec.gamma) {
        if (spec.kind == MapKind::LSV) {
            neutral_end = 0.5;
            bp = nullptr;
        } else {
            neutral_end = spec.breakpoints[1];
            bp = &spec.breakpoints;
        }
        neutral_coef = (1.0 - neutral_end) / std::pow(neutral_end, 1.0 + gamma);
        pow_case = (gamma == 0.5) ? 1 : (gamma == 0.25) ? 2 : 0;
    }

    double pow_gamma(double x) const {
        switch (pow_case) {
            case 1: return std::sqrt(x);
            case 2: return std::sqrt(std::sqrt(x));
            default: return std::pow(x, gamma);
        }
    }

    // One application, clamped to [0,1]. No endpoint reinjection here.
    double step(double x) const {
        double y;
        if (x < neutral_end) {
            y = x + neutral_coef * x * pow_gamma(x);
        } else if (bp == nullptr) {
            y = 2.0 * x - 1.0;
        } else {
            std::size_t lo = 1, hi = bp->size() - 1;
            while (hi - lo > 1) {
                const std::size_t mid = (lo + hi) / 2;
                if (x < (*bp)[mid]) hi = mid; else lo = mid;
            }
            y = (x - (*bp)[lo]) / ((*bp)[lo + 1] - (*bp)[lo]);
        }
        if (y < 0.0) y = 0.0;
        if (y > 1.0) y = 1.0;
        return y;
    }

    // Iteration rule for orbit sampling. Exact endpoint hits are rounding
    // artifacts (the dynamics never reaches 0 or 1 from the interior) and
    // would absorb the orbit; reinject just inside the interval.
    double advance(double x) const {
        double y = step(x);
        if (y == 0.0) y = std::numeric_limits<double>::min();
        else if (y == 1.0) y = 1.0 - std::numeric_limits<double>::epsilon() / 2;
        return y;
    }
};

} // namespace

double map_step(double x, const MapSpec& spec) {
    spec.validate();
    const double tol = 4.0 * std::numeric_limits<double>::epsilon();
    if (x < -tol || x > 1.0 + tol)
        throw DomainError("map_step: x outside [0,1]");
    if (x < 0.0) x = 0.0;
    if (x > 1.0) x = 1.0;
    if (x == 0.0) return 0.0; // neutral fixed point
    if (x == 1.0) return 1.0;
    return MapIter(spec).step(x);
}

void OrbitConfig::validate() const {
    if (length == 0) throw ConfigError("orbit: length must be positive");
    if (burn_in > std::numeric_limits<std::uint64_t>::max() - length)
        throw ConfigError("orbit: burn_in + length overflows");
    if (initial_point && !(*initial_point >= 0.0 && *initial_point <= 1.0))
        throw ConfigError("orbit: initial point outside [0,1]");
}

void generate_orbit_into(const OrbitConfig& cfg, const MapSpec& spec, double* out) {
    cfg.validate();
    spec.validate();
    const MapIter it(spec);
    CounterRng rng(cfg.seed, cfg.replica_index, purpose::orbit(cfg.stream_purpose_sub));
    double x = cfg.initial_point ? *cfg.initial_point : rng.uniform01();
    for (std::uint64_t i = 0; i < cfg.burn_in; ++i) x = it.advance(x);
    for (std::uint64_t i = 0; i < cfg.length; ++i) {
        x = it.advance(x);
        out[i] = x;
    }
}

std::vector<double> generate_orbit(const OrbitConfig& cfg, const MapSpec& spec) {
    std::vector<double> out(cfg.length);
    generate_orbit_into(cfg, spec, out.data());
    return out;
}

void mdep_sequence_into(const OrbitConfig& cfg, const std::vector<double>& weights, double* out) {
    if (weights.empty()) throw ConfigError("mdep: weights must be non-empty");
    cfg.validate();
    const std::size_t m = weights.size() - 1;
    CounterRng rng(cfg.seed, cfg.replica_index, purpose::mdep(cfg.stream_purpose_sub));
    // ring buffer of the last m+1 innovations, eps[head] most recent
    std::vector<double> eps(m + 1, 0.0);
    std::size_t head = 0;
    for (std::size_t j = 0; j < m; ++j) {
        head = (head + 1) % (m + 1);
        eps[head] = rng.normal();
    }
    for (std::uint64_t i = 0; i < cfg.length; ++i) {
        head = (head + 1) % (m + 1);
        eps[head] = rng.normal();
        double x = 0.0;
        for (std::size_t j = 0; j <= m; ++j)
            x += weights[j] * eps[(head + (m + 1) - j) % (m + 1)];
        out[i] = x;
    }
}

std::vector<double> mdep_sequence(const OrbitConfig& cfg, const std::vector<double>& weights) {
    std::vector<double> out(cfg.length);
    mdep_sequence_into(cfg, weights, out.data());
    return out;
}

} // namespace adseq
