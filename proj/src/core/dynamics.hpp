#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace adseq {

enum class MapKind { LSV, PiecewiseGPM };

/// Interval map with a neutral fixed point at 0.
///
/// LSV is the two-branch map  x(1 + 2^g x^g) on [0,1/2),  2x-1 on [1/2,1].
/// PiecewiseGPM generalizes it to breakpoints 0 = y_0 < ... < y_d = 1 with
/// one neutral branch x + a x^(1+g) on [0,y_1) (a chosen so the branch is
/// onto [0,1)) followed by full affine expanding branches.
struct MapSpec {
    MapKind kind = MapKind::LSV;
    double gamma = 0.5;
    std::vector<double> breakpoints; // PiecewiseGPM only; includes 0 and 1

    static MapSpec lsv(double gamma);
    static MapSpec piecewise_gpm(double gamma, std::vector<double> breakpoints);

    void validate() const; // throws ConfigError
};

// One application of the map. x may stray outside [0,1] by at most one
// rounding unit; anything worse is a domain error. The result is clamped
// to [0,1], and exact hits of the endpoints (rounding artifacts of the
// dynamics, which never reaches them from the interior) are reinjected
// just inside the interval.
double map_step(double x, const MapSpec& spec);

struct OrbitConfig {
    std::optional<double> initial_point; // nullopt: uniform on (0,1)
    std::uint64_t burn_in = 10000;
    std::uint64_t length = 0;
    std::uint64_t seed = 0;
    std::uint32_t replica_index = 0;
    std::uint32_t stream_purpose_sub = 0; // extra substream discriminator

    void validate() const;
};

// Emits x_{burn_in+1}, ..., x_{burn_in+length}. Bit-for-bit determined by
// (seed, replica_index, cfg, spec).
std::vector<double> generate_orbit(const OrbitConfig& cfg, const MapSpec& spec);
void generate_orbit_into(const OrbitConfig& cfg, const MapSpec& spec, double* out);

// Stationary moving average X_i = sum_j weights[j] eps_{i-j} of i.i.d.
// standard normals; exactly m-dependent with m = weights.size()-1.
std::vector<double> mdep_sequence(const OrbitConfig& cfg, const std::vector<double>& weights);
void mdep_sequence_into(const OrbitConfig& cfg, const std::vector<double>& weights, double* out);

} // namespace adseq
