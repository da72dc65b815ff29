#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace adseq {

struct BirkhoffStats {
    std::vector<double> partial_sums; // S_1 ... S_n
    double max_abs = 0.0;
};

// Centered partial sums S_k = sum_{i<=k} (values[i] - center) and the
// running maximum of |S_k|.
BirkhoffStats birkhoff_stats(std::span<const double> values, double center);

// Piecewise-linear interpolation of normalized partial sums:
// W(t) = S_[nt]/sqrt(n) + (nt - [nt]) X_{[nt]+1}/sqrt(n), with S_0 = 0.
double donsker_path(std::span<const double> partial_sums, std::span<const double> increments,
                    double t);

struct HolderNorm {
    double seminorm = 0.0;  // sup |f(t)-f(s)| / |t-s|^beta
    double norm = 0.0;      // |f(t_0)| + seminorm
    bool approximate = false; // dyadic-gap pairs only (large inputs)
};

// Holder seminorm of a piecewise-linear path through the given
// breakpoints. For piecewise-linear paths the supremum over all pairs is
// attained at breakpoint pairs, so the computation is exact up to 4096
// breakpoints; larger inputs are restricted to index gaps that are powers
// of two (plus the end-to-end pair) and flagged approximate.
HolderNorm holder_norm(std::span<const double> ts, std::span<const double> fs, double beta);

struct Sigma2Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint32_t bandwidth = 0;
};

// Long-run variance by the Bartlett-tapered truncated covariance sum,
// with a batch-means standard error. bandwidth 0 selects floor(n^(1/3)).
Sigma2Estimate sigma2_estimate(std::span<const double> series, std::uint32_t bandwidth = 0);

struct ScalingFit {
    double exponent = 0.0;
    double std_error = 0.0;
    std::optional<double> log_coefficient; // set when fitted with a log-log-n regressor
};

struct ScalingPoint {
    double n = 0.0;
    double estimate = 0.0;
    double std_error = 0.0; // 0 allowed: switches to unweighted fit
};

// Weighted least squares of log(estimate) on log(n) (and log log n when
// with_log). Needs >= 3 points spanning at least two octaves.
ScalingFit scaling_fit(std::span<const ScalingPoint> points, bool with_log);

// Kolmogorov-Smirnov distance between the sample and N(0, sigma^2).
double ks_normal(std::span<const double> samples, double sigma);

// Mean and its jackknife standard error.
struct MeanWithError {
    double mean = 0.0;
    double std_error = 0.0;
};
MeanWithError jackknife_mean(std::span<const double> values);

// Nearest-rank percentile of a copy of the data (q in [0,1]).
double percentile(std::vector<double> values, double q);

} // namespace adseq
