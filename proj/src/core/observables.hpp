#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/dynamics.hpp"

namespace adseq {

/// Tail function H: R+ -> [0,1], non-increasing, right-continuous, -> 0
/// at infinity. Three representations:
///   PowerLaw:  H(t) = min(1, scale * t^(-exponent)) for t >= threshold, 1 below
///   Bounded:   H(t) = 1 for t < M, 0 for t >= M
///   Tabulated: right-continuous step function through (t_i, H_i)
struct TailFunction {
    enum class Kind { PowerLaw, Bounded, Tabulated };
    Kind kind = Kind::Bounded;
    double exponent = 1.0;
    double scale = 1.0;
    double threshold = 0.0;
    double bound = 1.0;
    std::vector<std::pair<double, double>> table; // sorted by t

    static TailFunction power_law(double exponent, double scale = 1.0, double threshold = 0.0);
    static TailFunction bounded(double m);
    static TailFunction tabulated(std::vector<std::pair<double, double>> table);

    void validate() const;
    double eval(double t) const;
};

// Generalized inverse Q(u) = inf{t >= 0 : H(t) <= u}; +infinity when the
// set is empty. Domain error outside [0,1].
double quantile_from_tail(const TailFunction& h, double u);

/// Quantile model Q(u) = K u^(-b) eps(u) with optional vanishing factor
/// eps(u) = min(1, log(e/u)^(-q)), or a tabulated non-increasing table.
struct QuantileModel {
    enum class Kind { PowerLaw, Tabulated };
    Kind kind = Kind::PowerLaw;
    double scale = 1.0;           // K
    double b = 0.0;               // in [0,1)
    std::optional<double> eps_q;  // vanishing-factor exponent q > 0
    std::vector<std::pair<double, double>> table; // (u_i, Q_i), u ascending

    static QuantileModel power_law(double scale, double b,
                                   std::optional<double> eps_q = std::nullopt);
    static QuantileModel tabulated(std::vector<std::pair<double, double>> table);

    void validate() const;
    double eval(double u) const;     // u in [0,1]; +inf allowed at u=0
    // Q(u) * u^b: the bounded factor left after stripping the power
    // singularity; continuous at 0 (value K, or 0 with a vanishing factor).
    double eval_regular(double u) const;
    bool is_power_law() const { return kind == Kind::PowerLaw && !eps_q; }
};

struct PiecewiseBranch {
    enum class Kind { Constant, Affine, PoleLeft, PoleRight };
    Kind kind = Kind::Constant;
    double lo = 0.0, hi = 1.0; // open interval of monotonicity
    double a = 0.0, b = 0.0;   // Constant: a; Affine: a + b x
    double s = 0.0;            // pole exponent: a*(x-lo)^-s or a*(hi-x)^-s
};

/// Test-function catalog. Singular kinds blow up at an endpoint of [0,1]:
///   NeutralSingularity:  f(x) = x^(-s)        (pole at the neutral fixed point)
///   BoundarySingularity: f(x) = (1-x)^(-s)
///   Indicator:           f = 1_[lo,hi]
///   BV:                  bounded variation with |f| <= m1, var <= m2
///   PiecewiseMonotone:   explicit branches, zero elsewhere, with a tail bound
struct Observable {
    enum class Kind { NeutralSingularity, BoundarySingularity, Indicator, BV, PiecewiseMonotone };
    Kind kind = Kind::Indicator;
    double s = 0.0;
    double lo = 0.0, hi = 1.0;
    double m1 = 1.0, m2 = 0.0;
    std::vector<PiecewiseBranch> branches;
    TailFunction tail; // PiecewiseMonotone: bound on mu(|f| > t)
    std::optional<std::pair<double, double>> center; // (nu(f) estimate, stderr)

    static Observable neutral_singularity(double s);
    static Observable boundary_singularity(double s);
    static Observable indicator(double lo, double hi);
    static Observable bv(double m1, double m2);
    static Observable piecewise_monotone(std::vector<PiecewiseBranch> branches, TailFunction tail);

    void validate() const;
    double eval(double x) const; // domain error on an exact pole hit
    std::string label() const;
};

// Quantile-model tag for an observable paired with a map of parameter
// gamma: the b exponent, scale, and (piecewise-monotone case) the
// branch-count dilation of the supplied tail.
QuantileModel quantile_params(const Observable& f, double gamma);

// Smallest K such that K u^(-b) dominates the empirical quantile of |f|
// over the given orbit at the probed u values.
double fit_quantile_scale(const Observable& f, const std::vector<double>& orbit, double b);

struct CenterEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

// Time-average estimate of nu(f) over independent burned-in batches,
// with a batch-means standard error. Deterministic given the seed.
CenterEstimate estimate_center(const Observable& f, const MapSpec& spec,
                               std::uint64_t budget, std::uint64_t seed);

} // namespace adseq
