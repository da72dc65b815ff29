#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/coefficients.hpp"
#include "core/observables.hpp"

namespace adseq {

/// Everything the deviation / moment / large-deviation evaluators need:
/// the two dependence models, the quantile model, the horizon n, the
/// moment order p, and the free parameters of the deviation inequality
/// (r > 2, beta in (r-2, r), a in (p-1, p), c in (0,1)).
struct BoundInputs {
    AlphaModel alpha1 = AlphaModel::power_law(1.0, 0.5);
    AlphaModel alpha2 = AlphaModel::power_law(1.0, 0.5);
    QuantileModel q = QuantileModel::power_law(1.0, 0.0);
    std::uint64_t n = 1;
    double p = 2.0;
    std::optional<double> r;     // default 2p - 1
    std::optional<double> beta;  // default 2p - 2.5
    std::optional<double> a;     // default p - 1/2
    std::optional<double> c;     // default 1/2
    bool use_majorant = false;   // x-free bound on the variance proxy
    bool force_quadrature = false;

    double r_value() const { return r ? *r : 2.0 * p - 1.0; }
    double beta_value() const { return beta ? *beta : 2.0 * p - 2.5; }
    double a_value() const { return a ? *a : p - 0.5; }
    double c_value() const { return c ? *c : 0.5; }
    void validate_deviation() const; // r/beta window, n >= 1
};

struct BoundTerm {
    std::string name;
    double value = 0.0;
    double quad_error = 0.0; // 0 for closed-form evaluation
    bool divergent = false;
};

struct BoundReport {
    std::string op;
    std::vector<BoundTerm> terms;
    double total = 0.0;
    std::vector<std::pair<std::string, double>> diagnostics;
    // All right-hand sides are reported up to the universal constant of
    // the underlying inequality, which the theory does not instantiate.
    bool constants_omitted = true;

    const BoundTerm* find(const std::string& name) const;
};

// R_n(u) = (alpha2^{-1}(u) ∧ n) Q(u); uncapped R(u) when capped == false.
double r_eval(const BoundInputs& in, double u, bool capped = true);

// Generalized inverse of R_n: inf{u in [0,1] : R_n(u) <= x}, located by
// bisection to 1e-12; the returned point always satisfies R_n(u) <= x.
double r_inverse(const BoundInputs& in, double x);

// Four-term tail bound for max_k |S_k| at level x (plus the x-dependent
// variance proxy as a diagnostic).
BoundReport deviation_bound(const BoundInputs& in, double x);

// Two-term Rosenthal-type bound on || max |S_k| ||_p^p, p >= 2.
BoundReport rosenthal_bound(const BoundInputs& in);

enum class LdVariant {
    Pointwise,      // p > 2:  n^-a x^-2a + n^-(p-1) x^-p
    PointwiseP2,    // p = 2:  n^-ac x^-a(1+c) + n^-1 x^-2
    PointwiseLowP,  // p in (1,2): n^-(p-1) x^-p
    Summed,         // p >= 2: x^-2a + x^-p  (series weighted by n^(p-2))
    SummedLowP,     // p in (1,2): x^-p
};

BoundReport large_deviation_bound(const BoundInputs& in, double x, LdVariant variant);

enum class ConditionKind {
    WeakMoment,           // sup_x x^(p-1) \int Q 1_{R>x} finite
    WeakMomentVanishing,  // same quantity tends to 0
    StrongMoment,         // \int (alpha2^{-1})^(p-1) Q^p finite
    LongRunVariance,      // \int alpha2^{-1} Q^2 finite
};

struct ConditionResult {
    bool holds = false;
    double margin = 0.0;     // critical_p - p (LongRunVariance: critical_p - 2)
    double critical_p = 0.0; // 1 / (gamma + b(1-gamma))
};

// Analytic decision for power-law alpha2 and (possibly eps-decorated)
// power-law Q. Other representations are rejected as undecidable.
ConditionResult check_condition(const AlphaModel& alpha2, const QuantileModel& q, double p,
                                ConditionKind kind);

struct RegimePrediction {
    double moment_exponent = 0.0; // theta with ||max|S_k|||_p^p of order n^theta
    bool log_factor = false;      // n log n at the boundary case
    std::optional<double> holder_delta; // 1/2 - gamma - b(1-gamma) when positive
    double ld_p = 0.0;            // 1 / (gamma + b(1-gamma))
};

RegimePrediction regime_predict(double gamma, double b, double p);

// --- integral machinery shared with tests ---------------------------------

// \int_c^d (alpha^{-1}(u) ∧ n)^j Q(u)^m du, evaluated as an exact sum
// over the constancy intervals of the step factor. Within an interval the
// Q-power is integrated in closed form when the model allows, otherwise
// by adaptive quadrature. Returns a divergent marker if the integral is
// infinite.
struct StepIntegral {
    double value = 0.0;
    double quad_error = 0.0;
    bool divergent = false;
    bool converged = true;
};
StepIntegral step_integral(const AlphaModel& alpha, std::uint64_t n_cap, double j,
                           const QuantileModel& q, double m, double c, double d,
                           bool force_quadrature = false);

// Closed-form \int_c^d Q(u)^m du for a pure power-law model (divergent
// marker when m*b >= 1 and c == 0).
StepIntegral q_power_integral_closed(const QuantileModel& q, double m, double c, double d);

} // namespace adseq
