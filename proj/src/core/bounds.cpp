#include "core/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/errors.hpp"
#include "core/quadrature.hpp"

namespace adseq {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kQuadRelTol = 1e-6;
} // namespace

void BoundInputs::validate_deviation() const {
    if (n == 0) throw ConfigError("bounds: n must be positive");
    const double rv = r_value();
    const double bv = beta_value();
    if (!(rv > 2.0)) throw ConfigError("bounds: r must exceed 2");
    if (!(bv > rv - 2.0 && bv < rv))
        throw ConfigError("bounds: beta must lie in (r-2, r)");
}

const BoundTerm* BoundReport::find(const std::string& name) const {
    for (const auto& t : terms)
        if (t.name == name) return &t;
    return nullptr;
}

double r_eval(const BoundInputs& in, double u, bool capped) {
    if (!(u > 0.0)) throw DomainError("r_eval: u must be positive");
    if (u > 1.0) throw DomainError("r_eval: u outside (0,1]");
    const std::uint64_t inv =
        in.alpha2.inverse(u, capped ? std::optional<std::uint64_t>(in.n) : std::nullopt);
    if (inv == 0) return 0.0;
    return static_cast<double>(inv) * in.q.eval(u);
}

double r_inverse(const BoundInputs& in, double x) {
    if (!(x >= 0.0)) throw DomainError("r_inverse: x must be >= 0");
    // value at u = 0+ : the step factor is capped at n
    const double at0 = static_cast<double>(in.n) * in.q.eval(0.0);
    if (at0 <= x) return 0.0;
    double lo = 0.0, hi = 1.0; // R_n(1) = 0 <= x always
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (r_eval(in, mid) <= x) hi = mid; else lo = mid;
        if (hi - lo < 1e-13) break;
    }
    return hi; // predicate-true side: R_n(hi) <= x holds exactly
}

StepIntegral q_power_integral_closed(const QuantileModel& q, double m, double c, double d) {
    if (!(d > c)) return {};
    if (!q.is_power_law())
        throw DomainError("closed form requires a pure power-law quantile model");
    const double km = std::pow(q.scale, m);
    const double e = m * q.b; // integrand ~ u^-e
    StepIntegral out;
    if (q.scale == 0.0) return out;
    if (e >= 1.0 && c == 0.0) {
        out.value = kInf;
        out.divergent = true;
        return out;
    }
    if (e == 1.0) {
        out.value = km * std::log(d / c);
        return out;
    }
    const double g = 1.0 - e;
    const double upper = std::pow(d, g);
    const double lower = c == 0.0 ? 0.0 : std::pow(c, g);
    out.value = km * (upper - lower) / g;
    return out;
}

namespace {

// Constancy intervals of u -> (alpha^{-1}(u) ∧ n) on (c,d): the factor
// equals k on [alpha(k), alpha(k-1)) and n below alpha(n-1).
struct StepInterval {
    double lo, hi;
    double level; // (alpha^{-1} ∧ n) on (lo, hi)
};

std::vector<StepInterval> step_intervals(const AlphaModel& alpha, std::uint64_t n_cap,
                                         double c, double d) {
    std::vector<StepInterval> out;
    if (!(d > c)) return out;
    // walk levels from the right end of (c,d)
    std::uint64_t k_lo = alpha.inverse(std::min(d, 1.0) , n_cap); // level just left of d
    // careful: level on [alpha(k), alpha(k-1)) is k; at u = d the level is
    // inverse(d); the first interval extends down to alpha(inverse(d)) ... walk down.
    double hi = d;
    std::uint64_t k = k_lo;
    while (hi > c) {
        double lo;
        if (k >= n_cap) {
            lo = c; // capped region extends to the left edge
            k = n_cap;
        } else {
            lo = alpha.value(k); // level k applies on [alpha(k), previous)
            if (lo < c) lo = c;
        }
        if (lo < hi) out.push_back({lo, hi, static_cast<double>(k)});
        if (lo <= c) break;
        hi = lo;
        ++k;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

} // namespace

StepIntegral step_integral(const AlphaModel& alpha, std::uint64_t n_cap, double j,
                           const QuantileModel& q, double m, double c, double d,
                           bool force_quadrature) {
    StepIntegral total;
    if (!(d > c)) return total;
    const bool closed = q.is_power_law() && !force_quadrature;

    const auto add_piece = [&](double w, double lo, double hi) -> bool {
        if (closed) {
            StepIntegral part = q_power_integral_closed(q, m, lo, hi);
            if (part.divergent) {
                total.value = kInf;
                total.divergent = true;
                return false;
            }
            total.value += w * part.value;
            return true;
        }
        const double sing = q.kind == QuantileModel::Kind::PowerLaw ? m * q.b : 0.0;
        if (sing >= 1.0 && lo == 0.0) {
            total.value = kInf;
            total.divergent = true;
            return false;
        }
        // integrand Q^m = u^(-m b) * (Q u^b)^m with the second factor bounded
        QuadResult r = integrate_power_singular(
            [&q, m](double u) { return std::pow(q.eval_regular(u), m); }, lo, hi, sing,
            kQuadRelTol);
        total.value += w * r.value;
        total.quad_error += w * r.abs_error;
        total.converged = total.converged && r.converged;
        return true;
    };

    if (j == 0.0) { // step factor drops out
        add_piece(1.0, c, d);
        return total;
    }
    for (const StepInterval& seg : step_intervals(alpha, n_cap, c, d)) {
        if (seg.level == 0.0) continue;
        const double w = std::pow(seg.level, j);
        if (!add_piece(w, seg.lo, seg.hi)) return total;
    }
    return total;
}

namespace {

BoundTerm make_term(const std::string& name, double value, const StepIntegral& src) {
    BoundTerm t;
    t.name = name;
    t.value = value;
    t.quad_error = src.quad_error;
    t.divergent = src.divergent || !std::isfinite(value);
    return t;
}

void require_converged(const StepIntegral& s, const std::string& what) {
    if (!s.converged)
        throw QuadratureError("bounds: adaptive quadrature did not reach 1e-6 on " + what);
}

} // namespace

BoundReport deviation_bound(const BoundInputs& in, double x) {
    if (!(x > 0.0)) throw DomainError("deviation_bound: x must be positive");
    in.validate_deviation();
    const double r = in.r_value();
    const double beta = in.beta_value();
    const double n = static_cast<double>(in.n);
    const double level = r_inverse(in, x);

    // variance proxy: n * int_L^1 (alpha1^{-1} ∧ n) Q^2
    StepIntegral s2_int = in.use_majorant
                              ? step_integral(in.alpha1, in.n, 1.0, in.q, 2.0, 0.0, 1.0,
                                              in.force_quadrature)
                              : step_integral(in.alpha1, in.n, 1.0, in.q, 2.0, level, 1.0,
                                              in.force_quadrature);
    require_converged(s2_int, "variance proxy");
    const double s2 = n * s2_int.value;

    StepIntegral i2 = step_integral(in.alpha2, in.n, 0.0, in.q, 1.0, 0.0, level,
                                    in.force_quadrature);
    require_converged(i2, "term2 integrand");
    StepIntegral i3 = step_integral(in.alpha2, in.n, beta / 2.0, in.q, beta / 2.0 + 1.0, 0.0,
                                    level, in.force_quadrature);
    require_converged(i3, "term3 integrand");
    StepIntegral i4 = step_integral(in.alpha2, in.n, r / 2.0, in.q, r / 2.0 + 1.0, level, 1.0,
                                    in.force_quadrature);
    require_converged(i4, "term4 integrand");

    BoundReport rep;
    rep.op = "deviation";
    rep.terms.push_back(make_term("deviation.term1", std::pow(s2, r / 2.0) / std::pow(x, r),
                                  s2_int));
    rep.terms.push_back(make_term("deviation.term2", n / x * i2.value, i2));
    rep.terms.push_back(
        make_term("deviation.term3", n / std::pow(x, 1.0 + beta / 2.0) * i3.value, i3));
    rep.terms.push_back(
        make_term("deviation.term4", n / std::pow(x, 1.0 + r / 2.0) * i4.value, i4));
    rep.total = 0.0;
    for (const auto& t : rep.terms) rep.total += t.value;
    rep.diagnostics.emplace_back("level", level);
    rep.diagnostics.emplace_back("variance_proxy", s2);
    return rep;
}

BoundReport rosenthal_bound(const BoundInputs& in) {
    if (!(in.p >= 2.0)) throw ConfigError("rosenthal_bound: p must be >= 2");
    if (in.n == 0) throw ConfigError("rosenthal_bound: n must be positive");
    if (in.q.is_power_law() && in.p * in.q.b >= 1.0)
        throw ConfigError("rosenthal_bound: quantile model not p-integrable (p*b >= 1)");

    // term1: n^{p/2} ( sum_k int_0^{alpha1(k)} Q^2 )^{p/2}
    //       = n^{p/2} ( int_0^1 (alpha1^{-1} ∧ n) Q^2 )^{p/2}
    StepIntegral v = step_integral(in.alpha1, in.n, 1.0, in.q, 2.0, 0.0, 1.0,
                                   in.force_quadrature);
    require_converged(v, "variance sum");
    const double n = static_cast<double>(in.n);

    // term2: n * sum_k (k+1)^{p-2} int_0^{alpha2(k)} Q^p
    double t2 = 0.0, t2_err = 0.0;
    bool t2_div = false, t2_conv = true;
    for (std::uint64_t k = 0; k < in.n; ++k) {
        const double ak = in.alpha2.value(k);
        if (ak <= 0.0) break; // sequence hit zero; all later terms vanish
        const double w = std::pow(static_cast<double>(k + 1), in.p - 2.0);
        if (in.q.is_power_law() && !in.force_quadrature) {
            StepIntegral part = q_power_integral_closed(in.q, in.p, 0.0, ak);
            if (part.divergent) { t2_div = true; break; }
            t2 += w * part.value;
        } else {
            const double sing = in.q.kind == QuantileModel::Kind::PowerLaw ? in.p * in.q.b : 0.0;
            if (sing >= 1.0) { t2_div = true; break; }
            QuadResult qr = integrate_power_singular(
                [&in](double u) { return std::pow(in.q.eval_regular(u), in.p); }, 0.0, ak, sing,
                kQuadRelTol);
            t2 += w * qr.value;
            t2_err += w * qr.abs_error;
            t2_conv = t2_conv && qr.converged;
        }
    }
    if (!t2_conv) throw QuadratureError("bounds: adaptive quadrature did not converge on term2");

    BoundReport rep;
    rep.op = "rosenthal";
    rep.terms.push_back(
        make_term("rosenthal.term1", std::pow(n, in.p / 2.0) * std::pow(v.value, in.p / 2.0), v));
    StepIntegral t2_src;
    t2_src.quad_error = t2_err;
    t2_src.divergent = t2_div;
    rep.terms.push_back(make_term("rosenthal.term2", t2_div ? kInf : n * t2, t2_src));
    rep.total = rep.terms[0].value + rep.terms[1].value;
    return rep;
}

BoundReport large_deviation_bound(const BoundInputs& in, double x, LdVariant variant) {
    if (!(x > 0.0)) throw DomainError("large_deviation_bound: x must be positive");
    const double n = static_cast<double>(in.n);
    const double p = in.p;
    const double a = in.a_value();
    const double c = in.c_value();

    BoundReport rep;
    rep.op = "large_deviation";
    StepIntegral none;
    switch (variant) {
        case LdVariant::Pointwise:
            if (!(p > 2.0)) throw ConfigError("ld: pointwise variant needs p > 2");
            if (!(a > p - 1.0 && a < p)) throw ConfigError("ld: a must lie in (p-1, p)");
            rep.terms.push_back(make_term(
                "ld.term1", 1.0 / (std::pow(n, a) * std::pow(x, 2.0 * a)), none));
            rep.terms.push_back(make_term(
                "ld.term2", 1.0 / (std::pow(n, p - 1.0) * std::pow(x, p)), none));
            break;
        case LdVariant::PointwiseP2:
            if (p != 2.0) throw ConfigError("ld: p2 variant needs p = 2");
            if (!(a > 1.0 && a < 2.0)) throw ConfigError("ld: a must lie in (1,2)");
            if (!(c > 0.0 && c < 1.0)) throw ConfigError("ld: c must lie in (0,1)");
            rep.terms.push_back(make_term(
                "ld.term1", 1.0 / (std::pow(n, a * c) * std::pow(x, a * (1.0 + c))), none));
            rep.terms.push_back(make_term("ld.term2", 1.0 / (n * x * x), none));
            break;
        case LdVariant::PointwiseLowP:
            if (!(p > 1.0 && p < 2.0)) throw ConfigError("ld: low-p variant needs p in (1,2)");
            rep.terms.push_back(make_term(
                "ld.term1", 1.0 / (std::pow(n, p - 1.0) * std::pow(x, p)), none));
            break;
        case LdVariant::Summed:
            if (!(p >= 2.0)) throw ConfigError("ld: summed variant needs p >= 2");
            if (!(a > p - 1.0 && a < p)) throw ConfigError("ld: a must lie in (p-1, p)");
            rep.terms.push_back(make_term("ld.term1", std::pow(x, -2.0 * a), none));
            rep.terms.push_back(make_term("ld.term2", std::pow(x, -p), none));
            break;
        case LdVariant::SummedLowP:
            if (!(p > 1.0 && p < 2.0)) throw ConfigError("ld: low-p variant needs p in (1,2)");
            rep.terms.push_back(make_term("ld.term1", std::pow(x, -p), none));
            break;
    }
    rep.total = 0.0;
    for (const auto& t : rep.terms) rep.total += t.value;
    // decay exponent in n at fixed x, common to every variant
    rep.diagnostics.emplace_back("n_decay_exponent", p - 1.0);
    return rep;
}

ConditionResult check_condition(const AlphaModel& alpha2, const QuantileModel& q, double p,
                                ConditionKind kind) {
    if (!alpha2.is_power_law() || q.kind != QuantileModel::Kind::PowerLaw)
        throw DomainError(
            "check_condition: analytic decision needs power-law alpha and quantile models");
    const double gamma = alpha2.power_law_gamma();
    const double b = q.b;
    const double critical_p = 1.0 / (gamma + b * (1.0 - gamma));

    ConditionResult res;
    res.critical_p = critical_p;
    switch (kind) {
        case ConditionKind::WeakMoment:
            res.holds = p <= critical_p;
            res.margin = critical_p - p;
            break;
        case ConditionKind::WeakMomentVanishing:
            res.holds = p < critical_p || (p == critical_p && q.eps_q.has_value());
            res.margin = critical_p - p;
            break;
        case ConditionKind::StrongMoment:
            res.holds = p < critical_p;
            res.margin = critical_p - p;
            break;
        case ConditionKind::LongRunVariance:
            res.holds = critical_p > 2.0;
            res.margin = critical_p - 2.0;
            break;
    }
    return res;
}

RegimePrediction regime_predict(double gamma, double b, double p) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("regime_predict: gamma outside (0,1)");
    if (!(b >= 0.0 && b < 1.0)) throw DomainError("regime_predict: b outside [0,1)");
    if (!(p > 1.0)) throw DomainError("regime_predict: p must exceed 1");

    RegimePrediction out;
    const double heavy = (p * gamma + (gamma - 1.0) * (1.0 - p * b)) / gamma;
    if (p > 2.0) {
        const double threshold = (2.0 - gamma * (p + 2.0)) / (2.0 * p * (1.0 - gamma));
        out.moment_exponent = b <= threshold ? p / 2.0 : heavy;
    } else if (p == 2.0) {
        const double threshold = (1.0 - 2.0 * gamma) / (2.0 * (1.0 - gamma));
        if (b < threshold) {
            out.moment_exponent = 1.0;
        } else if (b == threshold) {
            out.moment_exponent = 1.0;
            out.log_factor = true;
        } else {
            out.moment_exponent = heavy;
        }
    } else {
        const double threshold = (1.0 - p * gamma) / (p * (1.0 - gamma));
        if (b < threshold) {
            out.moment_exponent = 1.0;
        } else if (b == threshold) {
            out.moment_exponent = 1.0;
            out.log_factor = true;
        } else {
            out.moment_exponent = heavy;
        }
    }
    const double delta = 0.5 - gamma - b * (1.0 - gamma);
    if (delta > 0.0) out.holder_delta = delta;
    out.ld_p = 1.0 / (gamma + b * (1.0 - gamma));
    return out;
}

} // namespace adseq
