// Acceptance suite: one pass/fail line per criterion, nonzero exit if
// any fails. Statistical criteria run pinned seeds; every tolerance is
// fixed in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "core/bounds.hpp"
#include "core/config.hpp"
#include "core/dynamics.hpp"
#include "core/errors.hpp"
#include "core/montecarlo.hpp"
#include "core/rng.hpp"
#include "core/stats.hpp"

using namespace adseq;

namespace {

struct Criterion {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += "FAILED " + what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> quasi_u(int count) {
    std::vector<double> us;
    double x = 0.5;
    for (int i = 0; i < count; ++i) {
        x += 0.6180339887498949;
        x -= std::floor(x);
        us.push_back(0.5 * (x == 0.0 ? 1e-9 : x));
    }
    return us;
}

std::uint64_t indicator_sum_inverse(const AlphaModel& m, double u) {
    std::uint64_t count = 0;
    for (std::uint64_t n = 0; n < 100000000ull; ++n) {
        if (m.value(n) > u) ++count;
        else break;
    }
    return count;
}

SimConfig base_indicator_config() {
    SimConfig cfg;
    cfg.source.kind = SourceSpec::Kind::Map;
    cfg.source.map = MapSpec::lsv(0.25);
    cfg.source.observable = Observable::indicator(0.5, 1.0);
    cfg.replicas = 2000;
    cfg.seed = 1;
    cfg.burn_in = 10000;
    cfg.center_budget = 100000000;
    return cfg;
}

ScalingFit fit_moments(const EmpiricalResult& r, double p, bool weighted) {
    std::vector<ScalingPoint> pts;
    for (const auto& row : r.rows)
        if (row.statistic == "moment" && row.param == p)
            pts.push_back({static_cast<double>(row.n), row.estimate,
                           weighted ? row.std_error : 0.0});
    return scaling_fit(pts, false);
}

// ---- criteria ---------------------------------------------------------------

Criterion criterion1_inverse_machinery() {
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<AlphaModel> models = {
        AlphaModel::power_law(1.0, 0.25),
        AlphaModel::power_law(1.0, 0.5),
        AlphaModel::power_law(2.0, 0.4),
        AlphaModel::explicit_seq({0.5, 0.25, 0.1, 0.05}, AlphaModel::TailRule::Zero),
        AlphaModel::explicit_seq({0.5, 0.5, 0.3}, AlphaModel::TailRule::PowerLaw, 0.3, 0.5),
    };
    std::size_t mismatches = 0;
    for (const auto& m : models)
        for (double u : quasi_u(1000))
            if (m.inverse(u) != indicator_sum_inverse(m, u)) ++mismatches;
    c.require(mismatches == 0,
              "min-formula vs indicator-sum: " + std::to_string(mismatches) + " mismatches");

    std::size_t violations = 0;
    CounterRng rng(1, 0, 99);
    for (const auto& m : models) {
        BoundInputs in;
        in.alpha1 = in.alpha2 = m;
        in.q = QuantileModel::power_law(1.3, 0.2);
        in.n = 64;
        for (int i = 0; i < 100; ++i) {
            const double x = 50.0 * rng.uniform01();
            if (r_eval(in, r_inverse(in, x)) > x) ++violations;
        }
    }
    c.require(violations == 0,
              "right-inverse property: " + std::to_string(violations) + " violations");
    const double dt = seconds_since(t0);
    c.require(dt < 1.0, "runtime " + std::to_string(dt) + "s exceeds 1s");
    c.note("runtime " + std::to_string(dt).substr(0, 5) + "s");
    return c;
}

Criterion criterion2_quadrature() {
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    int compared = 0, rejected = 0;
    for (double gamma : {0.2, 0.25, 0.4}) {
        for (double b : {0.0, 0.1, 1.0 / 3.0}) {
            for (double p : {2.0, 3.0, 4.0}) {
                BoundInputs in;
                in.alpha1 = in.alpha2 = AlphaModel::power_law(1.0, gamma);
                in.q = QuantileModel::power_law(1.0, b);
                in.n = 64;
                in.p = p;

                if (p * b >= 1.0) {
                    bool closed_rejects = false, quad_rejects = false;
                    try { rosenthal_bound(in); } catch (const ConfigError&) { closed_rejects = true; }
                    BoundInputs q_in = in;
                    q_in.force_quadrature = true;
                    try { rosenthal_bound(q_in); } catch (const ConfigError&) { quad_rejects = true; }
                    c.require(closed_rejects && quad_rejects,
                              "both routes must reject p*b >= 1");
                    ++rejected;
                } else {
                    const BoundReport a = rosenthal_bound(in);
                    BoundInputs q_in = in;
                    q_in.force_quadrature = true;
                    const BoundReport bq = rosenthal_bound(q_in);
                    for (const auto& term : a.terms) {
                        const double other = bq.find(term.name)->value;
                        const double rel = term.value == 0.0
                                               ? std::abs(other)
                                               : std::abs(term.value - other) / term.value;
                        c.require(rel <= 1e-6, term.name + " rel err " + std::to_string(rel));
                        ++compared;
                    }
                }

                for (double x : {0.5, 4.0}) {
                    const BoundReport a = deviation_bound(in, x);
                    BoundInputs q_in = in;
                    q_in.force_quadrature = true;
                    const BoundReport bq = deviation_bound(q_in, x);
                    for (const auto& term : a.terms) {
                        const auto* other = bq.find(term.name);
                        c.require(term.divergent == other->divergent,
                                  term.name + " divergence flags disagree");
                        if (term.divergent) continue;
                        const double rel = term.value == 0.0
                                               ? std::abs(other->value)
                                               : std::abs(term.value - other->value) / term.value;
                        c.require(rel <= 1e-6, term.name + " rel err " + std::to_string(rel));
                        ++compared;
                    }
                }
            }
        }
    }
    const double dt = seconds_since(t0);
    c.require(dt < 10.0, "runtime " + std::to_string(dt) + "s exceeds 10s");
    c.note(std::to_string(compared) + " integral pairs, " + std::to_string(rejected) +
           " joint rejections, runtime " + std::to_string(dt).substr(0, 5) + "s");
    return c;
}

Criterion criterion3_sigma_oracles() {
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    OrbitConfig oc;
    oc.seed = 7;
    oc.length = 1000000;
    const double w = 1.0 / std::sqrt(2.0);
    struct Case {
        std::vector<double> weights;
        double target;
        const char* name;
    };
    for (const auto& [weights, target, name] :
         {Case{{w, w}, 2.0, "ma1"}, Case{{1.0}, 1.0, "iid"}, Case{{1.0, -1.0}, 0.0, "diff"}}) {
        auto series = mdep_sequence(oc, weights);
        const auto est = sigma2_estimate(series);
        const double err = std::abs(est.value - target);
        c.require(err <= 3.0 * est.std_error,
                  std::string(name) + ": |" + std::to_string(est.value) + " - " +
                      std::to_string(target) + "| > 3 * " + std::to_string(est.std_error));
    }
    const double dt = seconds_since(t0);
    c.require(dt < 30.0, "runtime " + std::to_string(dt) + "s exceeds 30s");
    c.note("runtime " + std::to_string(dt).substr(0, 5) + "s");
    return c;
}

// shared with criterion 9: the regime experiment at three thread counts
struct RegimeRun {
    EmpiricalResult results[3];
    std::string csv[3];
};

RegimeRun run_regime_experiment() {
    RegimeRun out;
    SimConfig cfg = base_indicator_config();
    cfg.n_grid = {1024, 2048, 4096, 8192, 16384, 32768};
    cfg.p_list = {2.0};
    const std::uint32_t threads[3] = {1, 2, 8};
    for (int i = 0; i < 3; ++i) {
        cfg.threads = threads[i];
        out.results[i] = run_experiment(cfg, kMoments);
        out.csv[i] = out.results[i].to_csv();
    }
    return out;
}

Criterion criterion4_regime_exponent(const RegimeRun& run) {
    Criterion c;
    const auto fit = fit_moments(run.results[1], 2.0, true);
    const auto predicted = regime_predict(0.25, 0.0, 2.0);
    c.require(std::abs(fit.exponent - predicted.moment_exponent) <= 0.15,
              "exponent " + std::to_string(fit.exponent) + " outside 1 +- 0.15");
    c.note("fitted exponent " + std::to_string(fit.exponent) + " +- " +
           std::to_string(fit.std_error));
    return c;
}

Criterion criterion5_critical_regime() {
    Criterion c;
    SimConfig cfg = base_indicator_config();
    cfg.source.observable = Observable::neutral_singularity(0.25); // b = 1/3 exactly
    cfg.n_grid = {2048, 4096, 8192, 16384, 32768};
    cfg.replicas = 4000;
    cfg.seed = 2;
    const auto predicted = regime_predict(0.25, 1.0 / 3.0, 2.0);
    if (!predicted.log_factor) {
        c.require(false, "prediction must be the n log n boundary case");
        return c;
    }
    auto r = run_experiment(cfg, kMoments);
    double rmin = 1e300, rmax = 0.0;
    for (const auto& row : r.rows) {
        if (row.statistic != "moment") continue;
        const double ratio =
            row.estimate / (static_cast<double>(row.n) * std::log(static_cast<double>(row.n)));
        rmin = std::min(rmin, ratio);
        rmax = std::max(rmax, ratio);
    }
    c.require(rmax / rmin < 2.0,
              "moment/(n ln n) spread " + std::to_string(rmax / rmin) + " >= 2");
    const auto fit = fit_moments(r, 2.0, true);
    c.require(fit.exponent >= 1.0 && fit.exponent <= 1.25,
              "plain fit exponent " + std::to_string(fit.exponent) + " outside [1, 1.25]");
    c.note("spread " + std::to_string(rmax / rmin) + ", exponent " +
           std::to_string(fit.exponent));
    return c;
}

Criterion criterion6_clt_marginal() {
    Criterion c;
    SimConfig cfg = base_indicator_config();
    cfg.n_grid = {32768};
    cfg.seed = 2;
    cfg.center_budget = 400000000;
    cfg.sigma_orbit_length = 16000000;
    auto r = run_experiment(cfg, kClt);
    double ks = -1.0, sigma_hat = 0.0;
    for (const auto& row : r.rows) {
        if (row.statistic == "ks_normal" && row.n == 32768) {
            ks = row.estimate;
            sigma_hat = row.param;
        }
    }
    c.require(ks >= 0.0, "missing ks row");
    c.require(ks <= 0.03, "ks distance " + std::to_string(ks) + " > 0.03");
    c.note("ks " + std::to_string(ks) + " with sigma-hat " + std::to_string(sigma_hat));
    return c;
}

Criterion criterion7_holder_stability() {
    Criterion c;
    SimConfig cfg = base_indicator_config();
    cfg.n_grid = {4096, 16384};
    cfg.holder_beta = 0.2; // below the predicted tightness exponent delta = 0.25
    const auto predicted = regime_predict(0.25, 0.0, 2.0);
    c.require(predicted.holder_delta.has_value() && cfg.holder_beta < *predicted.holder_delta,
              "beta must sit below the predicted delta");
    auto r = run_experiment(cfg, kHip);
    double q_small = 0.0, q_big = 0.0;
    for (const auto& row : r.rows) {
        if (row.statistic != "holder_q95") continue;
        if (row.n == 4096) q_small = row.estimate;
        if (row.n == 16384) q_big = row.estimate;
    }
    const double ratio = q_big > q_small ? q_big / q_small : q_small / q_big;
    c.require(q_small > 0.0 && q_big > 0.0, "missing holder quantile rows");
    c.require(ratio <= 1.5, "q95 ratio " + std::to_string(ratio) + " > 1.5");
    c.note("q95 " + std::to_string(q_small) + " vs " + std::to_string(q_big) + ", ratio " +
           std::to_string(ratio));
    return c;
}

Criterion criterion8_tail_decay() {
    Criterion c;
    SimConfig cfg;
    cfg.source.kind = SourceSpec::Kind::Map;
    cfg.source.map = MapSpec::lsv(0.25);
    // any b = 0 observable qualifies; the indicator of a neighborhood of
    // the neutral point keeps the excursion tail measurable inside the
    // probability window (calibrated x below)
    cfg.source.observable = Observable::indicator(0.0, 0.07);
    cfg.n_grid = {256, 512, 1024, 2048};
    cfg.replicas = 100000;
    cfg.seed = 1;
    cfg.burn_in = 2000;
    cfg.center_budget = 10000000;
    cfg.x_grid = {0.085};
    auto r = run_experiment(cfg, kTails);
    std::vector<ScalingPoint> pts;
    for (const auto& row : r.rows) {
        if (row.statistic != "tail") continue;
        c.require(row.estimate >= 1e-4 && row.estimate <= 1e-1,
                  "tail at n=" + std::to_string(row.n) + " is " + std::to_string(row.estimate) +
                      ", outside [1e-4, 1e-1]");
        c.require(row.flags.find("low-power") == std::string::npos,
                  "low-power flag raised at n=" + std::to_string(row.n));
        pts.push_back({static_cast<double>(row.n), row.estimate, 0.0});
    }
    const auto fit = scaling_fit(pts, false);
    const double limit = -(regime_predict(0.25, 0.0, 2.0).ld_p - 1.0) + 0.5; // -2.5
    c.require(fit.exponent <= limit,
              "slope " + std::to_string(fit.exponent) + " above " + std::to_string(limit));
    c.note("slope " + std::to_string(fit.exponent) + " (limit " + std::to_string(limit) + ")");
    return c;
}

Criterion criterion9_determinism(const RegimeRun& run) {
    Criterion c;
    c.require(run.csv[0] == run.csv[1], "thread counts 1 and 2 disagree");
    c.require(run.csv[0] == run.csv[2], "thread counts 1 and 8 disagree");
    c.note("csv identical across 1/2/8 worker threads (" +
           std::to_string(run.csv[0].size()) + " bytes)");
    return c;
}

Criterion criterion10_condition_algebra() {
    Criterion c;
    CounterRng rng(17, 0, 98);
    for (int i = 0; i < 50; ++i) {
        const double gamma = 0.05 + 0.9 * rng.uniform01();
        const double b = 0.95 * rng.uniform01();
        const double p = 1.0 + 4.0 * rng.uniform01();
        auto a2 = AlphaModel::power_law(1.0, gamma);
        auto q = QuantileModel::power_law(1.0, b);
        const auto sm = check_condition(a2, q, p, ConditionKind::StrongMoment);
        const auto wm = check_condition(a2, q, p, ConditionKind::WeakMoment);
        if (sm.holds) c.require(wm.holds, "strong moment held but weak moment failed");
        c.require(sm.critical_p == regime_predict(gamma, b, p).ld_p,
                  "critical_p differs from ld_p");
    }
    c.note("50 random (gamma, b, p) draws");
    return c;
}

} // namespace

int main() {
    int failures = 0;
    const auto report = [&failures](int idx, const char* name, const Criterion& c) {
        std::printf("%s  criterion %2d: %-28s %s\n", c.pass ? "PASS" : "FAIL", idx, name,
                    c.detail.c_str());
        std::fflush(stdout);
        if (!c.pass) ++failures;
    };

    report(1, "inverse machinery", criterion1_inverse_machinery());
    report(2, "quadrature correctness", criterion2_quadrature());
    report(3, "long-run variance oracles", criterion3_sigma_oracles());
    const RegimeRun regime = run_regime_experiment();
    report(4, "moment regime exponent", criterion4_regime_exponent(regime));
    report(5, "critical n log n regime", criterion5_critical_regime());
    report(6, "clt marginal", criterion6_clt_marginal());
    report(7, "holder norm stability", criterion7_holder_stability());
    report(8, "tail decay diagnostic", criterion8_tail_decay());
    report(9, "thread determinism", criterion9_determinism(regime));
    report(10, "condition checker algebra", criterion10_condition_algebra());

    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
