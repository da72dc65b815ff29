#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "core/dynamics.hpp"
#include "core/errors.hpp"
#include "core/observables.hpp"
#include "core/rng.hpp"
#include "core/stats.hpp"

using namespace adseq;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// deterministic pseudo-random doubles for generator-style checks
double next_uniform(CounterRng& rng) { return rng.uniform01(); }
} // namespace

TEST_CASE("quantile from tail: pinned values") {
    auto bounded = TailFunction::bounded(3.5);
    CHECK(quantile_from_tail(bounded, 0.3) == 3.5);
    CHECK(quantile_from_tail(bounded, 1.0) == 0.0);

    auto pl = TailFunction::power_law(2.0); // H(t) = min(1, t^-2)
    CHECK(quantile_from_tail(pl, 0.25) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(quantile_from_tail(pl, 0.0) == kInf);
    CHECK_THROWS_AS(quantile_from_tail(pl, -0.1), DomainError);
    CHECK_THROWS_AS(quantile_from_tail(pl, 1.1), DomainError);
}

TEST_CASE("quantile from tail: infimum property on a grid") {
    auto pl = TailFunction::power_law(1.5, 2.0, 0.5);
    for (double u : {0.05, 0.2, 0.5, 0.9}) {
        const double q = quantile_from_tail(pl, u);
        CHECK(pl.eval(q) <= u); // attained
        for (double t = 0.0; t < 8.0; t += 0.01)
            if (pl.eval(t) <= u) CHECK(q <= t + 1e-12);
    }
}

TEST_CASE("galois pair on tabulated tails") {
    CounterRng rng(2024, 0, 1);
    for (int rep = 0; rep < 50; ++rep) {
        // random non-increasing right-continuous step tail ending at 0
        std::vector<std::pair<double, double>> table;
        double t = next_uniform(rng);
        double h = 1.0;
        const int steps = 2 + static_cast<int>(next_uniform(rng) * 6);
        for (int i = 0; i < steps; ++i) {
            h *= next_uniform(rng);
            table.emplace_back(t, i + 1 == steps ? 0.0 : h);
            t += 0.1 + next_uniform(rng);
        }
        auto tail = TailFunction::tabulated(table);
        for (int k = 0; k < 40; ++k) {
            const double u = next_uniform(rng);
            const double q = quantile_from_tail(tail, u);
            const double tt = next_uniform(rng) * (t + 1.0);
            if (tail.eval(tt) <= u) CHECK(q <= tt);
            if (q <= tt) CHECK(tail.eval(std::nextafter(tt, kInf)) <= u + 1e-15);
        }
    }
}

TEST_CASE("quantile_from_tail is non-increasing in u") {
    auto pl = TailFunction::power_law(2.0, 1.5);
    double prev = kInf;
    for (double u = 0.01; u <= 1.0; u += 0.01) {
        const double q = quantile_from_tail(pl, u);
        CHECK(q <= prev);
        prev = q;
    }
}

TEST_CASE("observable evaluation: pinned values and poles") {
    auto neutral = Observable::neutral_singularity(0.25);
    CHECK(neutral.eval(0.0625) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(neutral.eval(0.0), DomainError);

    auto boundary = Observable::boundary_singularity(0.5);
    CHECK(boundary.eval(0.75) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(boundary.eval(1.0), DomainError);

    auto ind = Observable::indicator(0.5, 1.0);
    CHECK(ind.eval(0.3) == 0.0);
    CHECK(ind.eval(0.5) == 1.0);
    CHECK(ind.eval(1.0) == 1.0);
}

TEST_CASE("observable validation") {
    CHECK_THROWS_AS(Observable::neutral_singularity(1.0), ConfigError);
    CHECK_THROWS_AS(Observable::indicator(0.7, 0.2), ConfigError);
    CHECK_THROWS_AS(Observable::bv(-1.0, 1.0), ConfigError);
}

TEST_CASE("quantile tags: pinned parameters") {
    auto q1 = quantile_params(Observable::neutral_singularity(0.25), 0.25);
    CHECK(q1.b == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    auto q2 = quantile_params(Observable::boundary_singularity(0.3), 0.6);
    CHECK(q2.b == doctest::Approx(0.3));
    auto q3 = quantile_params(Observable::bv(1.0, 2.0), 0.4);
    CHECK(q3.b == 0.0);
    CHECK(q3.eval(0.17) == 5.0); // M1 + 2 M2
    CHECK_THROWS_AS(quantile_params(Observable::neutral_singularity(0.8), 0.25), DomainError);
}

TEST_CASE("piecewise-monotone tag dilates the tail quantile by the branch count") {
    std::vector<PiecewiseBranch> branches(3);
    branches[0] = {PiecewiseBranch::Kind::Affine, 0.0, 0.3, 0.0, 1.0, 0.0};
    branches[1] = {PiecewiseBranch::Kind::Constant, 0.3, 0.6, 0.25, 0.0, 0.0};
    branches[2] = {PiecewiseBranch::Kind::Affine, 0.6, 1.0, 1.0, -1.0, 0.0};
    auto f = Observable::piecewise_monotone(branches, TailFunction::power_law(2.0));
    auto q = quantile_params(f, 0.25);
    // H^-1(u) = u^-1/2, three branches
    CHECK(q.eval(0.25) == doctest::Approx(3.0 * 2.0).epsilon(1e-12));
    CHECK(f.eval(0.45) == 0.25);
    CHECK(f.eval(0.8) == doctest::Approx(0.2));
}

TEST_CASE("eps-decorated quantile model stays non-increasing") {
    auto q = QuantileModel::power_law(1.0, 0.25, 2.0); // q > b: raw form would turn upward
    double prev = kInf;
    for (double u = 1e-6; u <= 1.0; u *= 1.3) {
        const double v = q.eval(std::min(u, 1.0));
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
    CHECK_THROWS_AS(QuantileModel::power_law(1.0, 0.0, 1.0), ConfigError);
}

TEST_CASE("center estimation: exact cases") {
    auto lsv = MapSpec::lsv(0.25);
    auto full = Observable::indicator(0.0, 1.0);
    auto ce = estimate_center(full, lsv, 200000, 3);
    CHECK(ce.mean == 1.0);
    CHECK(ce.std_error == 0.0);

    auto constant = Observable::bv(0.5, 0.0); // too little variation: constant representative
    ce = estimate_center(constant, lsv, 200000, 3);
    CHECK(ce.mean == 0.5);
    CHECK(ce.std_error == 0.0);

    CHECK_THROWS_AS(estimate_center(full, lsv, 1000, 3), ConfigError);
}

TEST_CASE("center estimation: two seeds agree within combined error") {
    auto lsv = MapSpec::lsv(0.25);
    auto ind = Observable::indicator(0.5, 1.0);
    auto a = estimate_center(ind, lsv, 10000000, 1);
    auto b = estimate_center(ind, lsv, 10000000, 2);
    CHECK(a.std_error > 0.0);
    CHECK(std::abs(a.mean - b.mean) <
          3.0 * std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error));
}

TEST_CASE("empirical tail of a neutral pole matches the predicted decay exponent") {
    auto lsv = MapSpec::lsv(0.25);
    auto f = Observable::neutral_singularity(0.25);
    OrbitConfig cfg;
    cfg.seed = 77;
    cfg.burn_in = 10000;
    cfg.length = 1000000;
    auto orbit = generate_orbit(cfg, lsv);
    std::vector<double> mags(orbit.size());
    for (std::size_t i = 0; i < orbit.size(); ++i) mags[i] = f.eval(orbit[i]);
    std::sort(mags.begin(), mags.end());
    // log-log regression of the empirical tail against the predicted
    // exponent (1-gamma)/s = 3 over a moderate threshold range
    std::vector<ScalingPoint> pts;
    for (double t = 2.0; t <= 12.0; t *= 1.5) {
        const auto idx = std::lower_bound(mags.begin(), mags.end(), t) - mags.begin();
        const double p = 1.0 - static_cast<double>(idx) / mags.size();
        if (p <= 0) continue;
        pts.push_back({t, p, 0.0});
    }
    auto fit = scaling_fit(pts, false);
    CHECK(fit.exponent == doctest::Approx(-3.0).epsilon(0.2 / 3.0));
}

TEST_CASE("fitted quantile scale dominates the empirical quantile") {
    auto lsv = MapSpec::lsv(0.25);
    auto f = Observable::neutral_singularity(0.25);
    OrbitConfig cfg;
    cfg.seed = 78;
    cfg.burn_in = 10000;
    cfg.length = 400000;
    auto orbit = generate_orbit(cfg, lsv);
    const double b = quantile_params(f, 0.25).b;
    const double k = fit_quantile_scale(f, orbit, b);
    CHECK(k > 0.0);
    std::vector<double> mags(orbit.size());
    for (std::size_t i = 0; i < orbit.size(); ++i) mags[i] = std::abs(f.eval(orbit[i]));
    std::sort(mags.begin(), mags.end());
    for (double u : {0.4, 0.11, 0.031, 0.0043}) {
        const auto idx = static_cast<std::size_t>(std::ceil((1.0 - u) * mags.size())) - 1;
        CHECK(k * std::pow(u, -b) >= mags[idx] * (1.0 - 1e-9));
    }
}
