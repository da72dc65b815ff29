#include "core/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "core/errors.hpp"

namespace adseq {

BirkhoffStats birkhoff_stats(std::span<const double> values, double center) {
    BirkhoffStats out;
    out.partial_sums.resize(values.size());
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        s += values[i] - center;
        out.partial_sums[i] = s;
        const double a = std::abs(s);
        if (a > out.max_abs) out.max_abs = a;
    }
    return out;
}

double donsker_path(std::span<const double> partial_sums, std::span<const double> increments,
                    double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("donsker_path: t outside [0,1]");
    const std::size_t n = partial_sums.size();
    if (n == 0 || increments.size() != n)
        throw DomainError("donsker_path: need matching non-empty sums and increments");
    const double nt = static_cast<double>(n) * t;
    const auto k = static_cast<std::size_t>(std::floor(nt));
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double sk = k == 0 ? 0.0 : partial_sums[std::min(k, n) - 1];
    if (k >= n) return partial_sums[n - 1] / sqrt_n;
    return sk / sqrt_n + (nt - static_cast<double>(k)) * increments[k] / sqrt_n;
}

HolderNorm holder_norm(std::span<const double> ts, std::span<const double> fs, double beta) {
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("holder_norm: beta outside (0,1)");
    const std::size_t n = ts.size();
    if (n < 2 || fs.size() != n) throw DomainError("holder_norm: need >= 2 breakpoints");
    for (std::size_t i = 1; i < n; ++i)
        if (!(ts[i] > ts[i - 1])) throw DomainError("holder_norm: breakpoints must increase");

    HolderNorm out;
    double best = 0.0;
    if (n <= 4096) { // exact over all breakpoint pairs
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t jj = i + 1; jj < n; ++jj) {
                const double dt = ts[jj] - ts[i];
                if (dt > 1.0) break; // seminorm at scale 1
                const double ratio = std::abs(fs[jj] - fs[i]) / std::pow(dt, beta);
                if (ratio > best) best = ratio;
            }
        }
    } else {
        out.approximate = true;
        for (std::size_t gap = 1; gap < n; gap *= 2) {
            for (std::size_t i = 0; i + gap < n; ++i) {
                const double dt = ts[i + gap] - ts[i];
                if (dt > 1.0) continue;
                const double ratio = std::abs(fs[i + gap] - fs[i]) / std::pow(dt, beta);
                if (ratio > best) best = ratio;
            }
        }
        const double dt = ts[n - 1] - ts[0];
        if (dt <= 1.0) {
            const double ratio = std::abs(fs[n - 1] - fs[0]) / std::pow(dt, beta);
            if (ratio > best) best = ratio;
        }
    }
    out.seminorm = best;
    out.norm = std::abs(fs[0]) + best;
    return out;
}

Sigma2Estimate sigma2_estimate(std::span<const double> series, std::uint32_t bandwidth) {
    const std::size_t n = series.size();
    if (bandwidth == 0)
        bandwidth = static_cast<std::uint32_t>(std::cbrt(static_cast<double>(n)));
    if (bandwidth == 0) bandwidth = 1;
    if (n < 100 * static_cast<std::size_t>(bandwidth))
        throw ConfigError("sigma2: series must be >= 100 * bandwidth long");

    // returns the tapered estimate and the taper-sensitivity term
    // sum_k (1 - w_k) 2 c_k (rectangular minus Bartlett at the same
    // bandwidth), which scales like the truncation bias
    const auto bartlett = [&](std::span<const double> xs) {
        const std::size_t len = xs.size();
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(len);
        double est = 0.0, taper_gap = 0.0;
        for (std::uint32_t k = 0; k <= bandwidth; ++k) {
            double cov = 0.0;
            for (std::size_t i = k; i < len; ++i)
                cov += (xs[i] - mean) * (xs[i - k] - mean);
            cov /= static_cast<double>(len);
            const double w = 1.0 - static_cast<double>(k) / (bandwidth + 1.0);
            est += (k == 0 ? 1.0 : 2.0 * w) * cov;
            if (k > 0) taper_gap += (1.0 - w) * 2.0 * cov;
        }
        return std::pair<double, double>(est, taper_gap);
    };

    Sigma2Estimate out;
    out.bandwidth = bandwidth;
    const auto [full_est, full_gap] = bartlett(series);
    out.value = full_est;

    // batch means over equal slices, each long enough for the same taper
    std::size_t batch_len = std::max<std::size_t>(100 * bandwidth, n / 64);
    const std::size_t batches = n / batch_len;
    double stochastic = std::abs(out.value); // degenerate fallback: single batch
    if (batches >= 2) {
        std::vector<double> vals(batches);
        for (std::size_t b = 0; b < batches; ++b)
            vals[b] = bartlett(series.subspan(b * batch_len, batch_len)).first;
        double mean = 0.0;
        for (double v : vals) mean += v;
        mean /= static_cast<double>(batches);
        double ss = 0.0;
        for (double v : vals) ss += (v - mean) * (v - mean);
        stochastic =
            std::sqrt(ss / (static_cast<double>(batches) * (static_cast<double>(batches) - 1.0)));
    }
    // the truncation-bias bound keeps the reported error honest when the
    // taper removes a real part of the covariance sum
    out.std_error = stochastic + std::abs(full_gap);
    return out;
}

ScalingFit scaling_fit(std::span<const ScalingPoint> points, bool with_log) {
    if (points.size() < 3) throw ConfigError("scaling_fit: need at least 3 points");
    double n_min = points[0].n, n_max = points[0].n;
    for (const auto& pt : points) {
        if (!(pt.n > 1.0 && pt.estimate > 0.0))
            throw ConfigError("scaling_fit: points must have n > 1 and positive estimates");
        n_min = std::min(n_min, pt.n);
        n_max = std::max(n_max, pt.n);
    }
    if (!(n_max / n_min >= 4.0))
        throw ConfigError("scaling_fit: n values must span at least two octaves");

    bool weighted = true;
    for (const auto& pt : points)
        if (!(pt.std_error > 0.0)) weighted = false;

    const std::size_t k = with_log ? 3 : 2;
    const std::size_t m = points.size();
    if (m < k + 1 && m < 3) throw ConfigError("scaling_fit: underdetermined");
    // normal equations for y = c0 + c1 log n (+ c2 log log n)
    double xtx[3][3] = {{0}}, xty[3] = {0};
    std::vector<double> ws(m), ys(m);
    std::vector<std::array<double, 3>> rows(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double ln = std::log(points[i].n);
        const double lln = std::log(ln);
        ys[i] = std::log(points[i].estimate);
        // delta method: se(log y) = se(y) / y
        ws[i] = weighted ? 1.0 / std::pow(points[i].std_error / points[i].estimate, 2) : 1.0;
        rows[i] = {1.0, ln, lln};
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t c = 0; c < k; ++c) xtx[r][c] += ws[i] * rows[i][r] * rows[i][c];
            xty[r] += ws[i] * rows[i][r] * ys[i];
        }
    }
    // (X'WX)^-1 by Gauss-Jordan with partial pivoting
    double inv[3][3] = {{0}};
    double work[3][6];
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) work[r][c] = xtx[r][c];
        for (std::size_t c = 0; c < k; ++c) work[r][k + c] = (r == c) ? 1.0 : 0.0;
    }
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(work[r][col]) > std::abs(work[piv][col])) piv = r;
        if (std::abs(work[piv][col]) < 1e-12)
            throw ConfigError("scaling_fit: degenerate design matrix");
        if (piv != col)
            for (std::size_t c = 0; c < 2 * k; ++c) std::swap(work[piv][c], work[col][c]);
        const double d = work[col][col];
        for (std::size_t c = 0; c < 2 * k; ++c) work[col][c] /= d;
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            const double f = work[r][col];
            for (std::size_t c = 0; c < 2 * k; ++c) work[r][c] -= f * work[col][c];
        }
    }
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) inv[r][c] = work[r][k + c];

    double coef[3] = {0, 0, 0};
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) coef[r] += inv[r][c] * xty[c];

    // residual variance (guards the weighted covariance for over/under
    // stated point errors; exact data keeps a zero slope error)
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double fit = 0.0;
        for (std::size_t c = 0; c < k; ++c) fit += coef[c] * rows[i][c];
        rss += ws[i] * (ys[i] - fit) * (ys[i] - fit);
    }
    const double dof = static_cast<double>(m) - static_cast<double>(k);
    const double sigma2 = dof > 0.0 ? rss / dof : 0.0;

    ScalingFit out;
    out.exponent = coef[1];
    out.std_error = std::sqrt(std::max(0.0, sigma2 * inv[1][1]));
    if (with_log) out.log_coefficient = coef[2];
    return out;
}

double ks_normal(std::span<const double> samples, double sigma) {
    if (!(sigma > 0.0)) throw DomainError("ks_normal: sigma must be positive");
    if (samples.size() < 100) throw DomainError("ks_normal: need at least 100 samples");
    std::vector<double> xs(samples.begin(), samples.end());
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double cdf = 0.5 * std::erfc(-xs[i] / (sigma * std::sqrt(2.0)));
        d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - cdf));
    }
    return d;
}

MeanWithError jackknife_mean(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw DomainError("jackknife_mean: need at least 2 values");
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(n);
    // leave-one-out means T_(i) = (sum - x_i) / (n-1)
    double ss = 0.0;
    const double nm1 = static_cast<double>(n) - 1.0;
    for (double v : values) {
        const double ti = (sum - v) / nm1;
        ss += (ti - mean) * (ti - mean);
    }
    MeanWithError out;
    out.mean = mean;
    out.std_error = std::sqrt(nm1 / static_cast<double>(n) * ss);
    return out;
}

double percentile(std::vector<double> values, double q) {
    if (values.empty()) throw DomainError("percentile: empty input");
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("percentile: q outside [0,1]");
    std::sort(values.begin(), values.end());
    const auto rank = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(values.size())));
    return values[rank == 0 ? 0 : rank - 1];
}

} // namespace adseq
