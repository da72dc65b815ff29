#include "core/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <thread>

#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/threads.hpp"

namespace adseq {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TailFunction TailFunction::power_law(double exponent, double scale, double threshold) {
    TailFunction h;
    h.kind = Kind::PowerLaw;
    h.exponent = exponent;
    h.scale = scale;
    h.threshold = threshold;
    h.validate();
    return h;
}

TailFunction TailFunction::bounded(double m) {
    TailFunction h;
    h.kind = Kind::Bounded;
    h.bound = m;
    h.validate();
    return h;
}

TailFunction TailFunction::tabulated(std::vector<std::pair<double, double>> table) {
    TailFunction h;
    h.kind = Kind::Tabulated;
    h.table = std::move(table);
    h.validate();
    return h;
}

void TailFunction::validate() const {
    switch (kind) {
        case Kind::PowerLaw:
            if (!(exponent > 0.0)) throw ConfigError("tail: exponent must be positive");
            if (!(scale > 0.0)) throw ConfigError("tail: scale must be positive");
            if (threshold < 0.0) throw ConfigError("tail: threshold must be >= 0");
            break;
        case Kind::Bounded:
            if (!(bound > 0.0)) throw ConfigError("tail: bound must be positive");
            break;
        case Kind::Tabulated: {
            if (table.empty()) throw ConfigError("tail: empty table");
            double prev_t = -1.0, prev_h = 1.0 + 1e-12;
            for (const auto& [t, h] : table) {
                if (t < 0.0) throw ConfigError("tail: t must be >= 0");
                if (!(h >= 0.0 && h <= 1.0)) throw ConfigError("tail: values must lie in [0,1]");
                if (t <= prev_t) throw ConfigError("tail: t grid must be strictly increasing");
                if (h > prev_h) throw ConfigError("tail: values must be non-increasing");
                prev_t = t;
                prev_h = h;
            }
            if (table.back().second != 0.0)
                throw ConfigError("tail: table must reach 0 (tail converges to zero)");
            break;
        }
    }
}

double TailFunction::eval(double t) const {
    if (t < 0.0) throw DomainError("tail: t must be >= 0");
    switch (kind) {
        case Kind::PowerLaw: {
            // right-continuous: the power formula applies from the
            // threshold onward
            if (t < threshold || t == 0.0) return 1.0;
            const double v = scale * std::pow(t, -exponent);
            return v < 1.0 ? v : 1.0;
        }
        case Kind::Bounded:
            return t < bound ? 1.0 : 0.0;
        case Kind::Tabulated: {
            // right-continuous step: value of the last grid point <= t
            if (t < table.front().first) return 1.0;
            std::size_t lo = 0, hi = table.size() - 1;
            while (lo < hi) {
                const std::size_t mid = (lo + hi + 1) / 2;
                if (table[mid].first <= t) lo = mid; else hi = mid - 1;
            }
            return table[lo].second;
        }
    }
    return 0.0;
}

double quantile_from_tail(const TailFunction& h, double u) {
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("quantile: u outside [0,1]");
    switch (h.kind) {
        case TailFunction::Kind::PowerLaw: {
            if (u >= 1.0) return 0.0;
            if (u == 0.0) return kInf;
            // H(t) = min(1, scale t^-e) <= u  iff  t >= (scale/u)^(1/e)
            double t = std::pow(h.scale / u, 1.0 / h.exponent);
            if (t < h.threshold) t = h.threshold; // H == 1 below the threshold
            // tie refinement against eval, as for the alpha inverse
            while (t > 0.0 && h.eval(std::nextafter(t, 0.0)) <= u) t = std::nextafter(t, 0.0);
            while (h.eval(t) > u) t = std::nextafter(t, kInf);
            return t;
        }
        case TailFunction::Kind::Bounded:
            return u >= 1.0 ? 0.0 : h.bound;
        case TailFunction::Kind::Tabulated: {
            if (u >= 1.0) return 0.0;
            // smallest grid t with H(t) <= u (H steps only at grid points)
            for (const auto& [t, hv] : h.table)
                if (hv <= u) return t;
            return kInf;
        }
    }
    return 0.0;
}

QuantileModel QuantileModel::power_law(double scale, double b, std::optional<double> eps_q) {
    QuantileModel q;
    q.kind = Kind::PowerLaw;
    q.scale = scale;
    q.b = b;
    q.eps_q = eps_q;
    q.validate();
    return q;
}

QuantileModel QuantileModel::tabulated(std::vector<std::pair<double, double>> table) {
    QuantileModel q;
    q.kind = Kind::Tabulated;
    q.table = std::move(table);
    q.validate();
    return q;
}

void QuantileModel::validate() const {
    if (kind == Kind::PowerLaw) {
        if (!(scale >= 0.0)) throw ConfigError("quantile: scale must be >= 0");
        if (!(b >= 0.0 && b < 1.0)) throw ConfigError("quantile: b must lie in [0,1)");
        if (eps_q && !(*eps_q > 0.0)) throw ConfigError("quantile: eps exponent must be positive");
        if (eps_q && b == 0.0)
            throw ConfigError("quantile: vanishing factor needs b > 0 to stay non-increasing");
        return;
    }
    if (table.empty()) throw ConfigError("quantile: empty table");
    double prev_u = -1.0, prev_q = kInf;
    for (const auto& [u, q] : table) {
        if (!(u > 0.0 && u <= 1.0)) throw ConfigError("quantile: u grid must lie in (0,1]");
        if (!(q >= 0.0)) throw ConfigError("quantile: values must be >= 0");
        if (u <= prev_u) throw ConfigError("quantile: u grid must be strictly increasing");
        if (q > prev_q) throw ConfigError("quantile: values must be non-increasing");
        prev_u = u;
        prev_q = q;
    }
}

double QuantileModel::eval(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("quantile: u outside [0,1]");
    if (kind == Kind::Tabulated) {
        // left-continuous step: Q constant on (u_{i-1}, u_i]
        for (const auto& [ug, q] : table)
            if (u <= ug) return q;
        return table.back().second;
    }
    double ue = u;
    if (eps_q) {
        // The raw product u^(-b) log(e/u)^(-q) turns increasing on
        // (e^(1-q/b), 1); freeze it at its minimum to keep the model a
        // quantile function.
        if (b > 0.0) {
            const double ustar = std::exp(1.0 - *eps_q / b);
            if (ustar < 1.0 && ue > ustar) ue = ustar;
        }
    }
    if (ue == 0.0) return b > 0.0 ? kInf : (eps_q ? 0.0 : scale);
    double v = b == 0.0 ? scale : scale * std::pow(ue, -b);
    if (eps_q) {
        const double lg = std::log(std::exp(1.0) / ue);
        const double eps = std::min(1.0, std::pow(lg, -*eps_q));
        v *= eps;
    }
    return v;
}

double QuantileModel::eval_regular(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("quantile: u outside [0,1]");
    if (kind == Kind::Tabulated) return eval(u) * std::pow(u, b);
    if (!eps_q) return scale;
    if (b > 0.0) {
        const double ustar = std::exp(1.0 - *eps_q / b);
        if (ustar < 1.0 && u > ustar) return eval(u) * std::pow(u, b); // frozen zone, u away from 0
    }
    if (u == 0.0) return 0.0; // vanishing factor wins in the limit
    const double lg = std::log(std::exp(1.0) / u);
    return scale * std::min(1.0, std::pow(lg, -*eps_q));
}

Observable Observable::neutral_singularity(double s) {
    Observable f;
    f.kind = Kind::NeutralSingularity;
    f.s = s;
    f.validate();
    return f;
}

Observable Observable::boundary_singularity(double s) {
    Observable f;
    f.kind = Kind::BoundarySingularity;
    f.s = s;
    f.validate();
    return f;
}

Observable Observable::indicator(double lo, double hi) {
    Observable f;
    f.kind = Kind::Indicator;
    f.lo = lo;
    f.hi = hi;
    f.validate();
    return f;
}

Observable Observable::bv(double m1, double m2) {
    Observable f;
    f.kind = Kind::BV;
    f.m1 = m1;
    f.m2 = m2;
    f.validate();
    return f;
}

Observable Observable::piecewise_monotone(std::vector<PiecewiseBranch> branches,
                                          TailFunction tail) {
    Observable f;
    f.kind = Kind::PiecewiseMonotone;
    f.branches = std::move(branches);
    f.tail = std::move(tail);
    f.validate();
    return f;
}

void Observable::validate() const {
    switch (kind) {
        case Kind::NeutralSingularity:
        case Kind::BoundarySingularity:
            if (!(s >= 0.0 && s < 1.0))
                throw ConfigError("observable: singularity exponent must lie in [0,1)");
            break;
        case Kind::Indicator:
            if (!(lo <= hi && lo >= 0.0 && hi <= 1.0))
                throw ConfigError("observable: indicator interval must sit inside [0,1]");
            break;
        case Kind::BV:
            if (!(m1 > 0.0) || m2 < 0.0)
                throw ConfigError("observable: BV needs m1 > 0 and m2 >= 0");
            break;
        case Kind::PiecewiseMonotone: {
            if (branches.empty()) throw ConfigError("observable: no branches");
            tail.validate();
            double prev_hi = 0.0;
            for (const auto& br : branches) {
                if (!(br.lo >= prev_hi && br.hi > br.lo && br.hi <= 1.0))
                    throw ConfigError("observable: branches must be disjoint, increasing, in [0,1]");
                if ((br.kind == PiecewiseBranch::Kind::PoleLeft ||
                     br.kind == PiecewiseBranch::Kind::PoleRight) &&
                    !(br.s > 0.0 && br.s < 1.0))
                    throw ConfigError("observable: pole exponent must lie in (0,1)");
                prev_hi = br.hi;
            }
            break;
        }
    }
    if (center && !(center->second >= 0.0))
        throw ConfigError("observable: center stderr must be >= 0");
}

double Observable::eval(double x) const {
    switch (kind) {
        case Kind::NeutralSingularity:
            if (x <= 0.0) throw DomainError("observable: singularity at 0 hit");
            if (x > 1.0) throw DomainError("observable: x outside (0,1]");
            if (s == 0.0) return 1.0;
            if (s == 0.25) return 1.0 / std::sqrt(std::sqrt(x));
            if (s == 0.5) return 1.0 / std::sqrt(x);
            return std::pow(x, -s);
        case Kind::BoundarySingularity:
            if (x >= 1.0) throw DomainError("observable: singularity at 1 hit");
            if (x < 0.0) throw DomainError("observable: x outside [0,1)");
            if (s == 0.0) return 1.0;
            return std::pow(1.0 - x, -s);
        case Kind::Indicator:
            return (x >= lo && x <= hi) ? 1.0 : 0.0;
        case Kind::BV: {
            // canonical representative: amplitude m1, total variation <= m2
            const double cycles = std::floor(m2 / (4.0 * m1));
            if (cycles < 1.0) return m1;
            return m1 * std::cos(6.283185307179586 * cycles * x);
        }
        case Kind::PiecewiseMonotone: {
            for (const auto& br : branches) {
                if (x <= br.lo || x >= br.hi) continue;
                switch (br.kind) {
                    case PiecewiseBranch::Kind::Constant: return br.a;
                    case PiecewiseBranch::Kind::Affine: return br.a + br.b * x;
                    case PiecewiseBranch::Kind::PoleLeft: return br.a * std::pow(x - br.lo, -br.s);
                    case PiecewiseBranch::Kind::PoleRight: return br.a * std::pow(br.hi - x, -br.s);
                }
            }
            return 0.0;
        }
    }
    return 0.0;
}

std::string Observable::label() const {
    switch (kind) {
        case Kind::NeutralSingularity: return "neutral_singularity";
        case Kind::BoundarySingularity: return "boundary_singularity";
        case Kind::Indicator: return "indicator";
        case Kind::BV: return "bv";
        case Kind::PiecewiseMonotone: return "piecewise_monotone";
    }
    return "?";
}

QuantileModel quantile_params(const Observable& f, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("quantile_params: gamma outside (0,1)");
    switch (f.kind) {
        case Observable::Kind::NeutralSingularity: {
            // f blows up like x^-s at the neutral fixed point where the
            // invariant density itself is of order x^-gamma.
            if (!(f.s < 1.0 - gamma))
                throw DomainError("quantile_params: s must be < 1 - gamma for a neutral pole");
            return QuantileModel::power_law(1.0, f.s / (1.0 - gamma));
        }
        case Observable::Kind::BoundarySingularity:
            return QuantileModel::power_law(1.0, f.s);
        case Observable::Kind::Indicator:
            return QuantileModel::power_law(1.0, 0.0);
        case Observable::Kind::BV:
            return QuantileModel::power_law(f.m1 + 2.0 * f.m2, 0.0);
        case Observable::Kind::PiecewiseMonotone: {
            // with H(t) a bound on mu(|f| > t) and N branches, the class
            // quantile is N * H^{-1}
            const double n = static_cast<double>(f.branches.size());
            switch (f.tail.kind) {
                case TailFunction::Kind::PowerLaw:
                    return QuantileModel::power_law(
                        n * std::pow(f.tail.scale, 1.0 / f.tail.exponent), 1.0 / f.tail.exponent);
                case TailFunction::Kind::Bounded:
                    return QuantileModel::power_law(n * f.tail.bound, 0.0);
                case TailFunction::Kind::Tabulated: {
                    std::vector<std::pair<double, double>> table;
                    // probe the generalized inverse at the tabulated H levels
                    std::vector<double> levels;
                    for (const auto& [t, hv] : f.tail.table) {
                        (void)t;
                        if (hv > 0.0) levels.push_back(hv);
                    }
                    levels.push_back(1.0);
                    std::sort(levels.begin(), levels.end());
                    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
                    for (double u : levels)
                        table.emplace_back(u, n * quantile_from_tail(f.tail, u));
                    return QuantileModel::tabulated(std::move(table));
                }
            }
            break;
        }
    }
    throw ConfigError("quantile_params: unsupported observable");
}

double fit_quantile_scale(const Observable& f, const std::vector<double>& orbit, double b) {
    if (orbit.empty()) throw DomainError("fit_quantile_scale: empty orbit");
    std::vector<double> mags(orbit.size());
    for (std::size_t i = 0; i < orbit.size(); ++i) mags[i] = std::abs(f.eval(orbit[i]));
    std::sort(mags.begin(), mags.end());
    double k = 0.0;
    // empirical quantile at u ~ (orbit.size()-rank)/size, probed on a log grid
    for (double u = 0.5; u * static_cast<double>(orbit.size()) >= 16.0; u *= 0.5) {
        const auto idx = static_cast<std::size_t>(
            std::ceil((1.0 - u) * static_cast<double>(mags.size()))) - 1;
        const double q_emp = mags[std::min(idx, mags.size() - 1)];
        k = std::max(k, q_emp * std::pow(u, b));
    }
    return k;
}

CenterEstimate estimate_center(const Observable& f, const MapSpec& spec,
                               std::uint64_t budget, std::uint64_t seed) {
    if (budget < 100000) throw ConfigError("estimate_center: budget must be >= 1e5");
    constexpr std::uint32_t kBatches = 64;
    const std::uint64_t batch_len = budget / kBatches;
    std::vector<double> means(kBatches, 0.0);

    // independent burned-in batches on their own substreams; the batch
    // slots fix the combination order no matter how the work is split
    const auto run_batch = [&](std::uint32_t bidx, std::vector<double>& buf) {
        OrbitConfig cfg;
        cfg.seed = seed;
        cfg.replica_index = bidx;
        cfg.burn_in = 10000;
        cfg.length = batch_len;
        CounterRng rng(seed, bidx, purpose::center());
        cfg.initial_point = rng.uniform01();
        generate_orbit_into(cfg, spec, buf.data());
        double acc = 0.0;
        for (double v : buf) acc += f.eval(v);
        means[bidx] = acc / static_cast<double>(batch_len);
    };
    const std::uint32_t threads = std::min<std::uint32_t>(resolve_threads(0), kBatches);
    if (threads <= 1) {
        std::vector<double> buf(batch_len);
        for (std::uint32_t bidx = 0; bidx < kBatches; ++bidx) run_batch(bidx, buf);
    } else {
        std::vector<std::thread> pool;
        const std::uint32_t chunk = (kBatches + threads - 1) / threads;
        for (std::uint32_t w = 0; w < threads; ++w) {
            const std::uint32_t lo = std::min(w * chunk, kBatches);
            const std::uint32_t hi = std::min(lo + chunk, kBatches);
            if (lo < hi)
                pool.emplace_back([&run_batch, lo, hi, batch_len] {
                    std::vector<double> buf(batch_len);
                    for (std::uint32_t bidx = lo; bidx < hi; ++bidx) run_batch(bidx, buf);
                });
        }
        for (auto& th : pool) th.join();
    }

    double mean = 0.0;
    for (double m : means) mean += m;
    mean /= kBatches;
    double ss = 0.0;
    for (double m : means) ss += (m - mean) * (m - mean);
    const double se = std::sqrt(ss / (kBatches * (kBatches - 1.0)));
    return CenterEstimate{mean, se};
}

} // namespace adseq
