#include "core/coefficients.hpp"

#include <cmath>
#include <limits>

#include "core/errors.hpp"

namespace adseq {

AlphaModel AlphaModel::power_law(double scale, double gamma) {
    AlphaModel m;
    m.kind_ = Kind::PowerLaw;
    m.scale_ = scale;
    m.gamma_ = gamma;
    m.validate();
    return m;
}

AlphaModel AlphaModel::explicit_seq(std::vector<double> values, TailRule tail,
                                    double tail_scale, double tail_gamma) {
    AlphaModel m;
    m.kind_ = Kind::Explicit;
    m.values_ = std::move(values);
    m.tail_ = tail;
    m.tail_scale_ = tail_scale;
    m.tail_gamma_ = tail_gamma;
    m.validate();
    return m;
}

void AlphaModel::validate() const {
    if (kind_ == Kind::PowerLaw) {
        if (!(scale_ > 0.0)) throw ConfigError("alpha: scale must be positive");
        if (!(gamma_ > 0.0 && gamma_ < 1.0))
            throw ConfigError("alpha: gamma must lie in (0,1)");
        return;
    }
    if (values_.empty()) throw ConfigError("alpha: explicit sequence is empty");
    if (values_[0] != 0.5) throw ConfigError("alpha: alpha(0) must equal 1/2");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!(values_[i] >= 0.0 && values_[i] <= 0.5))
            throw ConfigError("alpha: values must lie in [0, 1/2]");
        if (i > 0 && values_[i] > values_[i - 1])
            throw ConfigError("alpha: sequence must be non-increasing");
    }
    if (tail_ == TailRule::PowerLaw) {
        if (!(tail_scale_ > 0.0)) throw ConfigError("alpha: tail scale must be positive");
        if (!(tail_gamma_ > 0.0 && tail_gamma_ < 1.0))
            throw ConfigError("alpha: tail gamma must lie in (0,1)");
    }
}

double AlphaModel::decay_exponent() const {
    if (kind_ != Kind::PowerLaw)
        throw DomainError("alpha: decay exponent defined for power-law models only");
    return (1.0 - gamma_) / gamma_;
}

double AlphaModel::value(std::uint64_t n) const {
    if (n == 0) return 0.5;
    if (kind_ == Kind::PowerLaw) {
        const double v = scale_ * std::pow(static_cast<double>(n), -(1.0 - gamma_) / gamma_);
        return v < 0.5 ? v : 0.5;
    }
    if (n < values_.size()) return values_[n];
    const double last = values_.back();
    if (tail_ == TailRule::Zero) return 0.0;
    const double v =
        tail_scale_ * std::pow(static_cast<double>(n), -(1.0 - tail_gamma_) / tail_gamma_);
    return v < last ? v : last;
}

std::uint64_t AlphaModel::inverse(double u, std::optional<std::uint64_t> cap) const {
    if (!(u > 0.0)) throw DomainError("alpha inverse: u must be positive");
    if (u >= 0.5) return 0;

    // The inverse exceeds the cap exactly when alpha(cap) > u; settle
    // that first so the closed-form seed never has to walk far.
    if (cap && value(*cap) > u) return *cap;

    // Closed-form seed, then verify against the evaluated sequence so
    // that ties at breakpoints resolve exactly as min{q : alpha(q) <= u}.
    const auto refine = [&](std::uint64_t q) {
        while (q > 0 && value(q - 1) <= u) --q;
        while (value(q) > u) {
            if (q == std::numeric_limits<std::uint64_t>::max()) break;
            ++q;
        }
        return q;
    };
    const auto seed_from_guess = [&](double guess, std::uint64_t floor_q) -> std::uint64_t {
        if (guess >= 9.0e18) {
            if (!cap) return std::numeric_limits<std::uint64_t>::max(); // saturate
            return refine(*cap);
        }
        std::uint64_t q = static_cast<std::uint64_t>(std::ceil(guess));
        if (q < floor_q) q = floor_q;
        if (cap && q > *cap) q = *cap;
        return refine(q);
    };

    if (kind_ == Kind::PowerLaw) {
        const double e = gamma_ / (1.0 - gamma_);
        return seed_from_guess(std::pow(scale_ / u, e), 1);
    }

    // Explicit prefix: binary search for the first value <= u.
    if (values_.back() <= u) {
        std::size_t lo = 0, hi = values_.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (values_[mid] <= u) hi = mid; else lo = mid + 1;
        }
        return lo; // within the prefix, so never above a feasible cap
    }
    if (tail_ == TailRule::Zero) {
        const std::uint64_t q = values_.size();
        return cap && q > *cap ? *cap : q;
    }
    const double e = tail_gamma_ / (1.0 - tail_gamma_);
    return seed_from_guess(std::pow(tail_scale_ / u, e), values_.size());
}

} // namespace adseq
