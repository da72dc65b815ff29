#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace adseq {

/// Non-increasing dependence-coefficient sequence alpha(n) with
/// alpha(0) = 1/2 and values in [0, 1/2].
///
/// PowerLaw: alpha(n) = min(1/2, C n^(-(1-gamma)/gamma)) for n >= 1.
/// Explicit: a stored non-increasing prefix plus a tail rule (zero, or a
/// power law capped by the last stored value).
class AlphaModel {
public:
    enum class TailRule { Zero, PowerLaw };

    static AlphaModel power_law(double scale, double gamma);
    static AlphaModel explicit_seq(std::vector<double> values, TailRule tail,
                                   double tail_scale = 0.0, double tail_gamma = 0.5);

    // alpha(n), clamped to [0, 1/2].
    double value(std::uint64_t n) const;

    // Generalized inverse: smallest q with alpha(q) <= u, optionally
    // capped. Rejects u <= 0 (the uncapped inverse may be infinite there).
    // Saturates at UINT64_MAX if the uncapped inverse exceeds it.
    std::uint64_t inverse(double u, std::optional<std::uint64_t> cap = std::nullopt) const;

    bool is_power_law() const { return kind_ == Kind::PowerLaw; }
    double power_law_gamma() const { return gamma_; }
    double power_law_scale() const { return scale_; }

    // Decay exponent (1-gamma)/gamma of a pure power-law model.
    double decay_exponent() const;

private:
    enum class Kind { PowerLaw, Explicit };
    void validate() const;

    Kind kind_ = Kind::PowerLaw;
    double scale_ = 1.0;
    double gamma_ = 0.5;
    std::vector<double> values_;
    TailRule tail_ = TailRule::Zero;
    double tail_scale_ = 0.0;
    double tail_gamma_ = 0.5;
};

} // namespace adseq
