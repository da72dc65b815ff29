#pragma once

#include <cmath>
#include <cstdint>

namespace adseq {

// Counter-based generator (Philox 4x32-10, Salmon et al. SC 2011).
// A stream is addressed by (seed, replica, purpose); advancing it only
// increments a 64-bit block counter, so any number of streams can be
// drawn from in parallel and the output never depends on scheduling.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint32_t replica, std::uint32_t purpose)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          replica_(replica), purpose_(purpose) {}

    std::uint64_t next_u64() {
        if (have_ >= 2) {
            have_ = 0;
            ++block_;
        }
        if (have_ == 0) fill_block();
        const int i = 2 * have_++;
        return (static_cast<std::uint64_t>(out_[i + 1]) << 32) | out_[i];
    }

    // Uniform on the open interval (0,1); never returns 0 or 1.
    double uniform01() {
        const std::uint64_t x = next_u64();
        return (static_cast<double>(x >> 11) + 0.5) * 0x1p-53;
    }

    // Standard normal via Box-Muller (no rejection, fixed draw count).
    double normal() {
        if (have_normal_) {
            have_normal_ = false;
            return cached_normal_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 6.283185307179586476925286766559 * u2;
        cached_normal_ = r * std::sin(th);
        have_normal_ = true;
        return r * std::cos(th);
    }

private:
    static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
        const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
        lo = static_cast<std::uint32_t>(p);
        hi = static_cast<std::uint32_t>(p >> 32);
    }

    void fill_block() {
        std::uint32_t c0 = static_cast<std::uint32_t>(block_);
        std::uint32_t c1 = static_cast<std::uint32_t>(block_ >> 32);
        std::uint32_t c2 = replica_;
        std::uint32_t c3 = purpose_;
        std::uint32_t k0 = key0_, k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            std::uint32_t lo0, hi0, lo1, hi1;
            mulhilo(0xD2511F53u, c0, lo0, hi0);
            mulhilo(0xCD9E8D57u, c2, lo1, hi1);
            const std::uint32_t n0 = hi1 ^ c1 ^ k0;
            const std::uint32_t n1 = lo1;
            const std::uint32_t n2 = hi0 ^ c3 ^ k1;
            const std::uint32_t n3 = lo0;
            c0 = n0; c1 = n1; c2 = n2; c3 = n3;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        out_[0] = c0; out_[1] = c1; out_[2] = c2; out_[3] = c3;
    }

    std::uint32_t key0_, key1_;
    std::uint32_t replica_, purpose_;
    std::uint64_t block_ = 0;
    std::uint32_t out_[4] = {0, 0, 0, 0};
    int have_ = 0;           // u64 pairs consumed from the current block; 0 means "fill"
    bool have_normal_ = false;
    double cached_normal_ = 0.0;
};

// Stream purposes. Composed as (tag << 16) | sub_index so that, for
// example, each n-grid slot of an experiment gets its own substream.
namespace purpose {
inline constexpr std::uint32_t orbit(std::uint32_t sub = 0)  { return (1u << 16) | sub; }
inline constexpr std::uint32_t center(std::uint32_t sub = 0) { return (2u << 16) | sub; }
inline constexpr std::uint32_t mdep(std::uint32_t sub = 0)   { return (3u << 16) | sub; }
inline constexpr std::uint32_t sigma(std::uint32_t sub = 0)  { return (4u << 16) | sub; }
} // namespace purpose

} // namespace adseq
