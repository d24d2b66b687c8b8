#pragma once

#include <cmath>
#include <cstdint>
#include <array>
#include <numbers>

namespace invar {

/// Counter-based random stream (Philox4x32, 10 rounds).
///
/// Every stream is addressed by (key, stream id). The key is the master
/// seed; the stream id identifies the work item (grid node, sample path).
/// Draws within a stream consume a 64-bit block counter, so any stream can
/// be regenerated in isolation: results do not depend on worker count or
/// scheduling order.
class PhiloxRng {
public:
    PhiloxRng(std::uint64_t key, std::uint64_t stream)
        : key_lo_(static_cast<std::uint32_t>(key)),
          key_hi_(static_cast<std::uint32_t>(key >> 32)),
          stream_lo_(static_cast<std::uint32_t>(stream)),
          stream_hi_(static_cast<std::uint32_t>(stream >> 32)) {}

    /// Stream id helper for per-path substreams keyed by (node, path).
    static std::uint64_t stream_id(std::uint32_t node, std::uint32_t path) {
        return (static_cast<std::uint64_t>(node) << 32) | path;
    }

    /// One 128-bit Philox block for the given block index.
    static std::array<std::uint32_t, 4> block(std::uint32_t c0, std::uint32_t c1,
                                              std::uint32_t c2, std::uint32_t c3,
                                              std::uint32_t k0, std::uint32_t k1) {
        std::uint32_t x0 = c0, x1 = c1, x2 = c2, x3 = c3;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * x0;
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * x2;
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            x0 = hi1 ^ x1 ^ k0;
            x1 = lo1;
            x2 = hi0 ^ x3 ^ k1;
            x3 = lo0;
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        return {x0, x1, x2, x3};
    }

    std::uint64_t next_u64() {
        if (have_spare_u64_) {
            have_spare_u64_ = false;
            return spare_u64_;
        }
        const auto out = block(stream_lo_, stream_hi_,
                               static_cast<std::uint32_t>(counter_),
                               static_cast<std::uint32_t>(counter_ >> 32),
                               key_lo_, key_hi_);
        ++counter_;
        spare_u64_ = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
        have_spare_u64_ = true;
        return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
    }

    /// Uniform double in the open interval (0, 1), 53 usable bits.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal draw (Box-Muller on two uniforms, pair cached).
    double next_normal() {
        if (have_spare_normal_) {
            have_spare_normal_ = false;
            return spare_normal_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_normal_ = radius * std::sin(angle);
        have_spare_normal_ = true;
        return radius * std::cos(angle);
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    std::uint32_t key_lo_, key_hi_;
    std::uint32_t stream_lo_, stream_hi_;
    std::uint64_t counter_ = 0;
    std::uint64_t spare_u64_ = 0;
    bool have_spare_u64_ = false;
    double spare_normal_ = 0.0;
    bool have_spare_normal_ = false;
};

}  // namespace invar
