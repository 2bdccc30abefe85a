#pragma once

#include "prorand/core.hpp"

#include <cstdint>

namespace prorand {

/// Deterministic seeded stream of uniform bits.
///
/// The generator is splitmix64: each word advances the state by the golden
/// gamma 0x9E3779B97F4A7C15 and outputs the mixed state. Bits of a word are
/// consumed most-significant first, and a request for k bits returns them as
/// a natural whose most significant bit is the first bit consumed. Golden
/// outputs in the tests depend on exactly this layout.
class BitSource {
public:
    explicit BitSource(std::uint64_t seed = 0) : seed_(seed), state_(seed) {}

    std::uint64_t seed() const { return seed_; }

    bool next_bit() {
        if (available_ == 0) {
            buffer_ = next_word();
            available_ = 64;
        }
        --available_;
        return ((buffer_ >> available_) & 1U) != 0;
    }

    Natural next_bits(std::uint64_t count) {
        Natural result = 0;
        while (count > 0) {
            if (available_ == 0) {
                buffer_ = next_word();
                available_ = 64;
            }
            std::uint64_t take = count < available_ ? count : available_;
            std::uint64_t chunk = (available_ == 64 && take == 64)
                                      ? buffer_
                                      : (buffer_ >> (available_ - take)) & ((std::uint64_t{1} << take) - 1);
            result <<= take;
            result |= chunk;
            available_ -= take;
            count -= take;
        }
        return result;
    }

    /// Uniform index in [0, bound) by rejection on ceil(log2 bound)-bit draws.
    Natural uniform_below(const Natural& bound, std::uint64_t max_retries = 4096) {
        require(bound >= 1, "uniform_below: bound must be >= 1");
        const std::uint64_t width = bits_for_range(bound);
        if (width == 0) return 0;
        for (std::uint64_t attempt = 0; attempt <= max_retries; ++attempt) {
            Natural candidate = next_bits(width);
            if (candidate < bound) return candidate;
        }
        throw BitSourceDefective("rejection sampling exceeded retry cap");
    }

    /// Uniform real in [0, 1) with 53 bits of resolution.
    double next_unit() {
        auto bits = next_bits(53).convert_to<std::uint64_t>();
        return static_cast<double>(bits) * 0x1.0p-53;
    }

private:
    std::uint64_t next_word() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t state_;
    std::uint64_t buffer_ = 0;
    std::uint64_t available_ = 0;
};

}  // namespace prorand
