#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace salp {

/// Seeded random stream with a bit-exact draw sequence.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are implementation-defined, so the
/// conversions to reals and bounded integers are done here by hand.
class RngStream {
public:
    static constexpr std::string_view generator_name = "mt19937_64/u53";

    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1) with 53 bits of resolution; one engine call.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n) by rejection; n must be > 0.
    std::uint64_t uniform_index(std::uint64_t n) {
        // 2^64 mod n: draws below this are the biased remainder
        const std::uint64_t threshold = (0 - n) % n;
        std::uint64_t x = engine_();
        while (x < threshold) x = engine_();
        return x % n;
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace salp
