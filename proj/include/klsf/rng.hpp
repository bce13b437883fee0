#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>

namespace klsf {

// Seeded random stream. The engine is std::mt19937_64, whose output sequence
// is fixed by the standard; integer draws use our own rejection sampling
// because std distributions are implementation-defined. Results are therefore
// identical across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::below: empty range");
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

    template <typename T>
    const T& pick(std::span<const T> items) {
        return items[static_cast<std::size_t>(below(items.size()))];
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

}  // namespace klsf
