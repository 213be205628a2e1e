#ifndef ROADGRAPH_RNG_HPP
#define ROADGRAPH_RNG_HPP

#include <cstdint>

namespace roadgraph {

/// Deterministic 64-bit PRNG (Marsaglia xorshift64*).
///
/// State update per draw:
///   s ^= s >> 12;  s ^= s << 25;  s ^= s >> 27;
///   output = s * 0x2545F4914F6CDD1D
///
/// The seed is first mixed through one splitmix64 step so that small or
/// zero seeds still give well-spread states (the xorshift state must be
/// nonzero).
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed) {
        std::uint64_t z = seed + 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        state_ = z ^ (z >> 31);
        if (state_ == 0) state_ = 0x9E3779B97F4A7C15ull;
    }

    std::uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1Dull;
    }

    /// Unbiased draw in [0, bound) via rejection sampling.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
        std::uint64_t r = next();
        while (r > limit) r = next();
        return r % bound;
    }

    /// Uniform double in [0, 1) using the top 53 bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double next_double(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

private:
    std::uint64_t state_;
};

} // namespace roadgraph

#endif
