#include "readoutsim/rng.hpp"

#include <cmath>

namespace readout {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

}  // namespace

std::uint64_t mix_bits(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

std::uint64_t RandomStream::next_u64() {
    state_ += kGolden;
    return mix_bits(state_);
}

double RandomStream::next_unit() {
    // Top 53 bits scaled by 2^-53: the largest result is (2^53 - 1) / 2^53.
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::pair<double, double> RandomStream::next_normal_pair() {
    for (;;) {
        const double u = 2.0 * next_unit() - 1.0;
        const double v = 2.0 * next_unit() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            const double m = std::sqrt(-2.0 * std::log(s) / s);
            return {u * m, v * m};
        }
    }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t h = mix_bits(seed ^ 0x6a09e667f3bcc909ull);
    return mix_bits(h + kGolden * (index + 1));
}

RandomStream derive_stream(std::uint64_t seed, std::uint64_t domain,
                           std::uint64_t index) {
    std::uint64_t h = mix_bits(seed ^ 0x2545f4914f6cdd1dull);
    h = mix_bits(h + kGolden * (domain + 1));
    h = mix_bits(h + 0xd1b54a32d192ed03ull * (index + 1));
    return RandomStream(h);
}

}  // namespace readout
