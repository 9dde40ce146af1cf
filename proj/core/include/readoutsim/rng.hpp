#pragma once

#include <cstdint>
#include <utility>

namespace readout {

// Small counter-style pseudo-random generator (splitmix64). Each Monte Carlo
// trial gets its own instance derived from (seed, domain, index), so results
// never depend on how trials are scheduled across threads. The normal
// variates are generated in-library (polar method) instead of through
// std::normal_distribution, whose output is implementation-defined; this
// keeps ensembles byte-identical across platforms and standard libraries.
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t state) : state_(state) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~static_cast<result_type>(0); }
    result_type operator()() { return next_u64(); }

    std::uint64_t next_u64();

    // Uniform double in [0, 1), 53 random bits.
    double next_unit();

    // Two independent standard normal variates (Marsaglia polar method).
    std::pair<double, double> next_normal_pair();

private:
    std::uint64_t state_;
};

// Stateless 64-bit bit mixer (the splitmix64 finalizer). Bijective, so
// distinct inputs never collide.
std::uint64_t mix_bits(std::uint64_t x);

// Seed for an indexed sub-task (for example one sweep row) of a run seeded
// with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Independent stream for one Monte Carlo trial: (seed, domain, index) fix
// the stream completely. `domain` separates different uses of the same seed
// (for example qubit state 0 versus state 1).
RandomStream derive_stream(std::uint64_t seed, std::uint64_t domain,
                           std::uint64_t index);

}  // namespace readout
