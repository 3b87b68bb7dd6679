#ifndef IAFEAS_RNG_HPP
#define IAFEAS_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace iafeas {

/// Seed for every randomized operation in the library. The same seed fed to
/// the same call sequence reproduces bit-identical results.
struct RandomSeed {
    std::uint64_t value = 0x1a5eed00u;
};

/// Derives an independent child seed from a parent seed and a salt.
/// Used to give trials, repetitions and per-edge solves their own streams so
/// that parallel and sequential execution produce identical output.
RandomSeed derive_seed(RandomSeed parent, std::uint64_t salt);

/// Deterministic random source: a seeded mt19937_64 with a hand-rolled
/// Box-Muller transform on top. Standard-library distributions are avoided
/// because their output is implementation-defined.
class Rng {
public:
    explicit Rng(RandomSeed seed) : engine_(seed.value) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in (0, 1]; never returns 0 so log() is safe.
    double uniform01() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; generates pairs and caches the spare.
    double normal();

    /// Complex with independent standard-normal real and imaginary parts.
    std::complex<double> complex_normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace iafeas

#endif
