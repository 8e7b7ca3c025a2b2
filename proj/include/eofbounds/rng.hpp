#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace eofb {

struct RandomSeed {
    std::uint64_t value = 0;
};

/// Random stream keyed by (seed, stream index). Streams for different task
/// indices are independent of the order in which tasks run, so parallel or
/// partial execution reproduces the same numbers per task.
///
/// Built on std::mt19937_64 (fully specified by the standard) with in-house
/// uniform/normal transforms, so outputs are bitwise identical across
/// standard library implementations.
class CounterRng {
public:
    CounterRng(RandomSeed seed, std::uint64_t stream);

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal (Box-Muller).
    double normal();
    /// Real and imaginary parts i.i.d. standard normal.
    std::complex<double> complex_normal();
    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

} // namespace eofb
