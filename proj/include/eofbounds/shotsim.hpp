#pragma once

// Finite-shot swap-test estimation of the purities entering the bounds.

#include <cstddef>
#include <cstdint>

#include "eofbounds/bounds.hpp"
#include "eofbounds/rng.hpp"

namespace eofb {

struct ShotEstimate {
    double point = 0.0;
    double half_width = 0.0;
    std::size_t shots = 0;
    double confidence = 0.0;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x, double slack = 0.0) const { return x >= lo - slack && x <= hi + slack; }
};

/// Hoeffding half-width for the estimator 2f - 1 (range 2): sqrt(2 log(2/delta) / shots).
double hoeffding_half_width(std::size_t shots, double delta);

/// Swap test: `shots` Bernoulli draws with success probability (1 + purity)/2.
/// `stream` selects an independent substream of `seed`.
ShotEstimate simulate_purity_shots(double true_purity, std::size_t shots, RandomSeed seed,
                                   double confidence = 0.95, std::uint64_t stream = 0);

struct EstimatedBounds {
    ShotEstimate purity;   // Tr rho^2
    ShotEstimate purity_a; // Tr rho_A^2
    ShotEstimate purity_b; // Tr rho_B^2
    Interval lam_a, lam_b, lam_prime_a, lam_prime_b;
    Interval lower; // EOF lower bound, nats
    Interval upper; // EOF upper bound, nats
};

/// Interval version of a pair of envelope lookups; epsilon and eta are nondecreasing,
/// so interval endpoints map to bound endpoints.
void propagate(const EnvelopeSet& envelopes, EstimatedBounds& est);

/// Each observable gets `shots` draws at confidence 1 - delta/3 (union bound).
EstimatedBounds estimated_bounds(const BipartiteState& state, std::size_t shots, double confidence,
                                 const EnvelopeSet& envelopes, RandomSeed seed);

} // namespace eofb
