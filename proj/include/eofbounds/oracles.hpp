#pragma once

// Independent ground truth for the envelope and bound machinery.

#include <cstddef>
#include <vector>

#include "eofbounds/envelopes.hpp"
#include "eofbounds/matops.hpp"
#include "eofbounds/rng.hpp"

namespace eofb::oracle {

/// S(rho_A) of a pure state, in nats.
double pure_eof(const StateVector& psi);

/// Exact two-qubit EOF (nats) from the concurrence.
double wootters_concurrence(const BipartiteState& state);
double wootters_2qubit(const BipartiteState& state);

enum class Extremize { min, max };

struct BruteforceOptions {
    std::size_t samples = 20000;
    std::size_t refine_iters = 200;
    RandomSeed seed{0};
};

/// Extremal Shannon entropy over { mu in simplex : 1 - sum mu^2 = lambda }:
/// all two-level critical points (both roots), projected random samples, and
/// local moves that keep both constraints.
double entropy_extremum_bruteforce(int m, double lambda, Extremize mode, const BruteforceOptions& opts = {});

struct ConvexRoofOptions {
    std::size_t ensemble_size = 0; // 0 means m*n
    std::size_t restarts = 4;
    std::size_t iters = 100;
    RandomSeed seed{0};
};

/// Smallest average entanglement found over ensembles of `ensemble_size` pure
/// states realizing rho. Any ensemble gives an upper bound on the EOF.
double convex_roof_upper(const BipartiteState& state, const ConvexRoofOptions& opts = {});

enum class StateKind { haar_pure, mixed_rank_r };

BipartiteState random_state(BipartiteDims dims, StateKind kind, std::size_t r, RandomSeed seed,
                            std::uint64_t stream = 0);
StateVector random_pure_vector(BipartiteDims dims, RandomSeed seed, std::uint64_t stream = 0);
/// Uniform on the simplex restricted to a random support size.
ProbVector random_prob_vector(int m, CounterRng& rng);

inline constexpr double kVerifySlack = 1e-7;

struct WitnessResult {
    std::vector<double> mu;
    double lambda = 0.0;
    double entropy = 0.0;
    double epsilon = 0.0;
    double eta = 0.0;
    double lower_gap = 0.0; // epsilon - entropy, positive when the lower curve is violated
    double upper_gap = 0.0; // entropy - eta
    bool lower_violation = false;
    bool upper_violation = false;
};

WitnessResult evaluate_witness(const EnvelopeSet& envelopes, const ProbVector& mu);

struct VerificationReport {
    std::size_t samples = 0;
    std::size_t violations_lower = 0;
    std::size_t violations_upper = 0;
    double worst_gap = 0.0; // largest lower_gap or upper_gap seen
    std::vector<WitnessResult> witnesses; // supplied witnesses, then violating samples
};

inline constexpr std::size_t kMaxReportedViolations = 32;

VerificationReport verify_envelopes(const EnvelopeSet& envelopes, std::size_t samples, RandomSeed seed,
                                    const std::vector<ProbVector>& extra_witnesses = {});

} // namespace eofb::oracle
