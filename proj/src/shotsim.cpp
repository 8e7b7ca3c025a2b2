#include "eofbounds/shotsim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eofbounds/errors.hpp"

namespace eofb {

double hoeffding_half_width(std::size_t shots, double delta) {
    if (shots == 0) throw std::invalid_argument("hoeffding_half_width: shots must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("hoeffding_half_width: delta outside (0, 1)");
    return std::sqrt(2.0 * std::log(2.0 / delta) / static_cast<double>(shots));
}

ShotEstimate simulate_purity_shots(double true_purity, std::size_t shots, RandomSeed seed, double confidence,
                                   std::uint64_t stream) {
    if (shots == 0) throw std::invalid_argument("simulate_purity_shots: shots must be positive");
    if (!(true_purity >= -1e-12 && true_purity <= 1.0 + 1e-12))
        throw std::invalid_argument("simulate_purity_shots: purity outside [0, 1]");
    const double p = std::clamp(0.5 * (1.0 + true_purity), 0.0, 1.0);
    CounterRng rng(seed, stream);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < shots; ++s) hits += rng.uniform() < p;
    const double f = static_cast<double>(hits) / static_cast<double>(shots);
    return {2.0 * f - 1.0, hoeffding_half_width(shots, 1.0 - confidence), shots, confidence};
}

namespace {

Interval purity_interval(const ShotEstimate& e) {
    return {std::clamp(e.point - e.half_width, 0.0, 1.0), std::clamp(e.point + e.half_width, 0.0, 1.0)};
}

} // namespace

void propagate(const EnvelopeSet& env, EstimatedBounds& est) {
    const auto lo_of = [&](const Interval& a, const Interval& b, const PiecewiseCurve& c) {
        return Interval{std::max(c.eval(a.lo, true), c.eval(b.lo, true)), std::max(c.eval(a.hi, true), c.eval(b.hi, true))};
    };
    const auto hi_of = [&](const Interval& a, const Interval& b, const PiecewiseCurve& c) {
        return Interval{std::min(c.eval(a.lo, true), c.eval(b.lo, true)), std::min(c.eval(a.hi, true), c.eval(b.hi, true))};
    };
    est.lower = lo_of(est.lam_a, est.lam_b, env.epsilon);
    est.upper = hi_of(est.lam_prime_a, est.lam_prime_b, env.eta);
}

EstimatedBounds estimated_bounds(const BipartiteState& state, std::size_t shots, double confidence,
                                 const EnvelopeSet& env, RandomSeed seed) {
    if (static_cast<std::size_t>(env.m) != state.dims().envelope_dim())
        throw DimensionError("envelopes built for m = " + std::to_string(env.m) + " but the state needs " +
                             std::to_string(state.dims().envelope_dim()));
    if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("confidence must lie in (0, 1)");
    // union bound over the three observables
    const double per = 1.0 - (1.0 - confidence) / 3.0;

    EstimatedBounds est;
    est.purity = simulate_purity_shots(std::clamp(purity(state.matrix()), 0.0, 1.0), shots, seed, per, 0);
    est.purity_a = simulate_purity_shots(std::clamp(purity(partial_trace(state, Subsystem::A)), 0.0, 1.0), shots, seed, per, 1);
    est.purity_b = simulate_purity_shots(std::clamp(purity(partial_trace(state, Subsystem::B)), 0.0, 1.0), shots, seed, per, 2);

    const Interval p = purity_interval(est.purity);
    const Interval pa = purity_interval(est.purity_a);
    const Interval pb = purity_interval(est.purity_b);
    est.lam_a = {p.lo - pa.hi, p.hi - pa.lo};
    est.lam_b = {p.lo - pb.hi, p.hi - pb.lo};
    est.lam_prime_a = {1.0 - pa.hi, 1.0 - pa.lo};
    est.lam_prime_b = {1.0 - pb.hi, 1.0 - pb.lo};
    propagate(env, est);
    return est;
}

} // namespace eofb
