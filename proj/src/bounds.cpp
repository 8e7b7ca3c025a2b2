#include "eofbounds/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eofbounds/errors.hpp"

namespace eofb {

std::string to_string(Units units) { return units == Units::bits ? "bits" : "nats"; }

Units parse_units(const std::string& text) {
    if (text == "nats") return Units::nats;
    if (text == "bits") return Units::bits;
    throw std::invalid_argument("unknown units '" + text + "' (expected nats or bits)");
}

double from_nats(double nats, Units units) { return units == Units::bits ? nats / std::numbers::ln2 : nats; }

LambdaQuantities lambda_quantities(const BipartiteState& state) {
    const double p = purity(state.matrix());
    const double pa = purity(partial_trace(state, Subsystem::A));
    const double pb = purity(partial_trace(state, Subsystem::B));
    return {p - pa, p - pb, 1.0 - pa, 1.0 - pb};
}

EofBounds eof_bounds(const LambdaQuantities& l, const EnvelopeSet& env) {
    const double lower = std::max(env.epsilon.eval(l.lam_a, true), env.epsilon.eval(l.lam_b, true));
    const double upper = std::min(env.eta.eval(l.lam_prime_a, true), env.eta.eval(l.lam_prime_b, true));
    return {lower, upper};
}

EofBounds eof_bounds(const BipartiteState& state, const EnvelopeSet& env) {
    if (static_cast<std::size_t>(env.m) != state.dims().envelope_dim())
        throw DimensionError("envelopes built for m = " + std::to_string(env.m) + " but the state needs " +
                             std::to_string(state.dims().envelope_dim()));
    return eof_bounds(lambda_quantities(state), env);
}

ConcurrenceBounds concurrence_bounds(const BipartiteState& state, ConcurrenceMethod method) {
    double lower_a, lower_b, upper_a, upper_b;
    if (method == ConcurrenceMethod::twocopy) {
        lower_a = two_copy_expectation(state, TwoCopyOperator::V1);
        lower_b = two_copy_expectation(state, TwoCopyOperator::V2);
        upper_a = two_copy_expectation(state, TwoCopyOperator::K1);
        upper_b = two_copy_expectation(state, TwoCopyOperator::K2);
    } else {
        const LambdaQuantities l = lambda_quantities(state);
        lower_a = 2.0 * l.lam_a;
        lower_b = 2.0 * l.lam_b;
        upper_a = 2.0 * l.lam_prime_a;
        upper_b = 2.0 * l.lam_prime_b;
    }
    const double raw = std::max(lower_a, lower_b);
    return {std::max(raw, 0.0), std::min(upper_a, upper_b), raw};
}

std::string to_string(CafBranch branch) {
    switch (branch) {
    case CafBranch::trivial: return "trivial";
    case CafBranch::entropy: return "entropy";
    case CafBranch::linear: return "linear";
    }
    return "unknown";
}

double caf_gamma(double omega, int m) {
    const double root = std::sqrt(omega) + std::sqrt((m - 1.0) * std::max(m - omega, 0.0));
    return root * root / (static_cast<double>(m) * m);
}

namespace {

double binary_entropy_bits(double p) {
    const auto term = [](double x) { return x <= 0.0 ? 0.0 : -x * std::log2(x); };
    return term(p) + term(1.0 - p);
}

} // namespace

double caf_entropy_branch(double omega, int m) {
    const double g = caf_gamma(omega, m);
    return binary_entropy_bits(g) + (1.0 - g) * std::log2(m - 1.0);
}

double caf_linear_branch(double omega, int m) {
    if (m < 3) throw std::domain_error("caf_linear_branch: the linear branch needs m >= 3");
    return std::log2(m - 1.0) / (m - 2.0) * (omega - m) + std::log2(static_cast<double>(m));
}

CafBound caf_from_omega(double omega, int m) {
    if (m < 2) throw std::invalid_argument("caf_from_omega: m must be at least 2");
    if (!(omega >= 1.0 - 1e-6 && omega <= m + 1e-6))
        throw std::domain_error("Omega = " + std::to_string(omega) + " outside [1, m]");
    const double w = std::clamp(omega, 1.0, static_cast<double>(m));
    CafBound out;
    out.detail.omega = omega;
    out.detail.gamma = caf_gamma(w, m);
    const double knee = 4.0 * (m - 1.0) / m;
    if (w <= 1.0 + 1e-9) {
        out.detail.active_branch = CafBranch::trivial;
        out.value_bits = 0.0;
    } else if (w <= knee || m == 2) {
        out.detail.active_branch = CafBranch::entropy;
        out.value_bits = caf_entropy_branch(w, m);
    } else {
        out.detail.active_branch = CafBranch::linear;
        out.value_bits = caf_linear_branch(w, m);
    }
    return out;
}

CafBound caf_lower_bound(const BipartiteState& state) {
    const double omega = std::max(trace_norm(partial_transpose(state)), trace_norm(realign(state)));
    return caf_from_omega(omega, static_cast<int>(state.dims().envelope_dim()));
}

BipartiteState example_state(double x, double a) {
    if (!std::isfinite(x) || !std::isfinite(a)) throw std::invalid_argument("example_state: non-finite parameter");
    const BipartiteDims dims{3, 3};
    const double c = 1.0 / std::sqrt(3.0);
    const StateVector psi = StateVector::normalized(dims, {a, 0, 0, 0, c, 0, 0, 0, c});
    ComplexMatrix rho = ComplexMatrix::outer(psi.amplitudes()) * (1.0 - x);
    for (std::size_t i = 0; i < 9; ++i) rho(i, i) += x / 9.0;
    // exact Hermitian diagonal
    for (std::size_t i = 0; i < 9; ++i) rho(i, i) = rho(i, i).real();
    return BipartiteState::from_matrix(std::move(rho), dims);
}

BoundsReport make_report(const BipartiteState& state, const EnvelopeSet& envelopes, Units units) {
    BoundsReport r;
    r.dims = state.dims();
    r.lambdas = lambda_quantities(state);
    const EofBounds eof = eof_bounds(state, envelopes);
    r.eof_lower = from_nats(eof.lower, units);
    r.eof_upper = from_nats(eof.upper, units);
    const CafBound caf = caf_lower_bound(state);
    r.caf = caf.detail;
    r.caf_lower = units == Units::bits ? caf.value_bits : caf.value_bits * std::numbers::ln2;
    const ConcurrenceBounds conc = concurrence_bounds(state, ConcurrenceMethod::purity);
    r.conc_sq_lower = conc.lower_sq;
    r.conc_sq_lower_raw = conc.lower_sq_raw;
    r.conc_sq_upper = conc.upper_sq;
    r.units = units;
    r.mode = envelopes.mode;
    return r;
}

} // namespace eofb
