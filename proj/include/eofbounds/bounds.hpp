#pragma once

#include <string>

#include "eofbounds/envelopes.hpp"
#include "eofbounds/matops.hpp"

namespace eofb {

enum class Units { nats, bits };

std::string to_string(Units units);
Units parse_units(const std::string& text);
/// Converts a value given in nats.
double from_nats(double nats, Units units);

/// Purity combinations entering the bounds:
/// lam_a = Tr rho^2 - Tr rho_A^2, lam_prime_a = 1 - Tr rho_A^2, and likewise for B.
struct LambdaQuantities {
    double lam_a = 0.0;
    double lam_b = 0.0;
    double lam_prime_a = 0.0;
    double lam_prime_b = 0.0;
};

LambdaQuantities lambda_quantities(const BipartiteState& state);

struct EofBounds {
    double lower = 0.0;
    double upper = 0.0;
};

/// lower = max(eps(lam_a), eps(lam_b)), upper = min(eta(lam'_a), eta(lam'_b)),
/// all arguments clamped to the curve domain. Throws DimensionError when the
/// envelopes were not built for min(m, n).
EofBounds eof_bounds(const BipartiteState& state, const EnvelopeSet& envelopes);
EofBounds eof_bounds(const LambdaQuantities& lambdas, const EnvelopeSet& envelopes);

enum class ConcurrenceMethod { purity, twocopy };

/// Bounds on the squared concurrence. `lower_sq` is clamped at zero, `lower_sq_raw` is not.
struct ConcurrenceBounds {
    double lower_sq = 0.0;
    double upper_sq = 0.0;
    double lower_sq_raw = 0.0;
};

ConcurrenceBounds concurrence_bounds(const BipartiteState& state, ConcurrenceMethod method);

enum class CafBranch { trivial, entropy, linear };

std::string to_string(CafBranch branch);

struct CafBreakdown {
    double omega = 1.0;
    double gamma = 1.0;
    CafBranch active_branch = CafBranch::trivial;
};

struct CafBound {
    double value_bits = 0.0;
    CafBreakdown detail;
};

/// gamma(Omega) = [sqrt(Omega) + sqrt((m-1)(m-Omega))]^2 / m^2
double caf_gamma(double omega, int m);
/// H2(gamma) + (1 - gamma) log2(m - 1), in bits.
double caf_entropy_branch(double omega, int m);
/// log2(m-1)/(m-2) (Omega - m) + log2 m, in bits; requires m >= 3.
double caf_linear_branch(double omega, int m);
/// Piecewise bound from Omega; Omega is clamped to [1, m] after a 1e-6 range check.
CafBound caf_from_omega(double omega, int m);
/// Omega = max(||rho^{T_A}||_1, ||R(rho)||_1) with m = min(dims).
CafBound caf_lower_bound(const BipartiteState& state);

/// rho = (x/9) I + (1 - x)|psi><psi| on 3x3, psi proportional to (a, 0, 0, 0, 1/sqrt3, 0, 0, 0, 1/sqrt3).
BipartiteState example_state(double x, double a);

struct BoundsReport {
    BipartiteDims dims;
    LambdaQuantities lambdas;
    double eof_lower = 0.0;
    double eof_upper = 0.0;
    double caf_lower = 0.0;
    CafBreakdown caf;
    double conc_sq_lower = 0.0;
    double conc_sq_lower_raw = 0.0;
    double conc_sq_upper = 0.0;
    Units units = Units::nats;
    EnvelopeMode mode = EnvelopeMode::oracle;
};

/// EOF bounds and CAF value converted to `units`; concurrence and lambdas are dimensionless.
BoundsReport make_report(const BipartiteState& state, const EnvelopeSet& envelopes, Units units);

} // namespace eofb
