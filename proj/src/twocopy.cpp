#include <cmath>
#include <stdexcept>
#include <string>

#include "eofbounds/errors.hpp"
#include "eofbounds/matops.hpp"

namespace eofb {

namespace {

enum class PairFactor { identity, antisymmetric, antisym_minus_sym };

// Operator on a pair X x X' of local dimension d, index (x, x') -> x*d + x'.
ComplexMatrix pair_factor(std::size_t d, PairFactor kind) {
    const std::size_t dd = d * d;
    ComplexMatrix out(dd, dd);
    for (std::size_t x = 0; x < d; ++x)
        for (std::size_t xp = 0; xp < d; ++xp) {
            const std::size_t row = x * d + xp;
            const std::size_t swapped = xp * d + x;
            switch (kind) {
            case PairFactor::identity:
                out(row, row) = 1.0;
                break;
            case PairFactor::antisymmetric: // (I - SWAP)/2
                out(row, row) += 0.5;
                out(row, swapped) -= 0.5;
                break;
            case PairFactor::antisym_minus_sym: // P- - P+ = -SWAP
                out(row, swapped) = -1.0;
                break;
            }
        }
    return out;
}

struct Factors {
    PairFactor a;
    PairFactor b;
};

Factors factors_of(TwoCopyOperator op) {
    switch (op) {
    case TwoCopyOperator::V1: return {PairFactor::antisym_minus_sym, PairFactor::antisymmetric};
    case TwoCopyOperator::V2: return {PairFactor::antisymmetric, PairFactor::antisym_minus_sym};
    case TwoCopyOperator::K1: return {PairFactor::antisymmetric, PairFactor::identity};
    case TwoCopyOperator::K2: return {PairFactor::identity, PairFactor::antisymmetric};
    }
    throw std::invalid_argument("unknown two-copy operator");
}

constexpr double kPrefactor = 4.0;

} // namespace

ComplexMatrix two_copy_operator(BipartiteDims dims, TwoCopyOperator op) {
    const std::size_t m = dims.m, n = dims.n, d = m * n, dd = d * d;
    if (dd > kMaxDenseTwoCopyDim)
        throw DimensionError("two-copy dimension " + std::to_string(dd) + " too large to materialize");
    const Factors f = factors_of(op);
    const ComplexMatrix fa = pair_factor(m, f.a);
    const ComplexMatrix fb = pair_factor(n, f.b);
    ComplexMatrix out(dd, dd);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t ap = 0; ap < m; ++ap)
            for (std::size_t c = 0; c < m; ++c)
                for (std::size_t cp = 0; cp < m; ++cp) {
                    const cplx va = fa(a * m + ap, c * m + cp);
                    if (va == cplx{}) continue;
                    for (std::size_t b = 0; b < n; ++b)
                        for (std::size_t bp = 0; bp < n; ++bp)
                            for (std::size_t e = 0; e < n; ++e)
                                for (std::size_t ep = 0; ep < n; ++ep) {
                                    const cplx vb = fb(b * n + bp, e * n + ep);
                                    if (vb == cplx{}) continue;
                                    const std::size_t row = (a * n + b) * d + (ap * n + bp);
                                    const std::size_t col = (c * n + e) * d + (cp * n + ep);
                                    out(row, col) = kPrefactor * va * vb;
                                }
                }
    return out;
}

double two_copy_expectation(const BipartiteState& state, TwoCopyOperator op, std::size_t max_two_copy_dim) {
    const std::size_t m = state.dims().m, n = state.dims().n;
    const std::size_t dd = (m * n) * (m * n);
    if (dd > max_two_copy_dim)
        throw DimensionError("two-copy dimension " + std::to_string(dd) + " exceeds limit " +
                             std::to_string(max_two_copy_dim));
    const Factors f = factors_of(op);
    const ComplexMatrix fa = pair_factor(m, f.a);
    const ComplexMatrix fb = pair_factor(n, f.b);
    const ComplexMatrix& rho = state.matrix();

    // Tr(X O) = sum_{r,c} X[r,c] O[c,r] with r = (a,b,a',b'), c = (x,y,x',y').
    cplx total = 0.0;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t ap = 0; ap < m; ++ap)
            for (std::size_t x = 0; x < m; ++x)
                for (std::size_t xp = 0; xp < m; ++xp) {
                    const cplx va = fa(x * m + xp, a * m + ap);
                    if (va == cplx{}) continue;
                    cplx partial = 0.0;
                    for (std::size_t b = 0; b < n; ++b)
                        for (std::size_t bp = 0; bp < n; ++bp)
                            for (std::size_t y = 0; y < n; ++y)
                                for (std::size_t yp = 0; yp < n; ++yp) {
                                    const cplx vb = fb(y * n + yp, b * n + bp);
                                    if (vb == cplx{}) continue;
                                    partial += vb * rho(a * n + b, x * n + y) * rho(ap * n + bp, xp * n + yp);
                                }
                    total += va * partial;
                }
    total *= kPrefactor;
    if (std::abs(total.imag()) >= 1e-10)
        throw std::runtime_error("two_copy_expectation: imaginary part " + std::to_string(total.imag()));
    return total.real();
}

} // namespace eofb
