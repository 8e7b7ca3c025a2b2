#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "eofbounds/oracles.hpp"

namespace eofb::oracle {

namespace {

using Vec = std::vector<cplx>;

// p * S(rho_A) for the unnormalized ensemble member w, p = <w|w>.
double weighted_entanglement(const Vec& w, BipartiteDims dims) {
    double p = 0.0;
    for (const cplx& a : w) p += std::norm(a);
    if (p < 1e-300) return 0.0;
    ComplexMatrix red(dims.m, dims.m);
    for (std::size_t i = 0; i < dims.m; ++i)
        for (std::size_t k = i; k < dims.m; ++k) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < dims.n; ++j) s += w[i * dims.n + j] * std::conj(w[k * dims.n + j]);
            red(i, k) = s / p;
            red(k, i) = std::conj(s) / p;
        }
    double h = 0.0;
    for (double e : hermitian_eigenvalues(red))
        if (e > 1e-15) h -= e * std::log(e);
    return p * h;
}

// K x r matrix with orthonormal columns (Gram-Schmidt on a complex Gaussian matrix).
std::vector<Vec> random_isometry(std::size_t k, std::size_t r, CounterRng& rng) {
    std::vector<Vec> cols(r, Vec(k));
    for (std::size_t c = 0; c < r; ++c) {
        for (auto& x : cols[c]) x = rng.complex_normal();
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t d = 0; d < c; ++d) {
                cplx dot = 0.0;
                for (std::size_t i = 0; i < k; ++i) dot += std::conj(cols[d][i]) * cols[c][i];
                for (std::size_t i = 0; i < k; ++i) cols[c][i] -= dot * cols[d][i];
            }
        double nrm = 0.0;
        for (const auto& x : cols[c]) nrm += std::norm(x);
        nrm = std::sqrt(nrm);
        for (auto& x : cols[c]) x /= nrm;
    }
    return cols;
}

double descend(std::vector<Vec>& w, BipartiteDims dims, std::size_t iters, CounterRng& rng) {
    const std::size_t k = w.size();
    const std::size_t d = dims.total();
    std::vector<double> f(k);
    for (std::size_t i = 0; i < k; ++i) f[i] = weighted_entanglement(w[i], dims);

    double delta = 0.3;
    Vec wi(d), wj(d), best_i(d), best_j(d);
    for (std::size_t it = 0; it < iters; ++it) {
        const double phi0 = 2.0 * std::numbers::pi * rng.uniform();
        bool improved = false;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                double best = f[i] + f[j];
                double best_fi = f[i], best_fj = f[j];
                bool found = false;
                for (double theta : {delta, -delta}) {
                    for (double phi : {phi0, phi0 + 0.5 * std::numbers::pi}) {
                        const double c = std::cos(theta), s = std::sin(theta);
                        const cplx e = std::polar(1.0, phi);
                        for (std::size_t r = 0; r < d; ++r) {
                            wi[r] = c * w[i][r] + s * e * w[j][r];
                            wj[r] = -s * std::conj(e) * w[i][r] + c * w[j][r];
                        }
                        const double fi = weighted_entanglement(wi, dims);
                        const double fj = weighted_entanglement(wj, dims);
                        if (fi + fj < best - 1e-15) {
                            best = fi + fj;
                            best_fi = fi;
                            best_fj = fj;
                            best_i = wi;
                            best_j = wj;
                            found = true;
                        }
                    }
                }
                if (found) {
                    w[i] = best_i;
                    w[j] = best_j;
                    f[i] = best_fi;
                    f[j] = best_fj;
                    improved = true;
                }
            }
        }
        delta = improved ? std::min(delta * 1.2, 0.25 * std::numbers::pi) : 0.5 * delta;
    }
    double total = 0.0;
    for (double x : f) total += x;
    return total;
}

} // namespace

double convex_roof_upper(const BipartiteState& state, const ConvexRoofOptions& opts) {
    const BipartiteDims dims = state.dims();
    const std::size_t d = dims.total();
    const auto eig = hermitian_eig(state.matrix());

    // sqrt(e_k) v_k for the nonzero part of the spectrum
    std::vector<Vec> roots;
    for (std::size_t c = 0; c < d; ++c) {
        if (eig.values[c] <= 1e-14) continue;
        Vec v(d);
        for (std::size_t r = 0; r < d; ++r) v[r] = eig.vectors(r, c) * std::sqrt(eig.values[c]);
        roots.push_back(std::move(v));
    }
    const std::size_t rank = roots.size();
    const std::size_t k = opts.ensemble_size == 0 ? d : opts.ensemble_size;
    if (k < rank)
        throw std::invalid_argument("convex_roof_upper: ensemble size " + std::to_string(k) + " below rank " +
                                    std::to_string(rank));

    double best = std::numeric_limits<double>::infinity();
    const std::size_t restarts = std::max<std::size_t>(opts.restarts, 1);
    for (std::size_t rs = 0; rs < restarts; ++rs) {
        CounterRng rng(opts.seed, rs);
        std::vector<Vec> w(k, Vec(d));
        if (rs == 0) {
            for (std::size_t i = 0; i < rank; ++i) w[i] = roots[i];
        } else {
            const auto u = random_isometry(k, rank, rng);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t c = 0; c < rank; ++c)
                    for (std::size_t r = 0; r < d; ++r) w[i][r] += u[c][i] * roots[c][r];
        }
        best = std::min(best, descend(w, dims, opts.iters, rng));
    }
    return best;
}

} // namespace eofb::oracle
