#include "eofbounds/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>

#include "eofbounds/errors.hpp"

namespace eofb::oracle {

namespace {

// Deliberately separate from the envelope code: plain -sum p log p.
double plain_entropy(std::span<const double> p) {
    double h = 0.0;
    for (double x : p)
        if (x > 0.0) h -= x * std::log(x);
    return h;
}

double eigen_entropy(const ComplexMatrix& reduced) {
    const auto ev = hermitian_eigenvalues(reduced);
    double h = 0.0;
    for (double e : ev)
        if (e > 1e-15) h -= e * std::log(e);
    return h;
}

} // namespace

double pure_eof(const StateVector& psi) { return eigen_entropy(psi.reduced(Subsystem::A)); }

double wootters_concurrence(const BipartiteState& state) {
    if (state.dims().m != 2 || state.dims().n != 2)
        throw DimensionError("wootters_2qubit: needs a 2x2 state");
    const auto eig = hermitian_eig(state.matrix());
    std::vector<std::size_t> kept;
    for (std::size_t k = 0; k < 4; ++k)
        if (eig.values[k] > 1e-13) kept.push_back(k);
    ComplexMatrix w(4, kept.size());
    for (std::size_t c = 0; c < kept.size(); ++c)
        for (std::size_t r = 0; r < 4; ++r) w(r, c) = eig.vectors(r, kept[c]) * std::sqrt(eig.values[kept[c]]);

    // sigma_y x sigma_y
    ComplexMatrix flip(4, 4);
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;
    ComplexMatrix wt(kept.size(), 4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < kept.size(); ++c) wt(c, r) = w(r, c);
    auto sv = singular_values(wt * flip * w);
    sv.resize(4, 0.0);
    return std::max(0.0, sv[0] - sv[1] - sv[2] - sv[3]);
}

double wootters_2qubit(const BipartiteState& state) {
    const double c = std::min(wootters_concurrence(state), 1.0);
    const double x = 0.5 * (1.0 + std::sqrt(1.0 - c * c));
    const double p[2] = {x, 1.0 - x};
    return plain_entropy(p);
}

// ---------------------------------------------------------------------------
// brute-force extremizer

namespace {

struct Candidate {
    std::vector<double> mu;
    double h = 0.0;
};

double score(double h, Extremize mode) { return mode == Extremize::max ? h : -h; }

void add_candidate(std::vector<Candidate>& out, std::vector<double> mu) {
    const double h = plain_entropy(mu);
    out.push_back({std::move(mu), h});
}

// All two-level critical points, both quadratic roots, zeros padded.
void enumerate_critical(int m, double lambda, std::vector<Candidate>& out) {
    const double q = 1.0 - lambda;
    for (int n1 = 1; n1 < m; ++n1) {
        for (int n2 = 1; n1 + n2 <= m; ++n2) {
            const double t = n1 + n2;
            const double disc = n1 * static_cast<double>(n1) - n1 * t * (1.0 - n2 * q);
            if (disc < -1e-12) continue;
            for (double sign : {1.0, -1.0}) {
                const double alpha = (n1 + sign * std::sqrt(std::max(disc, 0.0))) / (n1 * t);
                const double beta = (1.0 - n1 * alpha) / n2;
                if (alpha < -1e-12 || beta < -1e-12) continue;
                std::vector<double> mu(m, 0.0);
                for (int i = 0; i < n1; ++i) mu[i] = std::max(alpha, 0.0);
                for (int i = 0; i < n2; ++i) mu[n1 + i] = std::max(beta, 0.0);
                add_candidate(out, std::move(mu));
            }
        }
    }
}

// Dirichlet point on a random support, pushed along the ray from the uniform
// point of that support until it reaches the purity shell.
std::optional<std::vector<double>> shell_sample(int m, double lambda, CounterRng& rng) {
    const int kmin = std::max(2, static_cast<int>(std::ceil(1.0 / (1.0 - lambda) - 1e-12)));
    if (kmin > m) return std::nullopt;
    const int k = kmin + static_cast<int>(rng.below(static_cast<std::uint64_t>(m - kmin + 1)));
    std::vector<double> p(k);
    double sum = 0.0;
    for (double& x : p) {
        x = -std::log(1.0 - rng.uniform());
        sum += x;
    }
    double dev2 = 0.0;
    for (double& x : p) {
        x /= sum;
        dev2 += (x - 1.0 / k) * (x - 1.0 / k);
    }
    const double target = (1.0 - lambda) - 1.0 / k;
    if (dev2 <= 0.0 || target < 0.0) return std::nullopt;
    const double scale = std::sqrt(target / dev2);
    std::vector<double> mu(m, 0.0);
    for (int i = 0; i < k; ++i) {
        mu[i] = 1.0 / k + scale * (p[i] - 1.0 / k);
        if (mu[i] < 0.0) return std::nullopt;
    }
    return mu;
}

// Coordinates i, j, l rotated about the (1,1,1) axis keep sum and sum of squares.
std::vector<double> rotate_triple(const std::vector<double>& mu, int i, int j, int l, double angle) {
    const double c = (mu[i] + mu[j] + mu[l]) / 3.0;
    const double d[3] = {mu[i] - c, mu[j] - c, mu[l] - c};
    // orthonormal basis of the plane orthogonal to (1,1,1)
    const double e1[3] = {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0};
    const double e2[3] = {1.0 / std::sqrt(6.0), 1.0 / std::sqrt(6.0), -2.0 / std::sqrt(6.0)};
    const double a = d[0] * e1[0] + d[1] * e1[1] + d[2] * e1[2];
    const double b = d[0] * e2[0] + d[1] * e2[1] + d[2] * e2[2];
    const double r = std::hypot(a, b);
    const double th = std::atan2(b, a) + angle;
    std::vector<double> out = mu;
    const int idx[3] = {i, j, l};
    for (int s = 0; s < 3; ++s) out[idx[s]] = c + r * (std::cos(th) * e1[s] + std::sin(th) * e2[s]);
    return out;
}

void refine(Candidate& cand, Extremize mode, std::size_t iters, CounterRng& rng) {
    const int m = static_cast<int>(cand.mu.size());
    if (m < 3) return;
    constexpr int kScan = 48;
    for (std::size_t it = 0; it < iters; ++it) {
        const int i = static_cast<int>(rng.below(m));
        int j = static_cast<int>(rng.below(m - 1));
        if (j >= i) ++j;
        int l = static_cast<int>(rng.below(m - 2));
        for (int skip : {std::min(i, j), std::max(i, j)})
            if (l >= skip) ++l;

        double best_angle = 0.0;
        double best = score(cand.h, mode);
        const auto try_angle = [&](double ang) {
            auto mu = rotate_triple(cand.mu, i, j, l, ang);
            for (double x : mu)
                if (x < 0.0) return;
            const double s = score(plain_entropy(mu), mode);
            if (s > best) best = s, best_angle = ang;
        };
        for (int s = 1; s < kScan; ++s) try_angle(2.0 * std::numbers::pi * s / kScan);
        double step = 2.0 * std::numbers::pi / kScan;
        for (int r = 0; r < 30; ++r) {
            step *= 0.5;
            const double centre = best_angle;
            try_angle(centre - step);
            try_angle(centre + step);
        }
        if (best_angle != 0.0) {
            auto mu = rotate_triple(cand.mu, i, j, l, best_angle);
            for (double& x : mu) x = std::max(x, 0.0);
            cand.h = plain_entropy(mu);
            cand.mu = std::move(mu);
        }
    }
}

} // namespace

double entropy_extremum_bruteforce(int m, double lambda, Extremize mode, const BruteforceOptions& opts) {
    if (m < 2) throw std::invalid_argument("entropy_extremum_bruteforce: m must be at least 2");
    const double top = static_cast<double>(m - 1) / m;
    if (!(lambda > 0.0 && lambda <= top + 1e-15))
        throw std::out_of_range("entropy_extremum_bruteforce: lambda infeasible");
    if (lambda >= top - 1e-15) return std::log(static_cast<double>(m));

    std::vector<Candidate> cands;
    enumerate_critical(m, lambda, cands);
    CounterRng rng(opts.seed, 0);
    for (std::size_t s = 0; s < opts.samples; ++s)
        if (auto mu = shell_sample(m, lambda, rng)) add_candidate(cands, std::move(*mu));
    if (cands.empty()) throw std::logic_error("entropy_extremum_bruteforce: no feasible point found");

    std::stable_sort(cands.begin(), cands.end(),
                     [mode](const Candidate& a, const Candidate& b) { return score(a.h, mode) > score(b.h, mode); });
    const std::size_t top_n = std::min<std::size_t>(8, cands.size());
    double best = cands.front().h;
    for (std::size_t c = 0; c < top_n; ++c) {
        CounterRng local(opts.seed, 1 + c);
        refine(cands[c], mode, opts.refine_iters, local);
        if (score(cands[c].h, mode) > score(best, mode)) best = cands[c].h;
    }
    return best;
}

// ---------------------------------------------------------------------------
// random states

StateVector random_pure_vector(BipartiteDims dims, RandomSeed seed, std::uint64_t stream) {
    dims.validate();
    CounterRng rng(seed, stream);
    std::vector<cplx> amps(dims.total());
    for (auto& a : amps) a = rng.complex_normal();
    return StateVector::normalized(dims, std::move(amps));
}

BipartiteState random_state(BipartiteDims dims, StateKind kind, std::size_t r, RandomSeed seed,
                            std::uint64_t stream) {
    dims.validate();
    if (kind == StateKind::haar_pure) return BipartiteState::from_pure(random_pure_vector(dims, seed, stream));
    const std::size_t d = dims.total();
    if (r < 1 || r > d) throw std::invalid_argument("random_state: rank must lie in [1, m*n]");
    CounterRng rng(seed, stream);
    ComplexMatrix g(d, r);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < r; ++k) g(i, k) = rng.complex_normal();
    ComplexMatrix rho = g * g.adjoint();
    const double tr = rho.trace().real();
    rho *= 1.0 / tr;
    for (std::size_t i = 0; i < d; ++i) {
        rho(i, i) = rho(i, i).real();
        for (std::size_t k = i + 1; k < d; ++k) rho(k, i) = std::conj(rho(i, k));
    }
    return BipartiteState::from_matrix(std::move(rho), dims);
}

ProbVector random_prob_vector(int m, CounterRng& rng) {
    const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
    std::vector<double> p(m, 0.0);
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
        p[i] = -std::log(1.0 - rng.uniform());
        sum += p[i];
    }
    for (int i = 0; i < k; ++i) p[i] /= sum;
    // push the rounding residue into the largest entry
    double total = 0.0;
    for (double x : p) total += x;
    *std::max_element(p.begin(), p.end()) += 1.0 - total;
    return ProbVector(std::move(p));
}

// ---------------------------------------------------------------------------
// envelope verification

WitnessResult evaluate_witness(const EnvelopeSet& env, const ProbVector& mu) {
    if (mu.size() > static_cast<std::size_t>(env.m))
        throw DimensionError("witness longer than the envelope dimension");
    WitnessResult w;
    w.mu.assign(mu.values().begin(), mu.values().end());
    w.lambda = mu.linear_entropy();
    w.entropy = shannon_entropy(mu);
    w.epsilon = env.epsilon.eval(w.lambda, true);
    w.eta = env.eta.eval(w.lambda, true);
    w.lower_gap = w.epsilon - w.entropy;
    w.upper_gap = w.entropy - w.eta;
    w.lower_violation = w.lower_gap > kVerifySlack;
    w.upper_violation = w.upper_gap > kVerifySlack;
    return w;
}

VerificationReport verify_envelopes(const EnvelopeSet& env, std::size_t samples, RandomSeed seed,
                                    const std::vector<ProbVector>& extra) {
    VerificationReport rep;
    rep.worst_gap = -std::numeric_limits<double>::infinity();
    const auto account = [&rep](const WitnessResult& w) {
        rep.violations_lower += w.lower_violation;
        rep.violations_upper += w.upper_violation;
        rep.worst_gap = std::max({rep.worst_gap, w.lower_gap, w.upper_gap});
    };
    for (const ProbVector& mu : extra) {
        rep.witnesses.push_back(evaluate_witness(env, mu));
        account(rep.witnesses.back());
        ++rep.samples;
    }
    std::size_t reported = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        CounterRng rng(seed, s);
        const WitnessResult w = evaluate_witness(env, random_prob_vector(env.m, rng));
        account(w);
        ++rep.samples;
        if ((w.lower_violation || w.upper_violation) && reported < kMaxReportedViolations) {
            rep.witnesses.push_back(w);
            ++reported;
        }
    }
    if (rep.samples == 0) rep.worst_gap = 0.0;
    return rep;
}

} // namespace eofb::oracle
