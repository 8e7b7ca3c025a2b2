#include <cmath>
#include <numeric>

#include "doctest.h"

#include "eofbounds/envelopes.hpp"
#include "eofbounds/errors.hpp"
#include "eofbounds/oracles.hpp"

using namespace eofb;
using doctest::Approx;

namespace {

ProbVector branch_vector(Branch b, const BranchEval& e, int m) {
    std::vector<double> mu(m, 0.0);
    for (int i = 0; i < b.n1; ++i) mu[i] = std::max(e.alpha, 0.0);
    for (int i = 0; i < b.n2; ++i) mu[b.n1 + i] = std::max(e.beta, 0.0);
    const double s = std::accumulate(mu.begin(), mu.end(), 0.0);
    mu[0] += 1.0 - s;
    return ProbVector(mu);
}

} // namespace

TEST_CASE("shannon entropy") {
    CHECK(shannon_entropy(ProbVector({0.5, 0.5})) == Approx(std::log(2.0)));
    CHECK(shannon_entropy(ProbVector({2.0 / 3, 1.0 / 6, 1.0 / 6})) == Approx(0.8676).epsilon(1e-3));
    CHECK(shannon_entropy(ProbVector({1.0, 0.0, 0.0})) == 0.0);
    CHECK_THROWS_AS(ProbVector({0.5, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(ProbVector({1.5, -0.5}), std::invalid_argument);
}

TEST_CASE("branch solutions") {
    const auto e11 = branch_solutions({1, 1}, 0.5);
    REQUIRE(e11);
    CHECK(e11->alpha == Approx(0.5));
    CHECK(e11->beta == Approx(0.5));
    CHECK(e11->value == Approx(std::log(2.0)));

    const auto e12 = branch_solutions({1, 2}, 0.5);
    REQUIRE(e12);
    CHECK(e12->alpha == Approx(2.0 / 3));
    CHECK(e12->beta == Approx(1.0 / 6));
    CHECK(e12->value == Approx(0.8676).epsilon(1e-4));

    const auto e12b = branch_solutions({1, 2}, 0.4);
    REQUIRE(e12b);
    CHECK(e12b->alpha == Approx(0.7550).epsilon(1e-4));
    CHECK(e12b->beta == Approx(0.1225).epsilon(1e-4));
    CHECK(e12b->value == Approx(0.7266).epsilon(1e-4));
    CHECK_FALSE(branch_solutions({1, 2}, 0.4, true));

    CHECK_FALSE(branch_solutions({2, 1}, 0.4));
    CHECK_FALSE(branch_solutions({2, 1}, 0.4, true));
    CHECK_THROWS_AS(branch_solutions({1, 1}, 1.0), std::out_of_range);
    CHECK_THROWS_AS(branch_value({2, 1}, 0.4), std::domain_error);
}

TEST_CASE("branch consistency and symmetry") {
    for (int m = 2; m <= 5; ++m) {
        for (const Branch& b : branches_for(m)) {
            for (int g = 0; g < 200; ++g) {
                const double lam = 0.999 * g / 200.0;
                const auto e = branch_solutions(b, lam);
                if (!e) continue;
                CHECK(std::abs(b.n1 * e->alpha + b.n2 * e->beta - 1.0) < 1e-10);
                CHECK(std::abs(b.n1 * e->alpha * e->alpha + b.n2 * e->beta * e->beta - (1.0 - lam)) < 1e-10);
                const ProbVector mu = branch_vector(b, *e, m);
                CHECK(std::abs(shannon_entropy(mu) - e->value) < 1e-10);
                CHECK(std::abs(mu.linear_entropy() - lam) < 1e-10);
            }
        }
    }
    // (n1, n2) with alpha+ and (n2, n1) with the other root describe the same distribution
    const double lam = 0.6;
    const auto e = branch_solutions({1, 2}, lam);
    const double n1 = 2, n2 = 1, t = 3, q = 1 - lam;
    const double d = n1 * n1 - n1 * t * (1 - n2 * q);
    const double alpha_minus = (n1 - std::sqrt(d)) / (n1 * t);
    const double beta = (1 - n1 * alpha_minus) / n2;
    const double v = 2 * entropy_term(alpha_minus) + entropy_term(beta);
    CHECK(v == Approx(e->value).epsilon(1e-12));
}

TEST_CASE("branch slope") {
    const auto e = branch_solutions({1, 1}, 0.3);
    const double h = 1e-6;
    const double fd = (branch_value({1, 1}, 0.3 + h) - branch_value({1, 1}, 0.3 - h)) / (2 * h);
    CHECK(branch_slope(*e) == Approx(fd).epsilon(1e-6));
    CHECK(branch_slope(*branch_solutions({1, 1}, 0.5)) == Approx(1.0));
    CHECK(std::isinf(branch_slope(*branch_solutions({1, 1}, 0.0))));
}

TEST_CASE("extremal X and Y") {
    CHECK(extremal_xy(3, 0.4, Extremum::Y, EnvelopeMode::oracle) == Approx(0.5897).epsilon(1e-3));
    CHECK(extremal_xy(3, 0.4, Extremum::X, EnvelopeMode::oracle) == Approx(0.7266).epsilon(1e-3));
    CHECK(extremal_xy(3, 0.6, Extremum::Y, EnvelopeMode::oracle) == Approx(0.9801).epsilon(1e-3));
    CHECK(extremal_xy(3, 0.6, Extremum::X, EnvelopeMode::oracle) == Approx(1.0053).epsilon(1e-3));
    CHECK(extremal_xy(3, 0.3, Extremum::X, EnvelopeMode::paper) == Approx(branch_value({1, 1}, 0.3)));
    CHECK(extremal_xy(4, 0.7, Extremum::Y, EnvelopeMode::paper) == Approx(branch_value({3, 1}, 0.7)));
    CHECK_THROWS_AS(extremal_xy(3, 0.0, Extremum::X, EnvelopeMode::oracle), std::out_of_range);
    CHECK_THROWS_AS(extremal_xy(3, 0.7, Extremum::X, EnvelopeMode::oracle), std::out_of_range);
}

TEST_CASE("tangent construction") {
    const Tangent t3 = tangent_solve(3, 0.5, 0.868);
    CHECK(t3.slope == Approx(1.65).epsilon(0.01 / 1.65));
    CHECK(std::abs(t3.touch_x - 0.091) < 0.002);

    const Tangent t4 = tangent_solve(4, 2.0 / 3, 1.242);
    CHECK(std::abs(t4.touch_x - 0.062) < 0.002);
    CHECK(std::abs(branch_value({1, 1}, t4.touch_x) - 0.142) < 0.002);

    const double x = 0.3;
    const Tangent on = tangent_solve(3, x, branch_value({1, 1}, x));
    CHECK(on.touch_x == Approx(x));
    CHECK(on.slope == Approx(branch_slope(*branch_solutions({1, 1}, x))));

    CHECK_THROWS_AS(tangent_solve(3, 0.4, 0.1), std::domain_error);
    CHECK_THROWS_AS(tangent_solve(3, 0.9, 1.0), std::out_of_range);
}

TEST_CASE("hull") {
    std::vector<Point> convex;
    for (int i = 0; i <= 10; ++i) convex.push_back({i / 10.0, (i / 10.0) * (i / 10.0)});
    const PiecewiseCurve c = hull(convex, HullDirection::convex_minorant);
    CHECK(c.segments().size() == 10);
    for (const Point& p : convex) CHECK(c(p.x) == Approx(p.y));

    std::vector<Point> wiggly{{0, 0}, {0.2, 0.5}, {0.4, 0.1}, {0.6, 0.7}, {1.0, 1.0}};
    const PiecewiseCurve up = hull(wiggly, HullDirection::concave_majorant);
    const PiecewiseCurve down = hull(wiggly, HullDirection::convex_minorant);
    for (const Point& p : wiggly) {
        CHECK(up(p.x) >= p.y - 1e-15);
        CHECK(down(p.x) <= p.y + 1e-15);
    }
    // idempotent
    std::vector<Point> verts;
    for (const auto& s : up.segments()) verts.push_back({segment_x0(s), segment_value(s, segment_x0(s))});
    verts.push_back({1.0, 1.0});
    const PiecewiseCurve again = hull(verts, HullDirection::concave_majorant);
    for (double x = 0; x <= 1.0; x += 0.05) CHECK(again(x) == Approx(up(x)));

    CHECK_THROWS_AS(hull(std::vector<Point>{{0, 0}, {0, 1}}, HullDirection::convex_minorant), std::invalid_argument);
    CHECK_THROWS_AS(hull(std::vector<Point>{{1, 0}, {0, 1}}, HullDirection::convex_minorant), std::invalid_argument);
    CHECK_THROWS_AS(hull(std::vector<Point>{{0, 0}}, HullDirection::convex_minorant), std::invalid_argument);
}

TEST_CASE("paper-mode curves") {
    const EnvelopeSet p3 = build_envelopes(3, EnvelopeMode::paper);
    CHECK(p3.eta(0.5) == Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(p3.eta(2.0 / 3) == Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(p3.eta(0.55) == Approx(6 * std::log(1.5) * 0.05 + std::log(2.0)).epsilon(1e-12));
    CHECK(std::abs(p3.epsilon(0.5) - 0.868) < 1e-3);
    CHECK(std::abs(p3.epsilon(2.0 / 3) - 1.0986) < 1e-3);
    CHECK(std::abs((p3.epsilon(2.0 / 3) - p3.epsilon(0.5)) / (1.0 / 6) - 1.39) < 0.01);

    const EnvelopeSet p4 = build_envelopes(4, EnvelopeMode::paper);
    CHECK(std::abs(p4.epsilon(2.0 / 3) - 1.242) < 1e-3);
    CHECK(std::abs((std::log(4.0) - p4.epsilon(2.0 / 3)) / (0.75 - 2.0 / 3) - 1.726) < 0.01);

    const EnvelopeSet p2 = build_envelopes(2, EnvelopeMode::paper);
    CHECK(p2.epsilon(0.3) == Approx(branch_value({1, 1}, 0.3)));
    CHECK(p2.eta(0.3) == Approx(0.3 * 2 * std::log(2.0)));
}

TEST_CASE("oracle-mode curves") {
    for (int m = 2; m <= 5; ++m) {
        const EnvelopeSet env = build_envelopes(m, EnvelopeMode::oracle);
        const double top = env.domain_max();
        CHECK(std::abs(env.eta(top) - std::log(m)) < 1e-9);
        CHECK(std::abs(env.epsilon(top) - std::log(m)) < 1e-9);
        double prev_e = 0.0, prev_n = 0.0;
        double prev_de = -1e300, prev_dn = 1e300;
        for (int g = 1; g <= 10000; ++g) {
            const double x = top * g / 10000.0;
            const double e = env.epsilon(x), n = env.eta(x);
            CHECK_MESSAGE(e >= prev_e - 1e-12, "epsilon decreasing at m=" << m << " x=" << x);
            CHECK_MESSAGE(n >= prev_n - 1e-12, "eta decreasing at m=" << m << " x=" << x);
            // second differences: convex epsilon, concave eta
            CHECK(e - prev_e >= prev_de - 1e-9);
            CHECK(n - prev_n <= prev_dn + 1e-9);
            prev_de = e - prev_e;
            prev_dn = n - prev_n;
            prev_e = e;
            prev_n = n;
            const double y = extremal_xy(m, x, Extremum::Y, EnvelopeMode::oracle);
            const double xx = extremal_xy(m, x, Extremum::X, EnvelopeMode::oracle);
            CHECK(e <= y + 1e-7);
            CHECK(y <= xx + 1e-12);
            CHECK(xx <= n + 1e-7);
        }
    }
    // single branch at m = 2: both curves follow F11 (concave), eta = F11 and epsilon its chord
    const EnvelopeSet e2 = build_envelopes(2, EnvelopeMode::oracle);
    CHECK(e2.eta(0.3) == Approx(branch_value({1, 1}, 0.3)).epsilon(1e-12));
    CHECK(e2.epsilon(0.3) == Approx(0.3 * 2 * std::log(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(build_envelopes(9, EnvelopeMode::oracle), DimensionError);
    CHECK_THROWS_AS(build_envelopes(1, EnvelopeMode::paper), DimensionError);
}

TEST_CASE("oracle envelopes bound random distributions") {
    for (int m = 2; m <= 4; ++m) {
        const EnvelopeSet env = build_envelopes(m, EnvelopeMode::oracle);
        for (std::uint64_t s = 0; s < 1000; ++s) {
            CounterRng rng(RandomSeed{11}, s);
            const ProbVector mu = oracle::random_prob_vector(m, rng);
            const double lam = mu.linear_entropy(), h = shannon_entropy(mu);
            CHECK(env.epsilon.eval(lam, true) <= h + 1e-7);
            CHECK(h <= env.eta.eval(lam, true) + 1e-7);
        }
    }
}

TEST_CASE("curve evaluation and clamping") {
    const EnvelopeSet env = build_envelopes(3, EnvelopeMode::paper);
    CHECK(curve_eval(env.eta, -0.2, true) == 0.0);
    CHECK(curve_eval(env.epsilon, -0.2, true) == 0.0);
    CHECK(curve_eval(env.eta, 0.9, true) == Approx(std::log(3.0)));
    CHECK(curve_eval(env.eta, 0.55, false) == Approx(0.8148).epsilon(1e-3));
    CHECK_THROWS_AS(curve_eval(env.eta, 0.9, false), std::out_of_range);
    CHECK_THROWS_AS(curve_eval(env.eta, -0.1, false), std::out_of_range);
}

TEST_CASE("piecewise curve validation") {
    CHECK_THROWS_AS(PiecewiseCurve(1.0, {}), std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseCurve(1.0, {LineSegment{0, 0.5, 1, 0, 0}, LineSegment{0.6, 1.0, 1, 0.6, 0.6}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseCurve(1.0, {LineSegment{0, 0.5, 1, 0, 0}, LineSegment{0.5, 1.0, 1, 0.5, 0.7}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PiecewiseCurve(1.0, {LineSegment{0, 0.5, 1, 0, 0}}), std::invalid_argument);
}
