#include "eofbounds/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "eofbounds/bounds.hpp"
#include "eofbounds/oracles.hpp"
#include "eofbounds/shotsim.hpp"

namespace eofb {

using nlohmann::json;

namespace {

constexpr std::array<BipartiteDims, 3> kMixedDims{{{2, 2}, {2, 3}, {3, 3}}};

BipartiteState mixed_sample(RandomSeed seed, std::uint64_t index) {
    const BipartiteDims dims = kMixedDims[index % kMixedDims.size()];
    CounterRng pick(seed, 1'000'000 + index);
    const std::size_t rank = 1 + pick.below(dims.total());
    return oracle::random_state(dims, oracle::StateKind::mixed_rank_r, rank, seed, index);
}

struct Check {
    std::string name;
    double value;
    double expected;
    double tol;
};

json checks_to_json(const std::vector<Check>& checks, bool& all) {
    json rows = json::array();
    all = true;
    for (const Check& c : checks) {
        const bool ok = std::abs(c.value - c.expected) <= c.tol;
        all = all && ok;
        rows.push_back({{"name", c.name}, {"value", c.value}, {"expected", c.expected}, {"tol", c.tol}, {"pass", ok}});
    }
    return rows;
}

SuiteResult twocopy_suite(RandomSeed seed) {
    constexpr std::size_t kStates = 200;
    std::array<double, 4> worst{};
    for (std::size_t s = 0; s < kStates; ++s) {
        const BipartiteState rho = mixed_sample(seed, s);
        const double p = purity(rho.matrix());
        const double pa = purity(partial_trace(rho, Subsystem::A));
        const double pb = purity(partial_trace(rho, Subsystem::B));
        const std::array<double, 4> want{2.0 * (p - pa), 2.0 * (p - pb), 2.0 * (1.0 - pa), 2.0 * (1.0 - pb)};
        const std::array<TwoCopyOperator, 4> ops{TwoCopyOperator::V1, TwoCopyOperator::V2, TwoCopyOperator::K1,
                                                 TwoCopyOperator::K2};
        for (std::size_t k = 0; k < 4; ++k)
            worst[k] = std::max(worst[k], std::abs(two_copy_expectation(rho, ops[k]) - want[k]));
    }
    const bool ok = *std::max_element(worst.begin(), worst.end()) < 1e-9;
    return {"twocopy", ok,
            json{{"states", kStates},
                 {"tolerance", 1e-9},
                 {"max_error", {{"V1", worst[0]}, {"V2", worst[1]}, {"K1", worst[2]}, {"K2", worst[3]}}}}};
}

SuiteResult sandwich_suite(RandomSeed seed) {
    constexpr std::size_t kPure = 1000;
    constexpr std::size_t kMixed = 500;
    constexpr double kSlack = 1e-7;
    const EnvelopeSet env2 = build_envelopes(2, EnvelopeMode::oracle);
    const EnvelopeSet env3 = build_envelopes(3, EnvelopeMode::oracle);

    json pure = json::object();
    bool ok = true;
    for (const auto& [m, env] : {std::pair<std::size_t, const EnvelopeSet*>{3, &env3}, {2, &env2}}) {
        std::size_t violations = 0;
        double worst = -1.0;
        for (std::size_t s = 0; s < kPure; ++s) {
            const StateVector psi = oracle::random_pure_vector({m, m}, seed, m * 100'000 + s);
            const double lam = 1.0 - purity(psi.reduced(Subsystem::A));
            const double e = oracle::pure_eof(psi);
            const double lo_gap = env->epsilon.eval(lam, true) - e;
            const double hi_gap = e - env->eta.eval(lam, true);
            worst = std::max({worst, lo_gap, hi_gap});
            violations += (lo_gap > kSlack) + (hi_gap > kSlack);
        }
        ok = ok && violations == 0;
        pure[std::to_string(m) + "x" + std::to_string(m)] = {{"states", kPure}, {"violations", violations}, {"worst_gap", worst}};
    }

    std::size_t order_fail = 0, roof_fail = 0;
    double worst_roof = -1.0;
    for (std::size_t s = 0; s < kMixed; ++s) {
        const BipartiteState rho = mixed_sample(seed, 500'000 + s);
        const EnvelopeSet& env = rho.dims().envelope_dim() == 2 ? env2 : env3;
        const EofBounds b = eof_bounds(rho, env);
        order_fail += b.lower > b.upper;
        const double roof = oracle::convex_roof_upper(rho, {0, 1, 5, RandomSeed{seed.value + s}});
        worst_roof = std::max(worst_roof, b.lower - roof);
        roof_fail += roof < b.lower - 1e-6;
    }
    ok = ok && order_fail == 0 && roof_fail == 0;
    return {"sandwich", ok,
            json{{"mode", "oracle"},
                 {"slack", kSlack},
                 {"pure", pure},
                 {"mixed",
                  {{"states", kMixed},
                   {"order_violations", order_fail},
                   {"roof_violations", roof_fail},
                   {"worst_lower_minus_roof", worst_roof}}}}};
}

SuiteResult paperconst_suite() {
    std::vector<Check> checks;
    const double f12 = branch_value({1, 2}, 0.5);
    checks.push_back({"F12(0.5)", f12, 0.868, 1e-3});

    const Tangent t3 = tangent_solve(3, 0.5, f12);
    checks.push_back({"m3 tangent slope", t3.slope, 1.65, 1e-2});
    checks.push_back({"m3 tangent abscissa", t3.touch_x, 0.091, 2e-3});

    const EnvelopeSet p3 = build_envelopes(3, EnvelopeMode::paper);
    const double e3_anchor = p3.epsilon(2.0 / 3.0);
    checks.push_back({"m3 epsilon third slope", (e3_anchor - p3.epsilon(0.5)) / (2.0 / 3.0 - 0.5), 1.39, 1e-2});
    checks.push_back({"m3 epsilon anchor value", e3_anchor, 1.099, 1e-3});

    const double f13 = branch_value({1, 3}, 2.0 / 3.0);
    const Tangent t4 = tangent_solve(4, 2.0 / 3.0, f13);
    checks.push_back({"m4 tangent point", t4.touch_x, 0.062, 2e-3});
    checks.push_back({"m4 tangent value", branch_value({1, 1}, t4.touch_x), 0.142, 2e-3});
    const EnvelopeSet p4 = build_envelopes(4, EnvelopeMode::paper);
    const double e4_anchor = p4.epsilon(2.0 / 3.0);
    checks.push_back({"m4 middle slope", (e4_anchor - p4.epsilon(t4.touch_x)) / (2.0 / 3.0 - t4.touch_x), 1.820, 1e-2});
    checks.push_back({"m4 last slope", (std::log(4.0) - e4_anchor) / (0.75 - 2.0 / 3.0), 1.726, 1e-2});

    double vertex_err = 0.0, closed_err = 0.0;
    for (int m = 2; m <= 6; ++m) {
        const EnvelopeSet p = build_envelopes(m, EnvelopeMode::paper);
        for (int i = 0; i < m; ++i)
            vertex_err = std::max(vertex_err, std::abs(p.eta(static_cast<double>(i) / (i + 1)) - std::log(i + 1.0)));
        const double top = p.domain_max();
        for (int g = 1; g <= 10000; ++g) {
            const double x = top * g / 10000.0;
            closed_err = std::max(closed_err, std::abs(p.eta(x) - eta_closed_form(m, x)));
        }
    }
    checks.push_back({"eta vertices m<=6", vertex_err, 0.0, 1e-12});
    checks.push_back({"eta closed form m<=6", closed_err, 0.0, 1e-12});

    bool ok = false;
    json rows = checks_to_json(checks, ok);
    return {"paperconst", ok, json{{"checks", rows}}};
}

SuiteResult coverage_suite(RandomSeed seed) {
    constexpr std::size_t kRuns = 100;
    constexpr std::size_t kShots = 1'000'000;
    constexpr double kConfidence = 0.95;
    constexpr std::size_t kRequired = 92;
    const BipartiteState rho = example_state(0.1, 1.0);
    const EnvelopeSet env = build_envelopes(3, EnvelopeMode::oracle);
    const EofBounds exact = eof_bounds(rho, env);

    const double delta = (1.0 - kConfidence) / 3.0;
    const double expected_hw = std::sqrt(2.0 * std::log(2.0 / delta) / static_cast<double>(kShots));
    std::size_t covered = 0;
    double hw_err = 0.0;
    for (std::size_t r = 0; r < kRuns; ++r) {
        const EstimatedBounds est = estimated_bounds(rho, kShots, kConfidence, env, RandomSeed{splitmix64(seed.value) + r});
        covered += est.lower.contains(exact.lower, 1e-12) && est.upper.contains(exact.upper, 1e-12);
        for (const ShotEstimate* e : {&est.purity, &est.purity_a, &est.purity_b})
            hw_err = std::max(hw_err, std::abs(e->half_width - expected_hw));
    }
    const double scaling = std::abs(2.0 * hoeffding_half_width(4 * kShots, delta) - hoeffding_half_width(kShots, delta));
    const bool ok = covered >= kRequired && hw_err <= 1e-15 && scaling <= 1e-15;
    return {"coverage", ok,
            json{{"runs", kRuns},
                 {"shots", kShots},
                 {"confidence", kConfidence},
                 {"covered", covered},
                 {"required", kRequired},
                 {"exact_lower", exact.lower},
                 {"exact_upper", exact.upper},
                 {"half_width_error", hw_err},
                 {"quadruple_shots_error", scaling}}};
}

} // namespace

double eta_closed_form(int m, double x) {
    for (int k = 1; k < m; ++k) {
        if (x <= static_cast<double>(k) / (k + 1) || k == m - 1)
            return k * (k + 1.0) * std::log((k + 1.0) / k) * (x - (k - 1.0) / k) + std::log(static_cast<double>(k));
    }
    throw std::invalid_argument("eta_closed_form: m must be at least 2");
}

std::vector<std::string> suite_names() { return {"twocopy", "sandwich", "paperconst", "coverage"}; }

SuiteResult run_suite(const std::string& name, RandomSeed seed) {
    SuiteResult r;
    if (name == "twocopy") r = twocopy_suite(seed);
    else if (name == "sandwich") r = sandwich_suite(seed);
    else if (name == "paperconst") r = paperconst_suite();
    else if (name == "coverage") r = coverage_suite(seed);
    else throw std::invalid_argument("unknown suite '" + name + "'");
    r.detail["suite"] = name;
    r.detail["seed"] = seed.value;
    r.detail["pass"] = r.passed;
    return r;
}

} // namespace eofb
