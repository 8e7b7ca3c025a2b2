// eofb: command-line front end for the bounds library.
//
// Exit codes: 0 ok, 1 suite failure, 2 parse/usage, 3 invariant violation,
// 4 unsupported dimension.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "eofbounds/bounds.hpp"
#include "eofbounds/errors.hpp"
#include "eofbounds/io.hpp"
#include "eofbounds/oracles.hpp"
#include "eofbounds/shotsim.hpp"
#include "eofbounds/suites.hpp"

using namespace eofb;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kSuiteFailed = 1, kUsage = 2, kInvariant = 3, kDims = 4 };

struct Common {
    std::string mode = "oracle";
    std::string units = "nats";
};

void add_common(CLI::App* cmd, Common& c, bool with_mode = true) {
    if (with_mode)
        cmd->add_option("--mode", c.mode, "envelope construction")->check(CLI::IsMember({"paper", "oracle"}));
    cmd->add_option("--units", c.units, "entropy units")->check(CLI::IsMember({"nats", "bits"}));
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path);
}

EnvelopeSet envelopes_for(const BipartiteState& state, const std::string& mode) {
    return build_envelopes(static_cast<int>(state.dims().envelope_dim()), parse_mode(mode));
}

// MIN:MAX:STEPS
void parse_range(const std::string& text, double& lo, double& hi, std::size_t& steps) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    try {
        if (parts.size() != 3) throw std::invalid_argument("");
        std::size_t used = 0;
        lo = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("");
        hi = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("");
        const long long s = std::stoll(parts[2], &used);
        if (used != parts[2].size() || s < 1) throw std::invalid_argument("");
        steps = static_cast<std::size_t>(s);
    } catch (const std::logic_error&) {
        throw std::invalid_argument("--a-range must look like MIN:MAX:STEPS, got '" + text + "'");
    }
}

std::vector<double> parse_witness(const std::string& text) {
    std::vector<double> mu;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) {
        std::size_t used = 0;
        mu.push_back(std::stod(p, &used));
        if (used != p.size()) throw std::invalid_argument("bad witness entry '" + p + "'");
    }
    return mu;
}

int run(int argc, char** argv) {
    CLI::App app{"Measurable entanglement-of-formation bounds"};
    app.require_subcommand(1);

    Common common;
    std::string state_path, out_path;
    bool as_json = false;
    auto* bounds = app.add_subcommand("bounds", "EOF, concurrence and CAF bounds for a state file");
    bounds->add_option("file", state_path, "state file (JSON or text)")->required();
    bounds->add_flag("--json", as_json, "print the report as JSON");
    add_common(bounds, common);

    int env_m = 3;
    std::size_t grid = 1000;
    auto* envelope = app.add_subcommand("envelope", "export envelope curves as CSV");
    envelope->add_option("--m", env_m, "envelope dimension")->required();
    envelope->add_option("--grid", grid, "number of rows")->check(CLI::PositiveNumber);
    envelope->add_option("--out", out_path, "output CSV")->required();
    add_common(envelope, common);

    double ex_x = 0.1;
    std::string a_range;
    auto* example = app.add_subcommand("example", "bounds along the example state family as CSV");
    example->add_option("--x", ex_x, "noise weight")->required();
    example->add_option("--a-range", a_range, "MIN:MAX:STEPS")->required();
    example->add_option("--out", out_path, "output CSV")->required();
    add_common(example, common);

    std::size_t shots = 0;
    double delta = 0.05;
    std::uint64_t seed = 0;
    auto* shots_cmd = app.add_subcommand("shots", "finite-shot interval bounds");
    shots_cmd->add_option("file", state_path, "state file")->required();
    shots_cmd->add_option("--shots", shots, "shots per observable")->required()->check(CLI::PositiveNumber);
    shots_cmd->add_option("--delta", delta, "total failure probability")->check(CLI::Range(1e-12, 0.999999));
    shots_cmd->add_option("--seed", seed);
    add_common(shots_cmd, common);

    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force oracles");
    oracle_cmd->require_subcommand(1);
    oracle::ConvexRoofOptions roof;
    auto* roof_cmd = oracle_cmd->add_subcommand("convex-roof", "upper estimate of the EOF by ensemble search");
    roof_cmd->add_option("file", state_path, "state file")->required();
    roof_cmd->add_option("--ensemble", roof.ensemble_size, "ensemble size (default m*n)");
    roof_cmd->add_option("--restarts", roof.restarts);
    roof_cmd->add_option("--iters", roof.iters);
    roof_cmd->add_option("--seed", seed);
    add_common(roof_cmd, common, false);

    std::string suite;
    auto* verify = app.add_subcommand("verify", "run an invariant suite");
    verify->add_option("suite", suite, "twocopy | sandwich | paperconst | coverage")->required();
    verify->add_option("--seed", seed);

    std::size_t samples = 1000;
    std::vector<std::string> witnesses;
    auto* probe = app.add_subcommand("probe", "check envelopes against random and supplied Schmidt vectors");
    probe->add_option("--m", env_m, "envelope dimension")->required();
    probe->add_option("--samples", samples);
    probe->add_option("--witness", witnesses, "comma-separated probabilities (repeatable)");
    probe->add_option("--seed", seed);
    add_common(probe, common);

    std::string kind;
    std::size_t sm = 2, sn = 2, rank = 1;
    double ex_a = 0.0;
    auto* make = app.add_subcommand("make-state", "write a state file (JSON)");
    make->add_option("kind", kind, "example | haar | mixed")->required()->check(CLI::IsMember({"example", "haar", "mixed"}));
    make->add_option("--x", ex_x);
    make->add_option("--a", ex_a);
    make->add_option("--m", sm);
    make->add_option("--n", sn);
    make->add_option("--rank", rank);
    make->add_option("--seed", seed);
    make->add_option("--out", out_path, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    const Units units = parse_units(common.units);

    if (bounds->parsed()) {
        const BipartiteState state = load_state(state_path);
        const BoundsReport r = make_report(state, envelopes_for(state, common.mode), units);
        if (as_json) {
            std::cout << to_json(r).dump(2) << '\n';
        } else {
            std::cout << "dims " << r.dims.m << "x" << r.dims.n << "  mode " << to_string(r.mode) << "  units "
                      << to_string(r.units) << '\n'
                      << "lambda_a " << format_number(r.lambdas.lam_a) << "  lambda_b "
                      << format_number(r.lambdas.lam_b) << '\n'
                      << "lambda'_a " << format_number(r.lambdas.lam_prime_a) << "  lambda'_b "
                      << format_number(r.lambdas.lam_prime_b) << '\n'
                      << "eof  [" << format_number(r.eof_lower) << ", " << format_number(r.eof_upper) << "]\n"
                      << "C^2  [" << format_number(r.conc_sq_lower) << ", " << format_number(r.conc_sq_upper)
                      << "]  raw lower " << format_number(r.conc_sq_lower_raw) << '\n'
                      << "caf  " << format_number(r.caf_lower) << "  (omega " << format_number(r.caf.omega)
                      << ", branch " << to_string(r.caf.active_branch) << ")\n";
        }
        return kOk;
    }
    if (envelope->parsed()) {
        const EnvelopeSet env = build_envelopes(env_m, parse_mode(common.mode));
        write_file(out_path, curves_csv(env, grid));
        std::cout << "wrote " << out_path << " (m " << env_m << ", mode " << common.mode << ", units nats, rows "
                  << grid << ")\n";
        return kOk;
    }
    if (example->parsed()) {
        double lo = 0, hi = 0;
        std::size_t steps = 0;
        parse_range(a_range, lo, hi, steps);
        const EnvelopeSet env = build_envelopes(3, parse_mode(common.mode));
        write_file(out_path, example_csv(ex_x, lo, hi, steps, env, units));
        std::cout << "wrote " << out_path << " (x " << format_number(ex_x) << ", mode " << common.mode << ", units "
                  << common.units << ", rows " << steps << ")\n";
        return kOk;
    }
    if (shots_cmd->parsed()) {
        const BipartiteState state = load_state(state_path);
        const EnvelopeSet env = envelopes_for(state, common.mode);
        EstimatedBounds est = estimated_bounds(state, shots, 1.0 - delta, env, RandomSeed{seed});
        json est_json = to_json(est);
        const auto conv = [units](json& iv) {
            iv[0] = from_nats(iv[0].get<double>(), units);
            iv[1] = from_nats(iv[1].get<double>(), units);
        };
        conv(est_json["lower_interval"]);
        conv(est_json["upper_interval"]);
        est_json["shots"] = shots;
        est_json["confidence"] = 1.0 - delta;
        est_json["seed"] = seed;
        json out = to_json(make_report(state, env, units));
        out["estimated"] = std::move(est_json);
        std::cout << out.dump(2) << '\n';
        return kOk;
    }
    if (roof_cmd->parsed()) {
        const BipartiteState state = load_state(state_path);
        roof.seed = RandomSeed{seed};
        const double v = oracle::convex_roof_upper(state, roof);
        json out{{"convex_roof_upper", from_nats(v, units)},
                 {"units", to_string(units)},
                 {"ensemble", roof.ensemble_size == 0 ? state.dims().total() : roof.ensemble_size},
                 {"restarts", roof.restarts},
                 {"iters", roof.iters},
                 {"seed", seed}};
        std::cout << out.dump(2) << '\n';
        return kOk;
    }
    if (verify->parsed()) {
        const SuiteResult r = run_suite(suite, RandomSeed{seed});
        std::cout << r.detail.dump(2) << '\n';
        return r.passed ? kOk : kSuiteFailed;
    }
    if (probe->parsed()) {
        const EnvelopeSet env = build_envelopes(env_m, parse_mode(common.mode));
        std::vector<ProbVector> extra;
        for (const auto& w : witnesses) extra.emplace_back(parse_witness(w));
        json out = to_json(oracle::verify_envelopes(env, samples, RandomSeed{seed}, extra));
        out["m"] = env_m;
        out["mode"] = common.mode;
        out["units"] = "nats";
        std::cout << out.dump(2) << '\n';
        return kOk;
    }
    if (make->parsed()) {
        BipartiteState state = kind == "example" ? example_state(ex_x, ex_a)
                               : kind == "haar"
                                   ? oracle::random_state({sm, sn}, oracle::StateKind::haar_pure, 1, RandomSeed{seed})
                                   : oracle::random_state({sm, sn}, oracle::StateKind::mixed_rank_r, rank, RandomSeed{seed});
        save_state(state, out_path);
        std::cout << "wrote " << out_path << '\n';
        return kOk;
    }
    return kUsage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "parse error";
        if (e.line() > 0) std::cerr << " at line " << e.line() << ", column " << e.column();
        std::cerr << ": " << e.what() << '\n';
        return kUsage;
    } catch (const InvariantError& e) {
        std::cerr << "invariant violated: " << e.invariant() << " (deviation " << format_number(e.magnitude())
                  << ")\n";
        return kInvariant;
    } catch (const DimensionError& e) {
        std::cerr << "unsupported dimension: " << e.what() << '\n';
        return kDims;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
