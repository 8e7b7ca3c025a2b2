#pragma once

// State files, JSON reports and CSV exports.

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "eofbounds/bounds.hpp"
#include "eofbounds/oracles.hpp"
#include "eofbounds/shotsim.hpp"

namespace eofb {

/// JSON {"m", "n", "re", "im"} or text ("m n", then m*n rows of "re,im" pairs).
/// The format is chosen from the first non-blank character.
/// Throws ParseError (with position), DimensionError or InvariantError.
BipartiteState parse_state(const std::string& text, std::size_t max_total = kDefaultMaxTotalDim);
BipartiteState load_state(const std::filesystem::path& path, std::size_t max_total = kDefaultMaxTotalDim);

nlohmann::json state_to_json(const BipartiteState& state);
void save_state(const BipartiteState& state, const std::filesystem::path& path);

/// 17 significant digits, '.' decimal point, no locale.
std::string format_number(double x);

nlohmann::json to_json(const BoundsReport& report);
nlohmann::json to_json(const oracle::WitnessResult& witness);
nlohmann::json to_json(const oracle::VerificationReport& report);
nlohmann::json to_json(const EstimatedBounds& est);

/// lambda,eta,epsilon,X,Y,F_n1_n2...; rows at i*L/grid for i = 1..grid.
/// Branch cells are empty where the branch has no valid solution.
std::string curves_csv(const EnvelopeSet& envelopes, std::size_t grid);

/// Printed closed forms for the example family, available for x = 0.1 and x = 0.001.
struct PrintedExample {
    double lambda = 0.0;
    double lambda_prime = 0.0;
};
std::optional<PrintedExample> printed_example(double x, double a);

/// a,lambda,lambda_prime,eof_lower,eof_upper[,paper_lambda,paper_lambda_prime,paper_delta]
/// over `steps` evenly spaced values of a in [a_min, a_max].
std::string example_csv(double x, double a_min, double a_max, std::size_t steps, const EnvelopeSet& envelopes,
                        Units units);

} // namespace eofb
