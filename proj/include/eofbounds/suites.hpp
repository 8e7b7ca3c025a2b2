#pragma once

// Named invariant suites driven by `eofb verify` and the acceptance binary.

#include <string>
#include <vector>

#include "json.hpp"

#include "eofbounds/rng.hpp"

namespace eofb {

struct SuiteResult {
    std::string name;
    bool passed = false;
    nlohmann::json detail;
};

std::vector<std::string> suite_names();

/// Throws std::invalid_argument for an unknown suite.
SuiteResult run_suite(const std::string& name, RandomSeed seed);

/// k(k+1) log((k+1)/k) (x - (k-1)/k) + log k on ((k-1)/k, k/(k+1)].
double eta_closed_form(int m, double x);

} // namespace eofb
