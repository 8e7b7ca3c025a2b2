#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eofbounds/envelopes.hpp"

namespace eofb {

/// Indices of the hull vertices (monotone chain); collinear points are dropped.
std::vector<std::size_t> hull_vertices(std::span<const Point> samples, HullDirection direction);

} // namespace eofb
