#pragma once

#include <cmath>
#include <vector>

#include "eofbounds/matops.hpp"

namespace eofb::testing {

inline StateVector bell() {
    const double r = 1.0 / std::sqrt(2.0);
    return StateVector({2, 2}, {r, 0, 0, r});
}

inline StateVector product(std::size_t m, std::size_t n) {
    std::vector<cplx> a(m * n);
    a[0] = 1.0;
    return StateVector({m, n}, a);
}

inline StateVector max_entangled(std::size_t m) {
    std::vector<double> mu(m, 1.0 / m);
    return StateVector::from_schmidt({m, m}, mu);
}

inline BipartiteState maximally_mixed(std::size_t m, std::size_t n) {
    return BipartiteState::from_matrix(ComplexMatrix::identity(m * n) * (1.0 / (m * n)), {m, n});
}

} // namespace eofb::testing
