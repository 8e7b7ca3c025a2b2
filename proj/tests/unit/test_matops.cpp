#include <cmath>

#include "doctest.h"
#include "helpers.hpp"

#include "eofbounds/bounds.hpp"
#include "eofbounds/errors.hpp"
#include "eofbounds/matops.hpp"
#include "eofbounds/oracles.hpp"
#include "eofbounds/rng.hpp"

using namespace eofb;
using namespace eofb::testing;
using doctest::Approx;

namespace {

ComplexMatrix random_hermitian(std::size_t d, CounterRng& rng) {
    ComplexMatrix h(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        h(i, i) = rng.normal();
        for (std::size_t j = i + 1; j < d; ++j) {
            h(i, j) = rng.complex_normal();
            h(j, i) = std::conj(h(i, j));
        }
    }
    return h;
}

double reconstruction_error(const ComplexMatrix& h) {
    const auto e = hermitian_eig(h);
    ComplexMatrix lam(h.rows(), h.rows());
    for (std::size_t i = 0; i < h.rows(); ++i) lam(i, i) = e.values[i];
    return (e.vectors * lam * e.vectors.adjoint()).max_abs_diff(h);
}

} // namespace

TEST_CASE("matrix construction validates shape and finiteness") {
    CHECK_THROWS_AS(ComplexMatrix(2, 2, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(ComplexMatrix(1, 2, {1.0, std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(BipartiteDims({1, 4}).validate(), DimensionError);
    CHECK_THROWS_AS(BipartiteDims({9, 9}).validate(), DimensionError);
    CHECK_NOTHROW(BipartiteDims({8, 8}).validate());
    CHECK(BipartiteDims{2, 5}.envelope_dim() == 2);
}

TEST_CASE("state invariants are enforced, not repaired") {
    ComplexMatrix m = ComplexMatrix::identity(4) * 0.245;
    try {
        BipartiteState::from_matrix(m, {2, 2});
        FAIL("expected a trace violation");
    } catch (const InvariantError& e) {
        CHECK(e.invariant() == "unit trace");
        CHECK(e.magnitude() == Approx(0.02));
    }
    ComplexMatrix h = ComplexMatrix::identity(4) * 0.25;
    h(0, 1) = 0.1;
    CHECK_THROWS_AS(BipartiteState::from_matrix(h, {2, 2}), InvariantError);
    ComplexMatrix neg = ComplexMatrix::diagonal(std::vector<double>{0.6, 0.6, -0.2, 0.0});
    try {
        BipartiteState::from_matrix(neg, {2, 2});
        FAIL("expected a positivity violation");
    } catch (const InvariantError& e) {
        CHECK(e.invariant() == "positive semidefinite");
    }
    CHECK_THROWS_AS(BipartiteState::from_matrix(ComplexMatrix::identity(3), {2, 2}), DimensionError);
    CHECK_THROWS_AS(StateVector({2, 2}, {1, 1, 0, 0}), InvariantError);
}

TEST_CASE("partial trace examples") {
    const auto prod = BipartiteState::from_pure(product(2, 2));
    const ComplexMatrix ra = partial_trace(prod, Subsystem::A);
    CHECK(ra(0, 0).real() == Approx(1.0));
    CHECK(std::abs(ra(1, 1)) == 0.0);

    const ComplexMatrix rb = partial_trace(BipartiteState::from_pure(bell()), Subsystem::A);
    CHECK(rb.max_abs_diff(ComplexMatrix::identity(2) * 0.5) < 1e-15);

    const ComplexMatrix rex = partial_trace(example_state(0.0, 0.0), Subsystem::A);
    CHECK(rex.max_abs_diff(ComplexMatrix::diagonal(std::vector<double>{0.0, 0.5, 0.5})) < 1e-12);

    const auto mixed = BipartiteState::from_matrix(ComplexMatrix::identity(6) * (1.0 / 6), {2, 3});
    CHECK(partial_trace(mixed, Subsystem::B).rows() == 3);
    CHECK(partial_trace(mixed, Subsystem::A).trace().real() == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("purity examples") {
    CHECK(purity(ComplexMatrix::identity(3) * (1.0 / 3)) == Approx(1.0 / 3));
    CHECK(purity(BipartiteState::from_pure(bell()).matrix()) == Approx(1.0));
    std::vector<double> diag(9, 0.0111);
    diag[0] = 0.9111;
    CHECK(purity(ComplexMatrix::diagonal(diag)) == Approx(0.8311).epsilon(1e-4));
    CHECK_THROWS_AS(purity(ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("partial transpose") {
    const auto bell_pt = partial_transpose(BipartiteState::from_pure(bell()));
    const auto vals = hermitian_eigenvalues(bell_pt);
    CHECK(vals[0] == Approx(-0.5));
    CHECK(vals[1] == Approx(0.5));
    CHECK(vals[3] == Approx(0.5));

    const auto rho = oracle::random_state({2, 3}, oracle::StateKind::mixed_rank_r, 3, RandomSeed{1});
    CHECK(partial_transpose(partial_transpose(rho), rho.dims()) == rho.matrix());

    // separable product: spectrum unchanged
    const auto prod = oracle::random_state({2, 2}, oracle::StateKind::haar_pure, 1, RandomSeed{2});
    const auto ra = partial_trace(prod, Subsystem::A);
    const auto rb = partial_trace(prod, Subsystem::B);
    ComplexMatrix kron(4, 4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) kron(i * 2 + j, k * 2 + l) = ra(i, k) * rb(j, l);
    const auto p = BipartiteState::from_matrix(kron, {2, 2});
    const auto before = hermitian_eigenvalues(p.matrix());
    const auto after = hermitian_eigenvalues(partial_transpose(p));
    for (std::size_t i = 0; i < 4; ++i) CHECK(after[i] == Approx(before[i]).epsilon(1e-12));
}

TEST_CASE("realignment") {
    const auto mixed = BipartiteState::from_matrix(ComplexMatrix::identity(6) * (1.0 / 6), {2, 3});
    const auto r = realign(mixed);
    CHECK(r.rows() == 4);
    CHECK(r.cols() == 9);
    CHECK(trace_norm(realign(BipartiteState::from_pure(bell()))) == Approx(2.0).epsilon(1e-12));
    CHECK(trace_norm(realign(BipartiteState::from_pure(product(2, 3)))) == Approx(1.0).epsilon(1e-12));

    const auto rho = oracle::random_state({3, 3}, oracle::StateKind::mixed_rank_r, 4, RandomSeed{3});
    CHECK(realign(realign(rho), rho.dims()) == rho.matrix());
    const auto rect = oracle::random_state({2, 3}, oracle::StateKind::mixed_rank_r, 2, RandomSeed{4});
    CHECK(unrealign(realign(rect), rect.dims()) == rect.matrix());
}

TEST_CASE("hermitian eigendecomposition") {
    const auto d = hermitian_eig(ComplexMatrix::diagonal(std::vector<double>{3, 1, 2}));
    CHECK(d.values == std::vector<double>{1, 2, 3});
    ComplexMatrix px(2, 2, {0, 1, 1, 0});
    const auto e = hermitian_eigenvalues(px);
    CHECK(e[0] == Approx(-1.0));
    CHECK(e[1] == Approx(1.0));

    CounterRng rng(RandomSeed{5}, 0);
    for (std::size_t n : {1u, 3u, 8u, 27u, 81u}) CHECK(reconstruction_error(random_hermitian(n, rng)) < 1e-10);

    // deterministic, including degenerate spectra
    const auto a = hermitian_eig(ComplexMatrix::identity(4) * 0.25);
    const auto b = hermitian_eig(ComplexMatrix::identity(4) * 0.25);
    CHECK(a.vectors == b.vectors);

    ComplexMatrix nonherm(2, 2, {0, 1, 0, 0});
    CHECK_THROWS_AS(hermitian_eig(nonherm), std::invalid_argument);
    CHECK_THROWS_AS(hermitian_eig(ComplexMatrix(2, 3)), std::invalid_argument);
}

TEST_CASE("trace norm") {
    CHECK(trace_norm(ComplexMatrix::diagonal(std::vector<double>{1, -2})) == Approx(3.0));
    CHECK(trace_norm(partial_transpose(BipartiteState::from_pure(bell()))) == Approx(2.0).epsilon(1e-12));
    for (std::size_t m : {2u, 3u, 4u}) {
        const auto rho = BipartiteState::from_pure(max_entangled(m));
        CHECK(std::abs(trace_norm(realign(rho)) - m) < 1e-9);
        CHECK(std::abs(trace_norm(partial_transpose(rho)) - m) < 1e-9);
    }
    // unit trace norm for density matrices, including rank-deficient ones
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto rho = oracle::random_state({3, 3}, oracle::StateKind::mixed_rank_r, 1 + s % 9, RandomSeed{6}, s);
        CHECK(std::abs(trace_norm(rho.matrix()) - 1.0) < 1e-10);
    }
    CounterRng rng(RandomSeed{7}, 0);
    const auto h = random_hermitian(6, rng);
    double abs_sum = 0.0;
    for (double v : hermitian_eigenvalues(h)) abs_sum += std::abs(v);
    CHECK(std::abs(trace_norm(h) - abs_sum) < 1e-10);
}

TEST_CASE("two-copy expectations") {
    const auto b = BipartiteState::from_pure(bell());
    CHECK(two_copy_expectation(b, TwoCopyOperator::V1) == Approx(1.0));
    CHECK(two_copy_expectation(BipartiteState::from_pure(product(2, 2)), TwoCopyOperator::K1) == Approx(0.0));
    CHECK(two_copy_expectation(maximally_mixed(2, 2), TwoCopyOperator::V1) == Approx(-0.5));

    // contraction agrees with the dense operator
    const auto rho = oracle::random_state({2, 3}, oracle::StateKind::mixed_rank_r, 3, RandomSeed{8});
    const std::size_t d = 6;
    for (auto op : {TwoCopyOperator::V1, TwoCopyOperator::V2, TwoCopyOperator::K1, TwoCopyOperator::K2}) {
        const ComplexMatrix big = two_copy_operator(rho.dims(), op);
        cplx tr = 0.0;
        for (std::size_t r = 0; r < d * d; ++r)
            for (std::size_t c = 0; c < d * d; ++c)
                tr += rho.matrix()(r / d, c / d) * rho.matrix()(r % d, c % d) * big(c, r);
        CHECK(std::abs(tr.real() - two_copy_expectation(rho, op)) < 1e-12);
        CHECK(std::abs(tr.imag()) < 1e-12);
    }
    CHECK_THROWS_AS(two_copy_expectation(maximally_mixed(3, 3), TwoCopyOperator::V1, 80), DimensionError);
    CHECK_THROWS_AS(two_copy_operator({7, 7}, TwoCopyOperator::K1), DimensionError);
}

TEST_CASE("two-copy identities on random states") {
    for (std::uint64_t s = 0; s < 30; ++s) {
        const BipartiteDims dims = s % 2 ? BipartiteDims{2, 3} : BipartiteDims{3, 2};
        const auto rho = oracle::random_state(dims, oracle::StateKind::mixed_rank_r, 1 + s % 6, RandomSeed{9}, s);
        const double p = purity(rho.matrix());
        const double pa = purity(partial_trace(rho, Subsystem::A));
        const double pb = purity(partial_trace(rho, Subsystem::B));
        CHECK(std::abs(two_copy_expectation(rho, TwoCopyOperator::V1) - 2 * (p - pa)) < 1e-9);
        CHECK(std::abs(two_copy_expectation(rho, TwoCopyOperator::V2) - 2 * (p - pb)) < 1e-9);
        CHECK(std::abs(two_copy_expectation(rho, TwoCopyOperator::K1) - 2 * (1 - pa)) < 1e-9);
        CHECK(std::abs(two_copy_expectation(rho, TwoCopyOperator::K2) - 2 * (1 - pb)) < 1e-9);
    }
}
