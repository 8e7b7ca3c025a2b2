#pragma once

// Dense complex linear algebra for bipartite density matrices.
//
// Composite indices follow r = i*n + j for A-index i and B-index j throughout.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace eofb {

using cplx = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    /// Zero matrix.
    ComplexMatrix(std::size_t rows, std::size_t cols);
    /// Row-major entries; throws if the size does not match or an entry is not finite.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> values);
    /// |v><v|
    static ComplexMatrix outer(std::span<const cplx> v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<const cplx> entries() const noexcept { return entries_; }

    ComplexMatrix adjoint() const;
    cplx trace() const;
    double frobenius_norm() const;
    /// max |a_ij - b_ij|; shapes must agree.
    double max_abs_diff(const ComplexMatrix& other) const;
    /// max |M - M^dagger|
    double hermiticity_error() const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
    friend ComplexMatrix operator*(ComplexMatrix lhs, cplx s) { return lhs *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix rhs) { return rhs *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    bool operator==(const ComplexMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

inline constexpr std::size_t kDefaultMaxTotalDim = 64;

struct BipartiteDims {
    std::size_t m = 2;
    std::size_t n = 2;

    std::size_t total() const noexcept { return m * n; }
    /// Dimension used for entropy envelopes: min(m, n).
    std::size_t envelope_dim() const noexcept { return m < n ? m : n; }
    /// Throws DimensionError unless m, n >= 2 and m*n <= max_total.
    void validate(std::size_t max_total = kDefaultMaxTotalDim) const;

    bool operator==(const BipartiteDims&) const = default;
};

enum class Subsystem { A, B };

class StateVector {
public:
    /// Throws InvariantError("unit norm", |norm - 1|) if the norm deviates by more than 1e-12.
    StateVector(BipartiteDims dims, std::vector<cplx> amplitudes);
    /// Rescales to unit norm first.
    static StateVector normalized(BipartiteDims dims, std::vector<cplx> amplitudes);
    /// sum_i sqrt(mu_i) |i>|i>
    static StateVector from_schmidt(BipartiteDims dims, std::span<const double> schmidt);

    const BipartiteDims& dims() const noexcept { return dims_; }
    std::span<const cplx> amplitudes() const noexcept { return amplitudes_; }
    /// Reduced density matrix of A (m x m) or B (n x n).
    ComplexMatrix reduced(Subsystem keep) const;

private:
    BipartiteDims dims_;
    std::vector<cplx> amplitudes_;
};

/// Validated density matrix with its bipartition.
class BipartiteState {
public:
    static constexpr double kHermitianTol = 1e-9;
    static constexpr double kTraceTol = 1e-9;
    static constexpr double kPsdTol = -1e-8;

    /// Throws DimensionError for bad dims or shape, InvariantError naming
    /// "hermitian", "unit trace" or "positive semidefinite" otherwise.
    static BipartiteState from_matrix(ComplexMatrix mat, BipartiteDims dims,
                                      std::size_t max_total = kDefaultMaxTotalDim);
    static BipartiteState from_pure(const StateVector& psi);

    const ComplexMatrix& matrix() const noexcept { return mat_; }
    const BipartiteDims& dims() const noexcept { return dims_; }

private:
    BipartiteState(ComplexMatrix mat, BipartiteDims dims) : mat_(std::move(mat)), dims_(dims) {}

    ComplexMatrix mat_;
    BipartiteDims dims_;
};

struct EigenDecomposition {
    std::vector<double> values; // ascending
    ComplexMatrix vectors;      // columns are eigenvectors
};

/// Cyclic complex Jacobi. Input must be Hermitian within 1e-9; it is symmetrized
/// as (M + M^dagger)/2 before rotating. Eigenvectors are phase-fixed so their
/// largest-modulus component is real positive.
EigenDecomposition hermitian_eig(const ComplexMatrix& mat);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& mat);

/// Singular values in descending order (one-sided Jacobi on the taller orientation).
std::vector<double> singular_values(const ComplexMatrix& mat);
double trace_norm(const ComplexMatrix& mat);

/// Tr(M^2) for a square Hermitian matrix.
double purity(const ComplexMatrix& mat);

ComplexMatrix partial_trace(const ComplexMatrix& mat, BipartiteDims dims, Subsystem keep);
ComplexMatrix partial_trace(const BipartiteState& state, Subsystem keep);

/// (rho^{T_A})_{(i,j),(k,l)} = rho_{(k,j),(i,l)}
ComplexMatrix partial_transpose(const ComplexMatrix& mat, BipartiteDims dims);
ComplexMatrix partial_transpose(const BipartiteState& state);

/// R_{(i*m+k),(j*n+l)} = rho_{(i*n+j),(k*n+l)}; result is m^2 x n^2.
ComplexMatrix realign(const ComplexMatrix& mat, BipartiteDims dims);
ComplexMatrix realign(const BipartiteState& state);
/// Inverse index map of realign: m^2 x n^2 back to mn x mn.
ComplexMatrix unrealign(const ComplexMatrix& realigned, BipartiteDims dims);

enum class TwoCopyOperator { V1, V2, K1, K2 };

inline constexpr std::size_t kDefaultMaxTwoCopyDim = 4096;
inline constexpr std::size_t kMaxDenseTwoCopyDim = 1296;

/// Dense operator on (A x B) x (A' x B'), assembled from the (A x A') x (B x B')
/// tensor factors. Only for (mn)^2 <= kMaxDenseTwoCopyDim.
ComplexMatrix two_copy_operator(BipartiteDims dims, TwoCopyOperator op);

/// Re Tr(rho x rho . op), contracted from the local pair factors without
/// forming the full two-copy matrix. Throws DimensionError if (mn)^2 > max_two_copy_dim.
double two_copy_expectation(const BipartiteState& state, TwoCopyOperator op,
                            std::size_t max_two_copy_dim = kDefaultMaxTwoCopyDim);

} // namespace eofb
