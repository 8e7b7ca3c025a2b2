#include "eofbounds/matops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eofbounds/errors.hpp"

namespace eofb {

InvariantError::InvariantError(std::string invariant, double magnitude)
    : std::domain_error(invariant + " violated (deviation " + std::to_string(magnitude) + ")"),
      invariant_(std::move(invariant)), magnitude_(magnitude) {}

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(what), line_(line), column_(column) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
        throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
    for (const cplx& z : entries_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("ComplexMatrix: non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
    return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix out(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out(i, i) = values[i];
    return out;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> v) {
    ComplexMatrix out(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = v[i] * std::conj(v[j]);
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& z : entries_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double d = 0.0;
    for (std::size_t k = 0; k < entries_.size(); ++k)
        d = std::max(d, std::abs(entries_[k] - other.entries_[k]));
    return d;
}

double ComplexMatrix::hermiticity_error() const {
    if (!is_square()) throw std::invalid_argument("hermiticity_error: matrix is not square");
    double d = 0.0;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r; c < cols_; ++c)
            d = std::max(d, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return d;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("operator+: shape mismatch");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("operator-: shape mismatch");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (cplx& z : entries_) z *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("operator*: inner dimension mismatch");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

void BipartiteDims::validate(std::size_t max_total) const {
    if (m < 2 || n < 2)
        throw DimensionError("subsystem dimensions must be at least 2 (got " + std::to_string(m) + "x" +
                             std::to_string(n) + ")");
    if (m * n > max_total)
        throw DimensionError("total dimension " + std::to_string(m * n) + " exceeds limit " +
                             std::to_string(max_total));
}

namespace {

double vector_norm(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return std::sqrt(s);
}

} // namespace

StateVector::StateVector(BipartiteDims dims, std::vector<cplx> amplitudes)
    : dims_(dims), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != dims_.total())
        throw DimensionError("state vector length does not match m*n");
    for (const cplx& z : amplitudes_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("state vector: non-finite amplitude");
    const double dev = std::abs(vector_norm(amplitudes_) - 1.0);
    if (dev > 1e-12) throw InvariantError("unit norm", dev);
}

StateVector StateVector::normalized(BipartiteDims dims, std::vector<cplx> amplitudes) {
    const double nrm = vector_norm(amplitudes);
    if (!(nrm > 0.0)) throw InvariantError("unit norm", 1.0);
    for (cplx& z : amplitudes) z /= nrm;
    return StateVector(dims, std::move(amplitudes));
}

StateVector StateVector::from_schmidt(BipartiteDims dims, std::span<const double> schmidt) {
    if (schmidt.size() > std::min(dims.m, dims.n))
        throw DimensionError("Schmidt vector longer than min(m, n)");
    std::vector<cplx> amps(dims.total());
    for (std::size_t i = 0; i < schmidt.size(); ++i) {
        if (schmidt[i] < 0.0) throw std::invalid_argument("Schmidt coefficients must be nonnegative");
        amps[i * dims.n + i] = std::sqrt(schmidt[i]);
    }
    return normalized(dims, std::move(amps));
}

ComplexMatrix StateVector::reduced(Subsystem keep) const {
    const std::size_t m = dims_.m, n = dims_.n;
    if (keep == Subsystem::A) {
        ComplexMatrix out(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < m; ++k) {
                cplx s = 0.0;
                for (std::size_t j = 0; j < n; ++j) s += amplitudes_[i * n + j] * std::conj(amplitudes_[k * n + j]);
                out(i, k) = s;
            }
        return out;
    }
    ComplexMatrix out(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) {
            cplx s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += amplitudes_[i * n + j] * std::conj(amplitudes_[i * n + l]);
            out(j, l) = s;
        }
    return out;
}

BipartiteState BipartiteState::from_matrix(ComplexMatrix mat, BipartiteDims dims, std::size_t max_total) {
    dims.validate(max_total);
    if (mat.rows() != dims.total() || mat.cols() != dims.total())
        throw DimensionError("density matrix shape does not match m*n");
    const double herm = mat.hermiticity_error();
    if (herm > kHermitianTol) throw InvariantError("hermitian", herm);
    const double tr_dev = std::abs(mat.trace() - 1.0);
    if (tr_dev > kTraceTol) throw InvariantError("unit trace", tr_dev);
    const auto values = hermitian_eigenvalues(mat);
    if (values.front() < kPsdTol) throw InvariantError("positive semidefinite", -values.front());
    return BipartiteState(std::move(mat), dims);
}

BipartiteState BipartiteState::from_pure(const StateVector& psi) {
    psi.dims().validate(std::max(kDefaultMaxTotalDim, psi.dims().total()));
    return BipartiteState(ComplexMatrix::outer(psi.amplitudes()), psi.dims());
}

double purity(const ComplexMatrix& mat) {
    if (!mat.is_square()) throw std::invalid_argument("purity: matrix is not square");
    double s = 0.0;
    for (std::size_t i = 0; i < mat.rows(); ++i)
        for (std::size_t j = 0; j < mat.cols(); ++j) s += (mat(i, j) * mat(j, i)).real();
    return s;
}

ComplexMatrix partial_trace(const ComplexMatrix& mat, BipartiteDims dims, Subsystem keep) {
    const std::size_t m = dims.m, n = dims.n;
    if (mat.rows() != m * n || mat.cols() != m * n) throw DimensionError("partial_trace: shape mismatch");
    if (keep == Subsystem::A) {
        ComplexMatrix out(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < m; ++k) {
                cplx s = 0.0;
                for (std::size_t j = 0; j < n; ++j) s += mat(i * n + j, k * n + j);
                out(i, k) = s;
            }
        return out;
    }
    ComplexMatrix out(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) {
            cplx s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += mat(i * n + j, i * n + l);
            out(j, l) = s;
        }
    return out;
}

ComplexMatrix partial_trace(const BipartiteState& state, Subsystem keep) {
    return partial_trace(state.matrix(), state.dims(), keep);
}

ComplexMatrix partial_transpose(const ComplexMatrix& mat, BipartiteDims dims) {
    const std::size_t m = dims.m, n = dims.n;
    if (mat.rows() != m * n || mat.cols() != m * n) throw DimensionError("partial_transpose: shape mismatch");
    ComplexMatrix out(m * n, m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < n; ++l) out(i * n + j, k * n + l) = mat(k * n + j, i * n + l);
    return out;
}

ComplexMatrix partial_transpose(const BipartiteState& state) {
    return partial_transpose(state.matrix(), state.dims());
}

ComplexMatrix realign(const ComplexMatrix& mat, BipartiteDims dims) {
    const std::size_t m = dims.m, n = dims.n;
    if (mat.rows() != m * n || mat.cols() != m * n) throw DimensionError("realign: shape mismatch");
    ComplexMatrix out(m * m, n * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < n; ++l) out(i * m + k, j * n + l) = mat(i * n + j, k * n + l);
    return out;
}

ComplexMatrix realign(const BipartiteState& state) { return realign(state.matrix(), state.dims()); }

ComplexMatrix unrealign(const ComplexMatrix& realigned, BipartiteDims dims) {
    const std::size_t m = dims.m, n = dims.n;
    if (realigned.rows() != m * m || realigned.cols() != n * n)
        throw DimensionError("unrealign: shape mismatch");
    ComplexMatrix out(m * n, m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < n; ++l) out(i * n + j, k * n + l) = realigned(i * m + k, j * n + l);
    return out;
}

} // namespace eofb
