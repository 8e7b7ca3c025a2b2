#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "eofbounds/matops.hpp"

namespace eofb {

namespace {

constexpr int kMaxSweeps = 100;

// Unitary U (2x2, embedded at p,q) with U^dagger [[a, b], [conj(b), d]] U diagonal.
struct Rotation {
    cplx pp, pq, qp, qq;
};

Rotation hermitian_rotation(double a, double d, cplx b) {
    const double abs_b = std::abs(b);
    const cplx phase = std::conj(b / abs_b);
    const double theta = (d - a) / (2.0 * abs_b);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    return {c, s, -s * phase, c * phase};
}

} // namespace

EigenDecomposition hermitian_eig(const ComplexMatrix& mat) {
    if (!mat.is_square()) throw std::invalid_argument("hermitian_eig: matrix is not square");
    const double herm = mat.hermiticity_error();
    if (herm > 1e-9) throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");

    const std::size_t n = mat.rows();
    ComplexMatrix a = mat;
    for (std::size_t r = 0; r < n; ++r) {
        a(r, r) = mat(r, r).real();
        for (std::size_t c = r + 1; c < n; ++c) {
            a(r, c) = 0.5 * (mat(r, c) + std::conj(mat(c, r)));
            a(c, r) = std::conj(a(r, c));
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = a.frobenius_norm();
    for (int sweep = 0; sweep < kMaxSweeps && scale > 0.0; ++sweep) {
        double off = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (r != c) off += std::norm(a(r, c));
        if (std::sqrt(off) < 1e-13 * scale) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx b = a(p, q);
                if (std::abs(b) == 0.0) continue;
                const Rotation u = hermitian_rotation(a(p, p).real(), a(q, q).real(), b);
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * u.pp + akq * u.qp;
                    a(k, q) = akp * u.pq + akq * u.qq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(u.pp) * apk + std::conj(u.qp) * aqk;
                    a(q, k) = std::conj(u.pq) * apk + std::conj(u.qq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * u.pp + vkq * u.qp;
                    v(k, q) = vkp * u.pq + vkq * u.qq;
                }
            }
        }
    }

    // fix each eigenvector's phase
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t best = 0;
        for (std::size_t r = 1; r < n; ++r)
            if (std::abs(v(r, c)) > std::abs(v(best, c))) best = r;
        const double mag = std::abs(v(best, c));
        if (mag == 0.0) continue;
        const cplx phase = std::conj(v(best, c)) / mag;
        for (std::size_t r = 0; r < n; ++r) v(r, c) *= phase;
        v(best, c) = v(best, c).real();
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const double vx = a(x, x).real(), vy = a(y, y).real();
        if (vx != vy) return vx < vy;
        for (std::size_t r = 0; r < n; ++r) {
            if (v(r, x).real() != v(r, y).real()) return v(r, x).real() < v(r, y).real();
            if (v(r, x).imag() != v(r, y).imag()) return v(r, x).imag() < v(r, y).imag();
        }
        return x < y;
    });

    EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t c = 0; c < n; ++c) {
        out.values[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& mat) { return hermitian_eig(mat).values; }

std::vector<double> singular_values(const ComplexMatrix& mat) {
    // Columns of the tall orientation; for wide input work on M^dagger.
    const bool tall = mat.rows() >= mat.cols();
    const std::size_t len = tall ? mat.rows() : mat.cols();
    const std::size_t k = tall ? mat.cols() : mat.rows();
    std::vector<std::vector<cplx>> col(k, std::vector<cplx>(len));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < len; ++i) col[j][i] = tall ? mat(i, j) : std::conj(mat(j, i));

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < k; ++p) {
            for (std::size_t q = p + 1; q < k; ++q) {
                double alpha = 0.0, beta = 0.0;
                cplx g = 0.0;
                for (std::size_t i = 0; i < len; ++i) {
                    alpha += std::norm(col[p][i]);
                    beta += std::norm(col[q][i]);
                    g += std::conj(col[p][i]) * col[q][i];
                }
                const double abs_g = std::abs(g);
                if (abs_g == 0.0 || abs_g <= 1e-15 * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const Rotation u = hermitian_rotation(alpha, beta, g);
                for (std::size_t i = 0; i < len; ++i) {
                    const cplx xp = col[p][i], xq = col[q][i];
                    col[p][i] = xp * u.pp + xq * u.qp;
                    col[q][i] = xp * u.pq + xq * u.qq;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sv(k);
    for (std::size_t j = 0; j < k; ++j) {
        double s = 0.0;
        for (const cplx& z : col[j]) s += std::norm(z);
        sv[j] = std::sqrt(s);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

double trace_norm(const ComplexMatrix& mat) {
    const auto sv = singular_values(mat);
    return std::accumulate(sv.begin(), sv.end(), 0.0);
}

} // namespace eofb
