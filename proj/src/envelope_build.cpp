#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "eofbounds/envelopes.hpp"
#include "eofbounds/errors.hpp"
#include "hull_detail.hpp"

namespace eofb {

namespace {

constexpr double kTieTol = 1e-12;

struct Sample {
    double x = 0.0;
    double y = 0.0;
    std::vector<std::size_t> branches; // indices of branches attaining the extremum
};

// Uniform grid over [0, (m-1)/m] plus the uniform-distribution points 1 - 1/k,
// where Y has its kinks.
std::vector<double> sample_abscissae(int m, std::size_t grid) {
    const double top = static_cast<double>(m - 1) / m;
    std::vector<std::pair<double, bool>> xs;
    xs.reserve(grid + m);
    for (std::size_t i = 0; i < grid; ++i)
        xs.emplace_back(i + 1 == grid ? top : top * static_cast<double>(i) / static_cast<double>(grid - 1), false);
    for (int k = 2; k < m; ++k) xs.emplace_back(1.0 - 1.0 / k, true);
    std::sort(xs.begin(), xs.end());

    std::vector<double> out;
    std::vector<bool> special;
    for (const auto& [x, is_special] : xs) {
        if (!out.empty() && x - out.back() < 1e-12) {
            if (is_special && !special.back()) out.back() = x, special.back() = true;
            continue;
        }
        out.push_back(x);
        special.push_back(is_special);
    }
    out.front() = 0.0;
    out.back() = top;
    return out;
}

std::vector<Sample> extremal_samples(int m, std::size_t grid, Extremum which) {
    const auto branches = branches_for(m);
    const auto xs = sample_abscissae(m, grid);
    std::vector<Sample> out;
    out.reserve(xs.size());
    std::vector<double> values(branches.size());
    std::vector<bool> valid(branches.size());
    for (double x : xs) {
        Sample s{x, 0.0, {}};
        bool found = false;
        for (std::size_t b = 0; b < branches.size(); ++b) {
            const auto e = branch_solutions(branches[b], x);
            valid[b] = e.has_value();
            if (!e) continue;
            values[b] = e->value;
            if (!found || (which == Extremum::X ? e->value > s.y : e->value < s.y)) s.y = e->value;
            found = true;
        }
        if (!found) throw std::logic_error("no valid branch at lambda = " + std::to_string(x));
        for (std::size_t b = 0; b < branches.size(); ++b)
            if (valid[b] && std::abs(values[b] - s.y) <= kTieTol) s.branches.push_back(b);
        out.push_back(std::move(s));
    }
    out.front().y = 0.0;
    out.back().y = std::log(static_cast<double>(m));
    return out;
}

// Touch point t in [lo, hi] of the tangent to branch b through p.
std::optional<double> tangent_point(Branch b, Point p, double lo, double hi) {
    const auto residual = [&](double t) -> std::optional<double> {
        const auto e = branch_solutions(b, t);
        if (!e) return std::nullopt;
        const double run = p.x - t;
        const double slope = branch_slope(*e);
        if (std::isinf(slope)) return run > 0.0 ? slope : -slope;
        return e->value + slope * run - p.y;
    };
    if (!(hi > lo)) return std::nullopt;
    auto g_lo = residual(lo);
    auto g_hi = residual(hi);
    if (!g_lo || !g_hi) return std::nullopt;
    if (*g_lo == 0.0) return lo;
    if (*g_hi == 0.0) return hi;
    if ((*g_lo > 0.0) == (*g_hi > 0.0)) return std::nullopt;
    const bool lo_positive = *g_lo > 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto g = residual(mid);
        if (!g) return std::nullopt;
        if ((*g > 0.0) == lo_positive) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

struct Piece {
    bool arc = false;
    std::size_t i = 0; // sample index of the left vertex
    std::size_t j = 0; // sample index of the right vertex
    std::size_t branch = 0;
};

PiecewiseCurve oracle_curve(int m, std::size_t grid, Extremum which) {
    const auto branches = branches_for(m);
    const auto samples = extremal_samples(m, grid, which);
    std::vector<Point> pts(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k) pts[k] = {samples[k].x, samples[k].y};
    const auto dir = which == Extremum::X ? HullDirection::concave_majorant : HullDirection::convex_minorant;
    const auto chain = hull_vertices(pts, dir);

    std::vector<Piece> pieces;
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        const std::size_t i = chain[k], j = chain[k + 1];
        Piece p{false, i, j, 0};
        if (j == i + 1) {
            const auto& bi = samples[i].branches;
            const auto& bj = samples[j].branches;
            std::optional<std::size_t> common;
            if (!pieces.empty() && pieces.back().arc) {
                const std::size_t prev = pieces.back().branch;
                if (std::count(bi.begin(), bi.end(), prev) && std::count(bj.begin(), bj.end(), prev)) common = prev;
            }
            for (std::size_t b : bi) {
                if (common) break;
                if (std::count(bj.begin(), bj.end(), b)) common = b;
            }
            if (common) p = {true, i, j, *common};
        }
        if (p.arc && !pieces.empty() && pieces.back().arc && pieces.back().branch == p.branch)
            pieces.back().j = j;
        else
            pieces.push_back(p);
    }

    std::vector<Segment> segs;
    for (const Piece& p : pieces) {
        const Point& a = pts[p.i];
        const Point& b = pts[p.j];
        if (p.arc)
            segs.emplace_back(ArcSegment{branches[p.branch], a.x, b.x});
        else
            segs.emplace_back(LineSegment{a.x, b.x, (b.y - a.y) / (b.x - a.x), a.x, a.y});
    }

    // Lines leaving or entering an arc are moved onto exact tangents.
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        if (pieces[k].arc) continue;
        const bool left_arc = k > 0 && pieces[k - 1].arc;
        const bool right_arc = k + 1 < pieces.size() && pieces[k + 1].arc;
        if (!left_arc && !right_arc) continue;
        const std::size_t vi = pieces[k].i, vj = pieces[k].j;
        Point left = pts[vi], right = pts[vj];
        for (int it = 0; it < 100; ++it) {
            const Point before_l = left, before_r = right;
            if (left_arc) {
                const auto& arc = std::get<ArcSegment>(segs[k - 1]);
                const double lo = std::max(pts[vi - 1].x, arc.x0);
                const double hi = std::min(pts[vi + 1].x, right.x);
                if (const auto t = tangent_point(arc.branch, right, lo, hi)) left = {*t, branch_value(arc.branch, *t)};
            }
            if (right_arc) {
                const auto& arc = std::get<ArcSegment>(segs[k + 1]);
                const double lo = std::max(pts[vj - 1].x, left.x);
                const double hi = std::min(vj + 1 < pts.size() ? pts[vj + 1].x : arc.x1, arc.x1);
                if (const auto t = tangent_point(arc.branch, left, lo, hi)) right = {*t, branch_value(arc.branch, *t)};
            }
            if (!(left_arc && right_arc)) break;
            if (std::abs(left.x - before_l.x) < 1e-16 && std::abs(right.x - before_r.x) < 1e-16) break;
        }
        if (left_arc) std::get<ArcSegment>(segs[k - 1]).x1 = left.x;
        if (right_arc) std::get<ArcSegment>(segs[k + 1]).x0 = right.x;
        segs[k] = LineSegment{left.x, right.x, (right.y - left.y) / (right.x - left.x), left.x, left.y};
    }

    return PiecewiseCurve(pts.back().x, std::move(segs));
}

PiecewiseCurve paper_eta(int m) {
    std::vector<Segment> segs;
    for (int i = 0; i + 1 < m; ++i) {
        const double x0 = static_cast<double>(i) / (i + 1), x1 = static_cast<double>(i + 1) / (i + 2);
        const double y0 = std::log(static_cast<double>(i + 1)), y1 = std::log(static_cast<double>(i + 2));
        segs.emplace_back(LineSegment{x0, x1, (y1 - y0) / (x1 - x0), x0, y0});
    }
    return PiecewiseCurve(static_cast<double>(m - 1) / m, std::move(segs));
}

PiecewiseCurve paper_epsilon(int m) {
    const Branch f11{1, 1};
    if (m == 2) return PiecewiseCurve(0.5, {ArcSegment{f11, 0.0, 0.5}});

    const double top = static_cast<double>(m - 1) / m;
    const double anchor_x = static_cast<double>(m - 2) / (m - 1);
    const double anchor_y = branch_value(Branch{1, m - 1}, anchor_x);
    const Tangent tan = tangent_solve(m, anchor_x, anchor_y);
    const double touch_y = branch_value(f11, tan.touch_x);
    const double end_y = std::log(static_cast<double>(m));

    std::vector<Segment> segs;
    segs.emplace_back(ArcSegment{f11, 0.0, tan.touch_x});
    segs.emplace_back(LineSegment{tan.touch_x, anchor_x, (anchor_y - touch_y) / (anchor_x - tan.touch_x),
                                  tan.touch_x, touch_y});
    segs.emplace_back(LineSegment{anchor_x, top, (end_y - anchor_y) / (top - anchor_x), anchor_x, anchor_y});
    return PiecewiseCurve(top, std::move(segs));
}

} // namespace

EnvelopeSet build_envelopes(int m, EnvelopeMode mode, std::size_t grid, int max_dim) {
    if (m < 2 || m > max_dim)
        throw DimensionError("envelope dimension " + std::to_string(m) + " outside [2, " + std::to_string(max_dim) +
                             "]");
    if (mode == EnvelopeMode::paper) return EnvelopeSet{m, mode, paper_eta(m), paper_epsilon(m)};
    if (grid < 3) throw std::invalid_argument("build_envelopes: grid must have at least 3 points");
    return EnvelopeSet{m, mode, oracle_curve(m, grid, Extremum::X), oracle_curve(m, grid, Extremum::Y)};
}

} // namespace eofb
