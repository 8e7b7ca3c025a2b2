#include "eofbounds/envelopes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace eofb {

double entropy_term(double p) { return p < 1e-15 ? 0.0 : -p * std::log(p); }

ProbVector::ProbVector(std::vector<double> probabilities) : p_(std::move(probabilities)) {
    if (p_.empty()) throw std::invalid_argument("ProbVector: empty");
    double sum = 0.0;
    for (double x : p_) {
        if (!std::isfinite(x) || x < 0.0) throw std::invalid_argument("ProbVector: negative or non-finite entry");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("ProbVector: entries do not sum to 1");
}

double ProbVector::linear_entropy() const {
    double s = 0.0;
    for (double x : p_) s += x * x;
    return 1.0 - s;
}

double shannon_entropy(const ProbVector& p) {
    double h = 0.0;
    for (double x : p.values()) h += entropy_term(x);
    return h;
}

std::string Branch::label() const { return "F_" + std::to_string(n1) + "_" + std::to_string(n2); }

std::optional<BranchEval> branch_solutions(Branch branch, double lambda, bool paper_domain) {
    if (branch.n1 < 1 || branch.n2 < 1) throw std::invalid_argument("branch counts must be positive");
    if (!(lambda >= 0.0 && lambda < 1.0)) throw std::out_of_range("branch_solutions: lambda outside [0, 1)");
    const double n1 = branch.n1, n2 = branch.n2, total = n1 + n2;
    if (paper_domain) {
        const double lo = std::max(1.0 - 1.0 / n1, 1.0 - 1.0 / n2);
        const double hi = 1.0 - 1.0 / total;
        if (lambda < lo || lambda > hi) return std::nullopt;
    }
    const double q = 1.0 - lambda;
    const double disc = n1 * n1 - n1 * total * (1.0 - n2 * q);
    if (disc < -1e-12) return std::nullopt;
    const double root = std::sqrt(std::max(disc, 0.0));
    const double alpha = (n1 + root) / (n1 * total);
    // same as (1 - n1 alpha)/n2, written without the cancellation near beta = 0
    const double beta = (1.0 - n1 * q) / (n2 + root);
    if (alpha < -1e-12 || beta < -1e-12) return std::nullopt;
    return BranchEval{alpha, beta, n1 * entropy_term(alpha) + n2 * entropy_term(beta)};
}

double branch_slope(const BranchEval& e) {
    const double a = std::max(e.alpha, 0.0), b = std::max(e.beta, 0.0);
    if (b <= 0.0 || a <= 0.0) return std::numeric_limits<double>::infinity();
    const double diff = a - b;
    if (std::abs(diff) < 1e-9 * (a + b)) return 1.0 / (a + b);
    return std::log(a / b) / (2.0 * diff);
}

double branch_value(Branch branch, double lambda) {
    const auto e = branch_solutions(branch, lambda);
    if (!e) throw std::domain_error(branch.label() + " is not valid at lambda = " + std::to_string(lambda));
    return e->value;
}

std::vector<Branch> branches_for(int m) {
    std::vector<Branch> out;
    for (int total = 2; total <= m; ++total)
        for (int n1 = 1; n1 < total; ++n1) out.push_back({n1, total - n1});
    return out;
}

std::string to_string(EnvelopeMode mode) { return mode == EnvelopeMode::paper ? "paper" : "oracle"; }

EnvelopeMode parse_mode(const std::string& text) {
    if (text == "paper") return EnvelopeMode::paper;
    if (text == "oracle") return EnvelopeMode::oracle;
    throw std::invalid_argument("unknown mode '" + text + "' (expected paper or oracle)");
}

double extremal_xy(int m, double lambda, Extremum which, EnvelopeMode mode) {
    if (m < 2) throw std::invalid_argument("extremal_xy: m must be at least 2");
    const double top = static_cast<double>(m - 1) / m;
    if (!(lambda > 0.0 && lambda <= top)) throw std::out_of_range("extremal_xy: lambda outside (0, (m-1)/m]");

    if (mode == EnvelopeMode::paper) {
        for (int k = 1; k < m; ++k) {
            const double hi = static_cast<double>(k) / (k + 1);
            if (lambda <= hi || k == m - 1) {
                const Branch b = which == Extremum::X ? Branch{1, k} : Branch{k, 1};
                return branch_value(b, lambda);
            }
        }
    }

    bool found = false;
    double best = 0.0;
    for (const Branch& b : branches_for(m)) {
        const auto e = branch_solutions(b, lambda);
        if (!e) continue;
        if (!found || (which == Extremum::X ? e->value > best : e->value < best)) best = e->value;
        found = true;
    }
    if (!found) throw std::logic_error("extremal_xy: no valid branch");
    return best;
}

Tangent tangent_solve(int m, double anchor_x, double anchor_y) {
    const double top = static_cast<double>(m - 1) / m;
    if (!(anchor_x > 0.0 && anchor_x <= top + 1e-15))
        throw std::out_of_range("tangent_solve: anchor outside (0, (m-1)/m]");
    const Branch f11{1, 1};
    const auto residual = [&](double t) {
        const auto e = branch_solutions(f11, t);
        return e->value + branch_slope(*e) * (anchor_x - t) - anchor_y;
    };
    double hi = std::min(anchor_x, 0.5);
    const double g_hi = residual(hi);
    if (std::abs(g_hi) <= 1e-12) return {branch_slope(*branch_solutions(f11, hi)), hi};
    if (g_hi > 0.0) throw std::domain_error("tangent_solve: no tangent to F_1_1 through the anchor");

    // g(0+) = +inf and g is decreasing (F_1_1 is concave), so bisection is safe
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) > 0.0) lo = mid; else hi = mid;
    }
    const double t = 0.5 * (lo + hi);
    return {branch_slope(*branch_solutions(f11, t)), t};
}

double ArcSegment::operator()(double x) const {
    return branch_value(branch, std::clamp(x, x0, x1));
}

double segment_x0(const Segment& s) {
    return std::visit([](const auto& seg) { return seg.x0; }, s);
}

double segment_x1(const Segment& s) {
    return std::visit([](const auto& seg) { return seg.x1; }, s);
}

double segment_value(const Segment& s, double x) {
    return std::visit([x](const auto& seg) { return seg(x); }, s);
}

PiecewiseCurve::PiecewiseCurve(double domain_max, std::vector<Segment> segments)
    : domain_max_(domain_max), segments_(std::move(segments)) {
    if (segments_.empty()) throw std::invalid_argument("PiecewiseCurve: no segments");
    for (std::size_t k = 0; k < segments_.size(); ++k) {
        if (!(segment_x1(segments_[k]) >= segment_x0(segments_[k])))
            throw std::invalid_argument("PiecewiseCurve: segment with x1 < x0");
        if (k == 0) continue;
        const double join = segment_x0(segments_[k]);
        if (join != segment_x1(segments_[k - 1]))
            throw std::invalid_argument("PiecewiseCurve: segments are not contiguous");
        const double jump = std::abs(segment_value(segments_[k], join) - segment_value(segments_[k - 1], join));
        if (jump > 1e-9) throw std::invalid_argument("PiecewiseCurve: discontinuity at " + std::to_string(join));
    }
    if (segment_x1(segments_.back()) != domain_max_)
        throw std::invalid_argument("PiecewiseCurve: last segment does not end at domain_max");
}

double PiecewiseCurve::domain_min() const { return segment_x0(segments_.front()); }

double PiecewiseCurve::operator()(double x) const {
    if (!(x >= domain_min() && x <= domain_max_)) throw std::out_of_range("curve evaluated outside its domain");
    const auto it = std::lower_bound(segments_.begin(), segments_.end(), x,
                                     [](const Segment& s, double v) { return segment_x1(s) < v; });
    return segment_value(it == segments_.end() ? segments_.back() : *it, x);
}

double PiecewiseCurve::eval(double x, bool clamp) const {
    if (clamp) {
        if (x <= 0.0) return 0.0;
        if (x >= domain_max_) return (*this)(domain_max_);
        if (x < domain_min()) return (*this)(domain_min());
    }
    return (*this)(x);
}

double curve_eval(const PiecewiseCurve& curve, double x, bool clamp) { return curve.eval(x, clamp); }

namespace {

double cross(const Point& a, const Point& b, const Point& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

} // namespace

std::vector<std::size_t> hull_vertices(std::span<const Point> samples, HullDirection direction) {
    if (samples.size() < 2) throw std::invalid_argument("hull: need at least two samples");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i].x > samples[i - 1].x)) throw std::invalid_argument("hull: samples unsorted or duplicate x");
    const double sign = direction == HullDirection::convex_minorant ? 1.0 : -1.0;
    std::vector<std::size_t> chain;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const Point p{samples[i].x, sign * samples[i].y};
        while (chain.size() >= 2) {
            const Point a{samples[chain[chain.size() - 2]].x, sign * samples[chain[chain.size() - 2]].y};
            const Point b{samples[chain.back()].x, sign * samples[chain.back()].y};
            if (cross(a, b, p) > 0.0) break;
            chain.pop_back();
        }
        chain.push_back(i);
    }
    return chain;
}

PiecewiseCurve hull(std::span<const Point> samples, HullDirection direction) {
    const auto chain = hull_vertices(samples, direction);
    std::vector<Segment> segs;
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        const Point& a = samples[chain[k]];
        const Point& b = samples[chain[k + 1]];
        segs.emplace_back(LineSegment{a.x, b.x, (b.y - a.y) / (b.x - a.x), a.x, a.y});
    }
    return PiecewiseCurve(samples.back().x, std::move(segs));
}

} // namespace eofb
