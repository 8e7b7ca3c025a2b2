#pragma once

// Entropy-versus-purity extremal curves.
//
// For a Schmidt vector mu with lambda = 1 - sum mu_i^2, X(lambda) and Y(lambda)
// are the largest and smallest Shannon entropies on the purity shell. Extrema
// sit on two-valued distributions (n1 entries alpha, n2 entries beta), whose
// entropy along the shell is the branch function F_{n1,n2}. eta is the smallest
// concave majorant of X and epsilon the largest convex minorant of Y.
//
// Two constructions are provided:
//  - paper mode: the broken lines and tangent construction with the published
//    layout; reproduced for comparison, not certified as bounds;
//  - oracle mode: hulls of the numerically extremized curves, with analytic
//    arcs wherever the hull follows a branch.
//
// All entropies are in nats.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace eofb {

inline constexpr int kDefaultMaxEnvelopeDim = 8;
inline constexpr std::size_t kDefaultGrid = 10001;

/// h(p) = -p log p, with h(p) = 0 for p < 1e-15.
double entropy_term(double p);

/// Nonnegative weights summing to one within 1e-12.
class ProbVector {
public:
    explicit ProbVector(std::vector<double> probabilities);

    std::span<const double> values() const noexcept { return p_; }
    std::size_t size() const noexcept { return p_.size(); }
    /// 1 - sum p_i^2
    double linear_entropy() const;

private:
    std::vector<double> p_;
};

double shannon_entropy(const ProbVector& p);

struct Branch {
    int n1 = 1;
    int n2 = 1;

    std::string label() const; // "F_n1_n2"
    bool operator==(const Branch&) const = default;
};

struct BranchEval {
    double alpha = 0.0;
    double beta = 0.0;
    double value = 0.0;
};

/// Two-valued critical point on the purity shell using the larger root for alpha.
/// Absent when the discriminant or either probability is below -1e-12. With
/// paper_domain set, additionally requires
/// max(1 - 1/n1, 1 - 1/n2) <= lambda <= 1 - 1/(n1 + n2).
std::optional<BranchEval> branch_solutions(Branch branch, double lambda, bool paper_domain = false);

/// dF/dlambda at a branch point: log(alpha/beta) / (2 (alpha - beta)).
/// +inf when beta = 0.
double branch_slope(const BranchEval& eval);

/// Value of a branch that must be valid at lambda; throws std::domain_error otherwise.
double branch_value(Branch branch, double lambda);

/// All ordered (n1, n2) with n1 + n2 <= m, ordered by n1 + n2 then n1.
std::vector<Branch> branches_for(int m);

enum class EnvelopeMode { paper, oracle };
enum class Extremum { X, Y };

std::string to_string(EnvelopeMode mode);
EnvelopeMode parse_mode(const std::string& text);

/// X (maximum) or Y (minimum) entropy at purity complement lambda in (0, (m-1)/m].
/// Paper mode uses F_{1,k} / F_{k,1} on ((k-1)/k, k/(k+1)]; oracle mode takes the
/// extremum over every valid branch.
double extremal_xy(int m, double lambda, Extremum which, EnvelopeMode mode);

struct Tangent {
    double slope = 0.0;
    double touch_x = 0.0;
};

/// Line through (anchor_x, anchor_y) tangent to F_{1,1} at touch_x in (0, min(anchor_x, 1/2)].
/// Throws std::domain_error when the anchor lies below every tangent.
Tangent tangent_solve(int m, double anchor_x, double anchor_y);

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct LineSegment {
    double x0 = 0.0;
    double x1 = 0.0;
    double slope = 0.0;
    double anchor_x = 0.0;
    double anchor_y = 0.0;

    double operator()(double x) const { return anchor_y + slope * (x - anchor_x); }
};

struct ArcSegment {
    Branch branch;
    double x0 = 0.0;
    double x1 = 0.0;

    double operator()(double x) const;
};

using Segment = std::variant<LineSegment, ArcSegment>;

double segment_x0(const Segment& s);
double segment_x1(const Segment& s);
double segment_value(const Segment& s, double x);

/// Contiguous segments covering [x0 of the first, domain_max], continuous at
/// junctions within 1e-9. Segment k covers (x0_k, x1_k].
class PiecewiseCurve {
public:
    PiecewiseCurve(double domain_max, std::vector<Segment> segments);

    double domain_min() const;
    double domain_max() const noexcept { return domain_max_; }
    const std::vector<Segment>& segments() const noexcept { return segments_; }

    /// Unclamped evaluation; throws std::out_of_range outside the domain.
    double operator()(double x) const;
    /// With clamp: x <= 0 gives 0 and x >= domain_max gives the endpoint value.
    double eval(double x, bool clamp) const;

private:
    double domain_max_;
    std::vector<Segment> segments_;
};

double curve_eval(const PiecewiseCurve& curve, double x, bool clamp);

enum class HullDirection { convex_minorant, concave_majorant };

/// Monotone-chain hull of samples sorted by strictly increasing x (at least two).
PiecewiseCurve hull(std::span<const Point> samples, HullDirection direction);

struct EnvelopeSet {
    int m = 2;
    EnvelopeMode mode = EnvelopeMode::oracle;
    PiecewiseCurve eta;
    PiecewiseCurve epsilon;

    double domain_max() const { return eta.domain_max(); }
};

/// Throws DimensionError unless 2 <= m <= max_dim.
EnvelopeSet build_envelopes(int m, EnvelopeMode mode, std::size_t grid = kDefaultGrid,
                            int max_dim = kDefaultMaxEnvelopeDim);

} // namespace eofb
