#pragma once

// Tangent-space analysis on the half-circle K = [0, pi): angle maps G_{p,q}
// induced by the matrices M_{p,q} = A_R^q A_L^p, their norm functions H_{p,q},
// fixed points, the unmixed test, and the expansion check that certifies an
// invariant expanding cone.

#include <optional>
#include <variant>
#include <vector>

#include "bcnf/core_map.hpp"

namespace bcnf {

// Angles live on K = [0, pi) with 0 and pi identified (directions of lines
// through the origin). All angle-returning functions reduce into [0, pi).
double normalize_angle(double theta);

// Metric on K: min(|a-b|, pi - |a-b|).
double circle_distance(double a, double b);

// Closed arc [lo, hi] on K; lo > hi means the arc wraps through 0 == pi.
struct CircleInterval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double theta) const;
    bool strictly_contains(double theta) const;
    double length() const;        // arc length traversed from lo to hi
    double midpoint() const;
};

bool intervals_intersect(const CircleInterval& a, const CircleInterval& b);

// Angle of M*(cos theta, sin theta), computed with atan2 of the image vector
// (never via the tangent quotient, which is singular on vertical images).
double angle_map(const Mat2& m, double theta);

// Euclidean norm of M*(cos theta, sin theta).
double norm_map(const Mat2& m, double theta);

// dG/dtheta = det(M) / H(theta)^2; strictly positive for det(M) > 0.
double angle_derivative(const Mat2& m, double theta);

// Stable and unstable fixed angles of the angle map of one matrix, i.e. its
// eigen-directions. eta = lambda_2/lambda_1 is the derivative of the angle
// map at the stable angle.
struct AnglePair {
    double stable = 0.0;
    double unstable = 0.0;
    int p = 0;
    int q = 0;
    double eta = 0.0;
};

// Empty when det(M) >= trace(M)^2/4 (complex or repeated eigenvalues) or the
// real eigenvalues have equal magnitude.
std::optional<AnglePair> fixed_points(const Mat2& m);

// The rectangle of (p, q) exponent pairs the prover has to certify.
struct GammaSet {
    int p_min = 1, p_max = 1;
    int q_min = 1, q_max = 1;
};

struct GammaEntry {
    int p = 0, q = 0;
    Mat2 m;
};

// All M_{p,q} over the rectangle, row-major (p outer, q inner). This order
// also fixes which failing pair checks report first.
std::vector<GammaEntry> gamma_matrices(const Params& params, const GammaSet& g);

// Fixed points of every matrix in Gamma; empty if some matrix has none.
std::optional<std::vector<AnglePair>> gamma_angle_pairs(const Params& params,
                                                        const GammaSet& g);

// Minimal closed arc containing every stable angle and no unstable angle,
// with stable angles as endpoints; empty = the fixed points are mixed.
// Candidate arcs are complements of gaps between circularly consecutive
// stable angles; one exists iff a single gap holds all unstable angles.
std::optional<CircleInterval> unmixed_interval(const std::vector<AnglePair>& pairs);

// True iff both endpoint images of J lie in J for every (p,q) in Gamma.
// Each G is a monotone degree-one circle map, so this pins G(J) within J.
// J's endpoints are fixed points of their own angle maps, so membership is
// relaxed by tol (circle distance) to absorb the one-ulp images.
bool invariance_check(const Params& params, const GammaSet& g, const CircleInterval& j,
                      double tol = 1e-9);

// True iff J_eps = [lo - eps, hi + eps] maps strictly inside itself for
// every (p,q) in Gamma. Diagnostic only; the prover verdict never uses it.
bool contracting_margin_check(const Params& params, const GammaSet& g,
                              const CircleInterval& j, double eps);

// Angles where H crosses 1, labelled by the sign of dH/dtheta there;
// H < 1 exactly on (dec, inc) in circle order.
struct ExpansionCrossing {
    double dec = 0.0;
    double inc = 0.0;
};

enum class CrossingAbsence { AllAbove, NotExpanding };

using CrossingResult = std::variant<ExpansionCrossing, CrossingAbsence>;

// Solves (b^2+d^2-1) tan^2 + 2(ab+cd) tan + (a^2+c^2-1) = 0 on K. A leading
// coefficient below 1e-12 degenerates to the linear case with pi/2 as the
// extra root; a discriminant within 1e-12 of zero counts as a double root
// and lands in the no-crossing branch.
CrossingResult unit_crossings(const Mat2& m);

// Minimum of H over the arc: endpoint values plus any interior critical
// angle of the sinusoid H^2(theta) = alpha + beta cos 2theta + gamma sin 2theta.
double arc_min_norm(const Mat2& m, const CircleInterval& j);

struct ExpansionCheck {
    bool passed = false;
    double factor = 0.0;  // min over Gamma and J of H, > 1 when passed
    int failing_p = 0;
    int failing_q = 0;
};

// Requires, for every (p,q) in Gamma, two H = 1 crossings with
// [dec, inc] disjoint from J; reports the first offending pair otherwise
// (missing crossings count as failure, matching the decision procedure).
ExpansionCheck expansion_check(const Params& params, const GammaSet& g,
                               const CircleInterval& j);

}  // namespace bcnf
