#include "bcnf/cone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bcnf {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kDegenerateCoeff = 1e-12;
constexpr double kAngleMergeTol = 1e-10;
}  // namespace

double normalize_angle(double theta) {
    theta = std::fmod(theta, kPi);
    if (theta < 0.0) theta += kPi;
    if (theta >= kPi) theta = 0.0;
    return theta;
}

double circle_distance(double a, double b) {
    const double d = std::fabs(normalize_angle(a) - normalize_angle(b));
    return std::min(d, kPi - d);
}

bool CircleInterval::contains(double theta) const {
    theta = normalize_angle(theta);
    if (lo <= hi) return lo <= theta && theta <= hi;
    return theta >= lo || theta <= hi;
}

bool CircleInterval::strictly_contains(double theta) const {
    theta = normalize_angle(theta);
    if (lo <= hi) return lo < theta && theta < hi;
    return theta > lo || theta < hi;
}

double CircleInterval::length() const {
    return lo <= hi ? hi - lo : hi - lo + kPi;
}

double CircleInterval::midpoint() const {
    return normalize_angle(lo + 0.5 * length());
}

bool intervals_intersect(const CircleInterval& a, const CircleInterval& b) {
    return a.contains(b.lo) || a.contains(b.hi) || b.contains(a.lo) || b.contains(a.hi);
}

double angle_map(const Mat2& m, double theta) {
    const Point w = mat_vec(m, {std::cos(theta), std::sin(theta)});
    return normalize_angle(std::atan2(w.y, w.x));
}

double norm_map(const Mat2& m, double theta) {
    return norm(mat_vec(m, {std::cos(theta), std::sin(theta)}));
}

double angle_derivative(const Mat2& m, double theta) {
    const double h = norm_map(m, theta);
    return det(m) / (h * h);
}

std::optional<AnglePair> fixed_points(const Mat2& m) {
    const double tr = trace(m);
    const double dt = det(m);
    const double disc = tr * tr - 4.0 * dt;
    if (!(disc > 0.0)) return std::nullopt;
    const double root = std::sqrt(disc);
    const double l1 = 0.5 * (tr + root);
    const double l2 = 0.5 * (tr - root);
    const double mag1 = std::fabs(l1), mag2 = std::fabs(l2);
    if (mag1 == mag2) return std::nullopt;
    const double dominant = mag1 > mag2 ? l1 : l2;
    const double other = mag1 > mag2 ? l2 : l1;

    AnglePair pair;
    pair.eta = other / dominant;
    if (m.b != 0.0) {
        pair.stable = normalize_angle(std::atan((dominant - m.a) / m.b));
        pair.unstable = normalize_angle(std::atan((other - m.a) / m.b));
    } else {
        // Eigenvalues are a and d; the eigenvector of a spans angle
        // atan(c/(a-d)), the eigenvector of d spans pi/2.
        const double off_axis = normalize_angle(std::atan(m.c / (m.a - m.d)));
        pair.stable = std::fabs(m.a) > std::fabs(m.d) ? off_axis : kPi / 2.0;
        pair.unstable = std::fabs(m.a) > std::fabs(m.d) ? kPi / 2.0 : off_axis;
    }
    return pair;
}

std::vector<GammaEntry> gamma_matrices(const Params& params, const GammaSet& g) {
    std::vector<GammaEntry> out;
    out.reserve(static_cast<size_t>((g.p_max - g.p_min + 1) * (g.q_max - g.q_min + 1)));
    for (int p = g.p_min; p <= g.p_max; ++p) {
        const Mat2 alp = mat_pow(branch_matrix(params, Side::L), p);
        for (int q = g.q_min; q <= g.q_max; ++q) {
            out.push_back({p, q, mat_mul(mat_pow(branch_matrix(params, Side::R), q), alp)});
        }
    }
    return out;
}

std::optional<std::vector<AnglePair>> gamma_angle_pairs(const Params& params,
                                                        const GammaSet& g) {
    std::vector<AnglePair> pairs;
    for (const GammaEntry& e : gamma_matrices(params, g)) {
        auto fp = fixed_points(e.m);
        if (!fp) return std::nullopt;
        fp->p = e.p;
        fp->q = e.q;
        pairs.push_back(*fp);
    }
    return pairs;
}

namespace {

// Deduplicate a sorted angle list, merging neighbours (and the wrap pair)
// closer than kAngleMergeTol.
std::vector<double> merge_close(std::vector<double> angles) {
    std::sort(angles.begin(), angles.end());
    std::vector<double> out;
    for (double a : angles) {
        if (out.empty() || circle_distance(out.back(), a) > kAngleMergeTol) out.push_back(a);
    }
    if (out.size() > 1 && circle_distance(out.front(), out.back()) <= kAngleMergeTol) out.pop_back();
    return out;
}

}  // namespace

std::optional<CircleInterval> unmixed_interval(const std::vector<AnglePair>& pairs) {
    if (pairs.empty()) throw std::invalid_argument("unmixed_interval: empty pair list");
    std::vector<double> stables, unstables;
    for (const AnglePair& p : pairs) {
        stables.push_back(normalize_angle(p.stable));
        unstables.push_back(normalize_angle(p.unstable));
    }
    stables = merge_close(std::move(stables));
    unstables = merge_close(std::move(unstables));

    // Gap after stables[i] runs to the circularly next stable angle. The
    // candidate J is the complement of a gap, so J exists iff one gap holds
    // every unstable angle strictly inside.
    const int n = static_cast<int>(stables.size());
    std::optional<CircleInterval> best;
    for (int i = 0; i < n; ++i) {
        const double g_lo = stables[static_cast<size_t>(i)];
        const double g_hi = stables[static_cast<size_t>((i + 1) % n)];
        const CircleInterval gap{g_lo, g_hi};  // degenerate when n == 1: whole circle minus point
        bool all_inside = true;
        for (double u : unstables) {
            const bool inside = (n == 1) ? circle_distance(u, g_lo) > 0.0
                                         : gap.strictly_contains(u);
            if (!inside) { all_inside = false; break; }
        }
        if (!all_inside) continue;
        const CircleInterval j{g_hi, g_lo};
        if (!best || j.length() < best->length()) best = j;
    }
    return best;
}

bool invariance_check(const Params& params, const GammaSet& g, const CircleInterval& j,
                      double tol) {
    const auto inside = [&](double theta) {
        return j.contains(theta) || circle_distance(theta, j.lo) <= tol ||
               circle_distance(theta, j.hi) <= tol;
    };
    for (const GammaEntry& e : gamma_matrices(params, g)) {
        if (!inside(angle_map(e.m, j.lo))) return false;
        if (!inside(angle_map(e.m, j.hi))) return false;
    }
    return true;
}

bool contracting_margin_check(const Params& params, const GammaSet& g,
                              const CircleInterval& j, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("contracting_margin_check: eps must be > 0");
    if (j.length() + 2.0 * eps >= kPi) return false;
    const CircleInterval je{normalize_angle(j.lo - eps), normalize_angle(j.hi + eps)};
    for (const GammaEntry& e : gamma_matrices(params, g)) {
        // The image of J_eps under a monotone degree-one circle map is the
        // arc between the endpoint images; containment is checked as arcs,
        // not pointwise (a wrapped endpoint image can land back inside even
        // though the image arc covers the complement).
        const double img_lo = angle_map(e.m, je.lo);
        const double img_len = normalize_angle(angle_map(e.m, je.hi) - img_lo);
        const double offset = normalize_angle(img_lo - je.lo);
        if (!(offset > 0.0 && offset + img_len < je.length())) return false;
    }
    return true;
}

namespace {

struct SinusoidCoeffs {
    double alpha, beta, gamma;  // H^2(theta) = alpha + beta cos 2theta + gamma sin 2theta
};

SinusoidCoeffs norm_squared_coeffs(const Mat2& m) {
    return {(m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d) / 2.0,
            (m.a * m.a + m.c * m.c - m.b * m.b - m.d * m.d) / 2.0,
            m.a * m.b + m.c * m.d};
}

// Derivative of H^2 at theta.
double norm_squared_slope(const SinusoidCoeffs& s, double theta) {
    return -2.0 * s.beta * std::sin(2.0 * theta) + 2.0 * s.gamma * std::cos(2.0 * theta);
}

}  // namespace

CrossingResult unit_crossings(const Mat2& m) {
    const double qa = m.b * m.b + m.d * m.d - 1.0;
    const double qb = 2.0 * (m.a * m.b + m.c * m.d);
    const double qc = m.a * m.a + m.c * m.c - 1.0;

    std::vector<double> roots;
    if (std::fabs(qa) < kDegenerateCoeff) {
        // Leading coefficient vanishes: theta = pi/2 is a root, plus at most
        // one root from the linear remainder.
        roots.push_back(kPi / 2.0);
        if (std::fabs(qb) >= kDegenerateCoeff) roots.push_back(normalize_angle(std::atan(-qc / qb)));
    } else {
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc > kDegenerateCoeff) {
            const double root = std::sqrt(disc);
            roots.push_back(normalize_angle(std::atan((-qb + root) / (2.0 * qa))));
            roots.push_back(normalize_angle(std::atan((-qb - root) / (2.0 * qa))));
        }
    }

    if (roots.size() == 2 && circle_distance(roots[0], roots[1]) > 0.0) {
        const SinusoidCoeffs s = norm_squared_coeffs(m);
        const double slope0 = norm_squared_slope(s, roots[0]);
        ExpansionCrossing x;
        x.dec = slope0 < 0.0 ? roots[0] : roots[1];
        x.inc = slope0 < 0.0 ? roots[1] : roots[0];
        // Consistency: H dips below 1 between the two crossings.
        if (norm_map(m, CircleInterval{x.dec, x.inc}.midpoint()) < 1.0) return x;
    }
    return norm_map(m, 0.0) > 1.0 ? CrossingAbsence::AllAbove : CrossingAbsence::NotExpanding;
}

double arc_min_norm(const Mat2& m, const CircleInterval& j) {
    const SinusoidCoeffs s = norm_squared_coeffs(m);
    double lo2 = std::min(norm_map(m, j.lo), norm_map(m, j.hi));
    // Critical angles of the sinusoid in 2theta, half a turn apart on K.
    const double crit = normalize_angle(0.5 * std::atan2(s.gamma, s.beta));
    for (double theta : {crit, normalize_angle(crit + kPi / 2.0)}) {
        if (j.contains(theta)) lo2 = std::min(lo2, norm_map(m, theta));
    }
    return lo2;
}

ExpansionCheck expansion_check(const Params& params, const GammaSet& g,
                               const CircleInterval& j) {
    ExpansionCheck result;
    double factor = std::numeric_limits<double>::infinity();
    for (const GammaEntry& e : gamma_matrices(params, g)) {
        const CrossingResult cr = unit_crossings(e.m);
        const auto* crossing = std::get_if<ExpansionCrossing>(&cr);
        if (!crossing || intervals_intersect(j, {crossing->dec, crossing->inc})) {
            result.failing_p = e.p;
            result.failing_q = e.q;
            return result;
        }
        factor = std::min(factor, arc_min_norm(e.m, j));
    }
    result.passed = factor > 1.0;
    result.factor = factor;
    if (!result.passed) {
        // H > 1 pointwise on J is forced by the disjointness test; reaching
        // here means a numerical inconsistency, reported as a failure of the
        // first pair.
        result.failing_p = g.p_min;
        result.failing_q = g.q_min;
    }
    return result;
}

}  // namespace bcnf
