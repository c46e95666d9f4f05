#include "bcnf/prover.hpp"

#include <algorithm>
#include <cmath>

namespace bcnf {

namespace {

// Candidate test for one corner (0, c_p): the two invariance conditions
// that involve only this corner's own orbit.
struct CornerCheck {
    bool returning = false;
    bool passed = false;
    int q = 0;
};

enum class CornerRole { S, T };

CornerCheck check_corner_candidate(const Params& params, const PreimageFan& fan, int p,
                                   CornerRole role, const EscapeCaps& caps, double margin) {
    CornerCheck out;
    const Point corner{0.0, fan.line(p).c};
    const Point f_corner = apply_branch(params, corner, Side::L);
    const auto orbit = corner_orbit(params, corner, p, caps);
    if (!orbit) return out;
    out.returning = true;
    out.q = orbit->q;
    const auto crossing = sigma_crossing(orbit->image, orbit->before);
    if (!crossing) return out;
    if (role == CornerRole::S) {
        // S role: U above S, F(S) right of the line through S and f(S).
        const bool u_above = crossing->y - corner.y > margin;
        const bool fs_right =
            f_corner.x * corner.y - (f_corner.x * orbit->image.y + corner.y * orbit->image.x) > margin;
        out.passed = u_above && fs_right;
    } else {
        // T role: V below T, F(T) left of the line through T and f(T).
        const bool v_below = corner.y - crossing->y > margin;
        const bool ft_left =
            (f_corner.x * orbit->image.y + corner.y * orbit->image.x) - f_corner.x * corner.y > margin;
        out.passed = v_below && ft_left;
    }
    return out;
}

}  // namespace

ProofOutcome prove_chaos(const Params& params, const ProverOptions& opts) {
    ProofOutcome out;
    const PreimageFan fan = preimage_fan(params, opts.p_scan_bound);
    EscapeCaps caps = default_caps(fan);
    caps.chi_R = opts.chi_R_cap;

    // Step 1: smallest p in {2..min(p*, bound)} passing the S-side conditions.
    const int scan_hi = fan.size();
    int p_max = 0, q_S = 0;
    bool hit_cap = false;
    for (int p = 2; p <= scan_hi; ++p) {
        const CornerCheck c =
            check_corner_candidate(params, fan, p, CornerRole::S, caps, opts.condition_margin);
        if (!c.returning) { hit_cap = true; continue; }
        if (c.passed) { p_max = p; q_S = c.q; break; }
    }
    if (p_max == 0) {
        out.stop_step = 1;
        out.stop_reason = hit_cap ? "not returning" : "no p satisfies the S-side conditions";
        return out;
    }
    out.p_max = p_max;

    // Step 2: largest p below p_max passing the T-side conditions.
    int p_min = 0, q_T = 0;
    hit_cap = false;
    for (int p = p_max - 1; p >= 1; --p) {
        const CornerCheck c =
            check_corner_candidate(params, fan, p, CornerRole::T, caps, opts.condition_margin);
        if (!c.returning) { hit_cap = true; continue; }
        if (c.passed) { p_min = p; q_T = c.q; break; }
    }
    if (p_min == 0) {
        out.stop_step = 2;
        out.stop_reason = hit_cap ? "not returning" : "no p satisfies the T-side conditions";
        return out;
    }
    out.p_min = p_min;

    // Step 3: eigenvalue splitting det < trace^2/4 on every matrix of Gamma.
    // Scanned from p_max downward (q ascending) so the reported pair is the
    // first failure closest to the freshly accepted p_max.
    const GammaSet gamma{p_min, p_max, std::min(q_S, q_T), std::max(q_S, q_T) + 1};
    out.q_min = gamma.q_min;
    out.q_max = gamma.q_max;
    for (int p = gamma.p_max; p >= gamma.p_min; --p) {
        const Mat2 alp = mat_pow(branch_matrix(params, Side::L), p);
        for (int q = gamma.q_min; q <= gamma.q_max; ++q) {
            const Mat2 m = mat_mul(mat_pow(branch_matrix(params, Side::R), q), alp);
            const double tr = trace(m);
            if (!(det(m) < 0.25 * tr * tr)) {
                out.stop_step = 3;
                out.stop_reason = "eigenvalue splitting fails";
                out.failing_pair = {p, q};
                return out;
            }
        }
    }

    // Step 4: the fixed points of the angle maps must be unmixed.
    const auto pairs = gamma_angle_pairs(params, gamma);
    std::optional<CircleInterval> j;
    if (pairs) j = unmixed_interval(*pairs);
    if (!j) {
        out.stop_step = 4;
        out.stop_reason = "fixed points are mixed";
        return out;
    }
    out.J = *j;
    for (const AnglePair& p : *pairs) out.angles.push_back({p.p, p.q, p.stable, p.unstable, {}, {}});

    // Step 5: every norm function must stay above 1 on J.
    for (AngleAudit& a : out.angles) {
        const Mat2 m = mat_mul(mat_pow(branch_matrix(params, Side::R), a.q),
                               mat_pow(branch_matrix(params, Side::L), a.p));
        const CrossingResult cr = unit_crossings(m);
        if (const auto* x = std::get_if<ExpansionCrossing>(&cr)) {
            a.dec = x->dec;
            a.inc = x->inc;
        }
    }
    const ExpansionCheck ex = expansion_check(params, gamma, *j);
    if (!ex.passed) {
        out.stop_step = 5;
        out.stop_reason = "cone is not expanding";
        out.failing_pair = {ex.failing_p, ex.failing_q};
        return out;
    }
    out.verdict = Verdict::Chaos;
    out.expansion_factor = ex.factor;
    out.lyapunov_lower_bound = certified_bound(ex.factor, p_max, gamma.q_max);
    return out;
}

double certified_bound(double c, int p_max, int q_max) {
    if (!(c > 1.0)) throw std::invalid_argument("certified_bound: expansion factor must exceed 1");
    return std::log(c) / static_cast<double>(p_max + q_max);
}

}  // namespace bcnf
