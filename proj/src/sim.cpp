#include "bcnf/sim.hpp"

#include <cmath>

namespace bcnf {

namespace {
constexpr double kLyapunovDeadband = 1e-4;

// Advances z by n steps; false when the orbit leaves the divergence radius.
bool advance(const Params& params, Point& z, int n, double radius) {
    for (int i = 0; i < n; ++i) {
        z = apply_f(params, z);
        if (!(norm(z) <= radius)) return false;
    }
    return true;
}
}  // namespace

OrbitSummary iterate_orbit(const Params& params, Point z0, int n, double divergence_radius) {
    if (n < 1) throw std::invalid_argument("iterate_orbit: n must be >= 1");
    OrbitSummary s;
    s.final = z0;
    s.max_norm = norm(z0);
    bool left = z0.x <= 0.0;
    for (int i = 0; i < n; ++i) {
        s.final = apply_f(params, s.final);
        const bool now_left = s.final.x <= 0.0;
        if (now_left != left) ++s.boundary_crossings;
        left = now_left;
        const double r = norm(s.final);
        s.max_norm = std::max(s.max_norm, r);
        if (!(r <= divergence_radius)) {
            s.diverged = true;
            break;
        }
    }
    return s;
}

std::optional<int> detect_periodic(const Params& params, const SimOptions& opts) {
    Point z{0.0, 0.0};
    if (!advance(params, z, opts.transient, opts.divergence_radius)) return std::nullopt;
    for (int pass = 0; pass < 2; ++pass) {
        int found = 0;
        Point w = z;
        for (int k = 1; k <= opts.period_cap; ++k) {
            w = apply_f(params, w);
            if (dist(w, z) < opts.period_tol) {
                found = k;
                break;
            }
        }
        if (found == 0) return std::nullopt;
        if (pass == 1) return found;
        // Re-check one transient block later to weed out near-recurrences.
        if (!advance(params, z, opts.transient, opts.divergence_radius)) return std::nullopt;
    }
    return std::nullopt;
}

std::optional<double> estimate_lyapunov(const Params& params, const SimOptions& opts) {
    Point z{0.0, 0.0};
    if (!advance(params, z, opts.transient, opts.divergence_radius)) return std::nullopt;
    Point v{1.0, 0.0};
    double sum = 0.0;
    for (int i = 0; i < opts.samples; ++i) {
        v = mat_vec(branch_matrix(params, z.x <= 0.0 ? Side::L : Side::R), v);
        const double stretch = norm(v);
        sum += std::log(stretch);
        v = {v.x / stretch, v.y / stretch};
        z = apply_f(params, z);
        if (!(norm(z) <= opts.divergence_radius)) return std::nullopt;
    }
    return sum / static_cast<double>(opts.samples);
}

Classification classify_point(const Params& params, const SimOptions& opts) {
    Classification c;
    if (const auto period = detect_periodic(params, opts)) {
        c.kind = SimKind::Periodic;
        c.period = *period;
        return c;
    }
    const auto lyap = estimate_lyapunov(params, opts);
    if (!lyap) {
        c.kind = SimKind::Diverged;
        return c;
    }
    c.lyapunov = *lyap;
    c.kind = *lyap > kLyapunovDeadband ? SimKind::PosLyapunov : SimKind::NegLyapunov;
    return c;
}

}  // namespace bcnf
