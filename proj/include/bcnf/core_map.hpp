#pragma once

// The two-dimensional border-collision normal form: a continuous planar map
// with two affine branches meeting on the switching manifold x = 0, with
// traces/determinants (tau_L, delta_L), (tau_R, delta_R) and offset mu = 1.

#include <cmath>
#include <stdexcept>

namespace bcnf {

enum class Side { L, R };

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }

inline double norm(Point z) { return std::hypot(z.x, z.y); }
inline double dist(Point a, Point b) { return norm(a - b); }

// Row-major 2x2 matrix [a b; c d].
struct Mat2 {
    double a = 1.0, b = 0.0;
    double c = 0.0, d = 1.0;
};

inline Mat2 mat_mul(const Mat2& m, const Mat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

// Repeated multiplication; n = 0 gives the identity. Exponents stay small
// here (p, q rarely above 20) so nothing fancier is warranted.
inline Mat2 mat_pow(const Mat2& m, int n) {
    Mat2 r;
    for (int i = 0; i < n; ++i) r = mat_mul(r, m);
    return r;
}

inline Point mat_vec(const Mat2& m, Point z) {
    return {m.a * z.x + m.b * z.y, m.c * z.x + m.d * z.y};
}

inline double det(const Mat2& m) { return m.a * m.d - m.b * m.c; }
inline double trace(const Mat2& m) { return m.a + m.d; }

// Map parameters; mu is fixed at 1 and not exposed.
// Constraints: tau_L > 0 and delta_L, delta_R > 0 (tau_R unrestricted),
// which make the map invertible and orientation-preserving.
struct Params {
    double tau_L = 1.0;
    double delta_L = 1.0;
    double tau_R = 1.0;
    double delta_R = 1.0;
};

// Validates the parameter constraints; throws std::invalid_argument naming
// the violated constraint.
Params make_params(double tau_L, double delta_L, double tau_R, double delta_R);

inline Mat2 branch_matrix(const Params& p, Side s) {
    return s == Side::L ? Mat2{p.tau_L, 1.0, -p.delta_L, 0.0}
                        : Mat2{p.tau_R, 1.0, -p.delta_R, 0.0};
}

inline Point apply_branch(const Params& p, Point z, Side s) {
    const double tau = (s == Side::L) ? p.tau_L : p.tau_R;
    const double delta = (s == Side::L) ? p.delta_L : p.delta_R;
    return {tau * z.x + z.y + 1.0, -delta * z.x};
}

// Closed-form branch inverse: x = -y'/delta, y = x' - 1 + tau*y'/delta.
inline Point apply_branch_inverse(const Params& p, Point z, Side s) {
    const double tau = (s == Side::L) ? p.tau_L : p.tau_R;
    const double delta = (s == Side::L) ? p.delta_L : p.delta_R;
    const double x = -z.y / delta;
    return {x, z.x - 1.0 - tau * x};
}

// The full map. Both branches agree on x = 0; we use the left branch there.
inline Point apply_f(const Params& p, Point z) {
    return apply_branch(p, z, z.x <= 0.0 ? Side::L : Side::R);
}

}  // namespace bcnf
