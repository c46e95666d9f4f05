#pragma once

// Brute-force orbit dynamics used to cross-check the prover: periodic
// attractor detection, orbit-based Lyapunov estimation, divergence
// detection, and the combined per-point classification.

#include <optional>

#include "bcnf/core_map.hpp"

namespace bcnf {

struct SimOptions {
    int transient = 10000;
    int samples = 100000;
    double divergence_radius = 1e8;
    int period_cap = 30;
    double period_tol = 1e-10;
    unsigned seed = 0;  // reserved; the classification orbit starts at the origin
};

struct OrbitSummary {
    Point final;
    double max_norm = 0.0;
    int boundary_crossings = 0;  // switches between the two half-planes
    bool diverged = false;
};

// n applications of the map from z0, stopping early once an iterate's norm
// exceeds divergence_radius.
OrbitSummary iterate_orbit(const Params& params, Point z0, int n,
                           double divergence_radius = 1e8);

// Smallest k <= period_cap with |f^k(Z) - Z| < period_tol after the
// transient, re-verified one transient block later; empty when no stable
// period is found (or the orbit diverges).
std::optional<int> detect_periodic(const Params& params, const SimOptions& opts);

// Average log stretch of one tangent vector along the orbit of the origin,
// with per-step renormalization; empty when the orbit diverges.
std::optional<double> estimate_lyapunov(const Params& params, const SimOptions& opts);

enum class SimKind { Periodic, NegLyapunov, PosLyapunov, Diverged };

struct Classification {
    SimKind kind = SimKind::NegLyapunov;
    int period = 0;                   // set for Periodic only
    std::optional<double> lyapunov;   // absent for Periodic and Diverged
};

// Periodic wins; then divergence; otherwise the sign of the Lyapunov
// estimate, with |estimate| < 1e-4 resolved conservatively to NegLyapunov.
Classification classify_point(const Params& params, const SimOptions& opts);

}  // namespace bcnf
