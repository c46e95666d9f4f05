#pragma once

// The candidate trapping region Omega for the induced return map: corner
// points S, T and their images, the escape counts q_S, q_T, the verification
// conditions for forward invariance, and evaluation of the induced map.

#include <optional>
#include <string>
#include <vector>

#include "bcnf/partition.hpp"

namespace bcnf {

// One application of the induced map: p left steps, then q right steps,
// landing back in Phi = { x < 0, y <= 0 }.
struct InducedReturn {
    int p = 0;
    int q = 0;
    Point image;
};

// Induced map at Z in Phi. Empty ("not returning") when an escape cap is
// exhausted; callers must treat that as verification failure.
std::optional<InducedReturn> evaluate_F(const Params& params, Point z,
                                        const EscapeCaps& caps);

// Orbit of one corner (0, c_p): p+1 left steps to the landing just past the
// switching manifold, then the right-branch escape. chi_L(corner) = p + 1
// holds exactly for corners on preimage lines, so the left phase needs no
// escape test. Empty when the right-phase cap is exhausted.
struct CornerOrbit {
    Point landing;   // f_L^{p+1}(corner)
    Point before;    // f_R^{q-1}(landing), last point with x >= 0
    Point image;     // f_R^{q}(landing), the return image F(corner)
    int q = 0;
};

std::optional<CornerOrbit> corner_orbit(const Params& params, Point corner, int p,
                                        const EscapeCaps& caps);

// Crossing of the line through a and b with the switching manifold x = 0;
// empty when the segment is parallel to it.
std::optional<Point> sigma_crossing(Point a, Point b);

// Quadrilateral with vertices S, T, f(S), f(T) plus everything derived from
// its corner orbits.  S = (0, c_{p_max}), T = (0, c_{p_min}); U and V are the
// points where the lines through F(S), f_R^{-1}(F(S)) and F(T), f_R^{-1}(F(T))
// cross the switching manifold.
struct TrappingRegion {
    int p_min = 0, p_max = 0;
    Point S, T, fS, fT;
    Point FS, FT;
    Point U, V;
    int q_S = 0, q_T = 0;
    int q_min = 0, q_max = 0;
};

// Populates the region from the fan. F(S) is computed as
// f_R^{q_S}(f_L^{p_max+1}(S)), using chi_L(S) = p_max + 1 which holds exactly
// for corner points on preimage lines. Failure reasons: "not returning"
// (escape cap exhausted) and "degenerate line" (no transversal crossing).
std::optional<TrappingRegion> build_trapping(const Params& params,
                                             const PreimageFan& fan,
                                             int p_min, int p_max,
                                             const EscapeCaps& caps,
                                             std::string* why = nullptr);

// The four strict inequalities for forward invariance. Each flag is true
// when its inequality holds by more than margin (default 0, the bare
// conditions).
struct ConditionReport {
    bool U_above_S = false;
    bool V_below_T = false;
    bool FS_right = false;   // F(S) right of the line through S and f(S)
    bool FT_left = false;    // F(T) left of the line through T and f(T)

    bool ok() const { return U_above_S && V_below_T && FS_right && FT_left; }
    std::vector<std::string> violated() const;
};

ConditionReport check_conditions(const TrappingRegion& r, double margin = 0.0);

// Membership in Omega: (x, y) in Phi with
//   (c_head+1)/c_head (c_head - y) <= x <= (c_tail+1)/c_tail (c_tail - y)
// where c_head = y(S), c_tail = y(T). tol relaxes every boundary (used for
// containment checks on computed images; tol = 0 is the exact set).
bool omega_contains(const TrappingRegion& r, Point z, double tol = 0.0);

// Omega as a polygon: S, f(S), f(T), T in cyclic order.
std::vector<Point> omega_polygon(const TrappingRegion& r);

// Bounding polygon of F(Omega): U, F(S), f(U), f(V), F(T), V.
std::vector<Point> F_omega_polygon(const TrappingRegion& r, const Params& params);

// Polygons used to track corner orbits, for diagnostics and plotting:
// Psi_L covers the left-half-plane passage, Psi_R the right, Delta the
// escape strip (a triangle when p_min = 1).
struct DiagnosticPolygons {
    std::vector<Point> psi_L;
    std::vector<Point> psi_R;
    std::vector<Point> delta;
};

DiagnosticPolygons diagnostic_polygons(const TrappingRegion& r, const Params& params);

}  // namespace bcnf
