#include "bcnf/trapping.hpp"

#include <cmath>

namespace bcnf {

std::optional<InducedReturn> evaluate_F(const Params& params, Point z,
                                        const EscapeCaps& caps) {
    if (!(z.x < 0.0 && z.y <= 0.0)) throw std::invalid_argument("evaluate_F: point must be in Phi");
    const auto p = chi_L(params, z, caps.chi_L);
    if (!p) return std::nullopt;
    Point w = z;
    for (int i = 0; i < *p; ++i) w = apply_f(params, w);
    const auto q = chi_R(params, w, caps.chi_R);
    if (!q) return std::nullopt;
    for (int j = 0; j < *q; ++j) w = apply_f(params, w);
    return InducedReturn{*p, *q, w};
}

std::optional<CornerOrbit> corner_orbit(const Params& params, Point corner, int p,
                                        const EscapeCaps& caps) {
    CornerOrbit orbit;
    Point w = corner;
    for (int i = 0; i < p + 1; ++i) w = apply_branch(params, w, Side::L);
    orbit.landing = w;
    const auto q = chi_R(params, w, caps.chi_R);
    if (!q) return std::nullopt;
    orbit.q = *q;
    for (int j = 0; j < *q - 1; ++j) w = apply_branch(params, w, Side::R);
    orbit.before = w;
    orbit.image = apply_branch(params, w, Side::R);
    return orbit;
}

std::optional<Point> sigma_crossing(Point a, Point b) {
    const double dx = a.x - b.x;
    if (dx == 0.0) return std::nullopt;
    const double t = a.x / dx;
    return Point{0.0, a.y + t * (b.y - a.y)};
}

std::optional<TrappingRegion> build_trapping(const Params& params,
                                             const PreimageFan& fan,
                                             int p_min, int p_max,
                                             const EscapeCaps& caps,
                                             std::string* why) {
    if (!(1 <= p_min && p_min < p_max && p_max <= fan.size())) {
        throw std::invalid_argument("build_trapping: need 1 <= p_min < p_max <= fan size");
    }
    TrappingRegion r;
    r.p_min = p_min;
    r.p_max = p_max;
    r.S = {0.0, fan.line(p_max).c};
    r.T = {0.0, fan.line(p_min).c};
    r.fS = apply_branch(params, r.S, Side::L);
    r.fT = apply_branch(params, r.T, Side::L);

    const auto s_orbit = corner_orbit(params, r.S, p_max, caps);
    const auto t_orbit = corner_orbit(params, r.T, p_min, caps);
    if (!s_orbit || !t_orbit) {
        if (why) *why = "not returning";
        return std::nullopt;
    }
    r.FS = s_orbit->image;
    r.FT = t_orbit->image;
    r.q_S = s_orbit->q;
    r.q_T = t_orbit->q;
    r.q_min = std::min(r.q_S, r.q_T);
    r.q_max = std::max(r.q_S, r.q_T) + 1;

    const auto u = sigma_crossing(r.FS, s_orbit->before);
    const auto v = sigma_crossing(r.FT, t_orbit->before);
    if (!u || !v) {
        if (why) *why = "degenerate line";
        return std::nullopt;
    }
    r.U = *u;
    r.V = *v;
    return r;
}

std::vector<std::string> ConditionReport::violated() const {
    std::vector<std::string> out;
    if (!U_above_S) out.emplace_back("U_above_S");
    if (!V_below_T) out.emplace_back("V_below_T");
    if (!FS_right) out.emplace_back("FS_right");
    if (!FT_left) out.emplace_back("FT_left");
    return out;
}

ConditionReport check_conditions(const TrappingRegion& r, double margin) {
    ConditionReport rep;
    rep.U_above_S = r.U.y - r.S.y > margin;
    rep.V_below_T = r.T.y - r.V.y > margin;
    rep.FS_right = r.fS.x * r.S.y - (r.fS.x * r.FS.y + r.S.y * r.FS.x) > margin;
    rep.FT_left = (r.fT.x * r.FT.y + r.T.y * r.FT.x) - r.fT.x * r.T.y > margin;
    return rep;
}

bool omega_contains(const TrappingRegion& r, Point z, double tol) {
    if (!(z.x < tol && z.y <= tol)) return false;
    const double head = r.S.y;  // c_{p_max}
    const double tail = r.T.y;  // c_{p_min}
    const double left = (head + 1.0) / head * (head - z.y);
    const double right = (tail + 1.0) / tail * (tail - z.y);
    return left - tol <= z.x && z.x <= right + tol;
}

std::vector<Point> omega_polygon(const TrappingRegion& r) {
    return {r.S, r.fS, r.fT, r.T};
}

std::vector<Point> F_omega_polygon(const TrappingRegion& r, const Params& params) {
    return {r.U, r.FS, apply_f(params, r.U), apply_f(params, r.V), r.FT, r.V};
}

DiagnosticPolygons diagnostic_polygons(const TrappingRegion& r, const Params& params) {
    DiagnosticPolygons d;

    // S, f(S), ..., f^{p_max}(S), then f^{p_min}(T), ..., f(T), T.
    std::vector<Point> s_orbit{r.S};
    for (int i = 0; i < r.p_max; ++i) s_orbit.push_back(apply_branch(params, s_orbit.back(), Side::L));
    std::vector<Point> t_orbit{r.T};
    for (int i = 0; i < r.p_min; ++i) t_orbit.push_back(apply_branch(params, t_orbit.back(), Side::L));

    d.psi_L = s_orbit;
    d.psi_L.insert(d.psi_L.end(), t_orbit.rbegin(), t_orbit.rend());

    // f^{p_max}(S), ..., f^{p_max+q_S-1}(S), U, V, f^{p_min+q_T-1}(T), ..., f^{p_min}(T).
    std::vector<Point> s_right{s_orbit.back()};
    for (int i = 0; i < r.q_S - 1; ++i) s_right.push_back(apply_f(params, s_right.back()));
    std::vector<Point> t_right{t_orbit.back()};
    for (int i = 0; i < r.q_T - 1; ++i) t_right.push_back(apply_f(params, t_right.back()));

    d.psi_R = s_right;
    d.psi_R.push_back(r.U);
    d.psi_R.push_back(r.V);
    d.psi_R.insert(d.psi_R.end(), t_right.rbegin(), t_right.rend());

    // Escape strip between the two manifold landings and their images;
    // for p_min = 1 the T-side image lies on the segment between the other
    // x-axis vertices, so the strip is a triangle.
    const Point s_land = s_orbit.back();
    const Point t_land = t_orbit.back();
    if (r.p_min == 1) {
        d.delta = {s_land, apply_f(params, s_land), t_land};
    } else {
        d.delta = {s_land, apply_f(params, s_land), apply_f(params, t_land), t_land};
    }
    return d;
}

}  // namespace bcnf
