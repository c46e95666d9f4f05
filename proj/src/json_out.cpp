#include "bcnf/json_out.hpp"

#include "bcnf/sim.hpp"

namespace bcnf {

using nlohmann::ordered_json;

ordered_json outcome_to_json(const ProofOutcome& o) {
    ordered_json j;
    j["verdict"] = o.chaos() ? "chaos" : "stop";
    if (!o.chaos()) {
        j["stop_step"] = o.stop_step;
        j["stop_reason"] = o.stop_reason;
    }
    if (o.p_min) j["p_min"] = *o.p_min;
    if (o.p_max) j["p_max"] = *o.p_max;
    if (o.q_min) j["q_min"] = *o.q_min;
    if (o.q_max) j["q_max"] = *o.q_max;
    if (o.J) j["J"] = {o.J->lo, o.J->hi};
    if (o.expansion_factor) j["expansion_factor"] = *o.expansion_factor;
    if (o.lyapunov_lower_bound) j["lyap_bound"] = *o.lyapunov_lower_bound;
    if (o.failing_pair) j["failing_pair"] = {o.failing_pair->first, o.failing_pair->second};
    if (!o.angles.empty()) {
        ordered_json angles = ordered_json::array();
        for (const AngleAudit& a : o.angles) {
            ordered_json entry;
            entry["p"] = a.p;
            entry["q"] = a.q;
            entry["stable"] = a.stable;
            entry["unstable"] = a.unstable;
            if (a.dec) entry["dec"] = *a.dec;
            if (a.inc) entry["inc"] = *a.inc;
            angles.push_back(entry);
        }
        j["angles"] = angles;
    }
    return j;
}

ordered_json classification_to_json(const Classification& c) {
    ordered_json j;
    switch (c.kind) {
        case SimKind::Periodic: j["kind"] = "periodic"; break;
        case SimKind::NegLyapunov: j["kind"] = "neg_le"; break;
        case SimKind::PosLyapunov: j["kind"] = "pos_le"; break;
        case SimKind::Diverged: j["kind"] = "diverged"; break;
    }
    if (c.kind == SimKind::Periodic) j["period"] = c.period;
    if (c.lyapunov) j["lyapunov"] = *c.lyapunov;
    return j;
}

namespace {

ordered_json points_to_json(const std::vector<Point>& pts) {
    ordered_json arr = ordered_json::array();
    for (const Point& p : pts) arr.push_back({p.x, p.y});
    return arr;
}

}  // namespace

ordered_json phase_to_json(const Params& params, const ProofOutcome& outcome,
                           const TrappingRegion& region, const PreimageFan& fan,
                           int attractor_samples) {
    ordered_json j;
    j["outcome"] = outcome_to_json(outcome);
    j["omega_polygon"] = points_to_json(omega_polygon(region));
    j["F_omega_polygon"] = points_to_json(F_omega_polygon(region, params));
    const DiagnosticPolygons d = diagnostic_polygons(region, params);
    j["psi_L"] = points_to_json(d.psi_L);
    j["psi_R"] = points_to_json(d.psi_R);
    j["delta"] = points_to_json(d.delta);
    ordered_json lines = ordered_json::array();
    for (const Line& line : fan.lines) lines.push_back({line.m, line.c});
    j["preimage_lines"] = lines;

    SimOptions sim;
    Point z{0.0, 0.0};
    std::vector<Point> attractor;
    attractor.reserve(static_cast<size_t>(attractor_samples));
    bool diverged = false;
    for (int i = 0; i < sim.transient && !diverged; ++i) {
        z = apply_f(params, z);
        diverged = !(norm(z) <= sim.divergence_radius);
    }
    for (int i = 0; i < attractor_samples && !diverged; ++i) {
        z = apply_f(params, z);
        diverged = !(norm(z) <= sim.divergence_radius);
        if (!diverged) attractor.push_back(z);
    }
    j["attractor"] = points_to_json(attractor);
    j["attractor_diverged"] = diverged;
    return j;
}

}  // namespace bcnf
