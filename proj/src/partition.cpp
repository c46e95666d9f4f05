#include "bcnf/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bcnf {

std::optional<int> p_star(const Params& p) {
    const double bound = 2.0 * std::sqrt(p.delta_L);
    if (p.tau_L >= bound) return std::nullopt;
    const double phi = std::acos(p.tau_L / bound);
    // At resonances (pi/phi integral) the count sits exactly on an integer;
    // snap values a few ulp above it back down before taking the ceiling.
    const int count = static_cast<int>(std::ceil(std::numbers::pi / phi - 1.0 - 1e-9));
    return std::max(count, 2);
}

PreimageFan preimage_fan(const Params& p, int k) {
    if (k < 1) throw std::invalid_argument("preimage_fan: k must be >= 1");
    PreimageFan fan;
    fan.p_star = p_star(p);
    const int n = fan.p_star ? std::min(k, *fan.p_star) : k;
    fan.lines.reserve(static_cast<size_t>(n));
    Line cur{-p.tau_L, -1.0};
    fan.lines.push_back(cur);
    for (int i = 2; i <= n; ++i) {
        // cur.m < 0 while i - 1 < p*, so the division is safe here.
        Line next{-(p.delta_L + p.tau_L * cur.m) / cur.m, -cur.c / cur.m - 1.0};
        fan.lines.push_back(next);
        cur = next;
    }
    return fan;
}

EscapeCaps default_caps(const PreimageFan& fan) {
    EscapeCaps caps;
    if (fan.p_star) caps.chi_L = std::min(*fan.p_star + 1, 64);
    return caps;
}

std::optional<int> chi_L(const Params& p, Point z, int cap) {
    for (int i = 1; i <= cap; ++i) {
        z = apply_f(p, z);
        if (z.x > 0.0) return i;
    }
    return std::nullopt;
}

std::optional<int> chi_R(const Params& p, Point z, int cap) {
    for (int j = 1; j <= cap; ++j) {
        z = apply_f(p, z);
        if (z.x < 0.0) return j;
    }
    return std::nullopt;
}

std::optional<int> region_D_membership(const PreimageFan& fan, Point z) {
    if (z.x > 0.0) throw std::invalid_argument("region_D_membership: point must have x <= 0");
    if (fan.lines.empty()) return std::nullopt;
    if (z.y > fan.line(1).y_at(z.x)) return 1;
    for (int i = 2; i <= fan.size(); ++i) {
        // Strict lower boundary, inclusive upper boundary.
        if (z.y > fan.line(i).y_at(z.x) && z.y <= fan.line(i - 1).y_at(z.x)) return i;
    }
    return std::nullopt;
}

}  // namespace bcnf
