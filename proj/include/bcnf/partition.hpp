#pragma once

// Preimages of the switching manifold under the left branch, the count p*,
// the regions D_p, and the escape-time functions chi_L / chi_R.

#include <optional>
#include <vector>

#include "bcnf/core_map.hpp"

namespace bcnf {

// Non-vertical line y = m*x + c. The switching manifold itself (x = 0) is
// never stored as a Line.
struct Line {
    double m = 0.0;
    double c = 0.0;
    double y_at(double x) const { return m * x + c; }
};

// Preimage lines of the switching manifold under the left branch, ordered by
// preimage depth i = 1, 2, ...  Slopes increase and intercepts decrease up to
// p*.  p_star is empty when tau_L >= 2*sqrt(delta_L) (no line ever has
// nonnegative slope).
struct PreimageFan {
    std::vector<Line> lines;       // lines[i-1] is the i-th preimage line
    std::optional<int> p_star;

    int size() const { return static_cast<int>(lines.size()); }
    const Line& line(int i) const { return lines.at(static_cast<size_t>(i - 1)); }
};

// Smallest i >= 1 with m_i >= 0; empty = infinity. Always >= 2 when finite.
std::optional<int> p_star(const Params& p);

// Lines for i = 1..min(k, p*), built by the pullback recurrence
//   m_i = -(delta_L + tau_L*m_{i-1})/m_{i-1},  c_i = -c_{i-1}/m_{i-1} - 1
// seeded with (m_1, c_1) = (-tau_L, -1).
PreimageFan preimage_fan(const Params& p, int k);

// Iteration caps for the escape times. chi_R has no a-priori bound so a
// generous cap stands in; exhausting it is reported as "not found" and
// callers must treat that as verification failure.
struct EscapeCaps {
    int chi_L = 64;
    int chi_R = 1000;
};

// chi_L cap covering the fan corners (chi_L(S) = p_max + 1 can reach p* + 1).
EscapeCaps default_caps(const PreimageFan& fan);

// Smallest i in [1, cap] whose i-th iterate has x > 0; empty if none.
// Iterates landing exactly on x = 0 stay in the left half-plane and continue.
std::optional<int> chi_L(const Params& p, Point z, int cap);

// Mirror image: smallest j in [1, cap] whose j-th iterate has x < 0.
std::optional<int> chi_R(const Params& p, Point z, int cap);

// Index p of the region D_p containing a point of the left half-plane:
//   D_1 = { y > m_1 x + c_1 },  D_p = { m_p x + c_p < y <= m_{p-1} x + c_{p-1} }.
// Empty if the point lies on/below the last available line (below line p*
// the regions are not defined, and a short fan cannot decide).
std::optional<int> region_D_membership(const PreimageFan& fan, Point z);

}  // namespace bcnf
