#include <doctest.h>

#include <random>

#include "bcnf/partition.hpp"
#include "support/oracles.hpp"

using namespace bcnf;

TEST_SUITE("partition") {

TEST_CASE("p_star: infinite branch and closed form") {
    CHECK(!p_star(make_params(2.5, 1.0, 0.0, 1.0)));           // tau_L >= 2 sqrt(delta_L)
    CHECK(*p_star(make_params(1.0, 0.5, 0.0, 1.0)) == 3);      // phi = pi/4
    const Params fig3 = make_params(1.1, 0.4, 0.4, 2.0);
    CHECK(*p_star(fig3) == *oracle::p_star_by_recurrence(fig3));
}

TEST_CASE("p_star formula matches the slope recurrence on a 50x50 grid") {
    for (int ki = 1; ki <= 50; ++ki) {
        for (int kj = 1; kj <= 50; ++kj) {
            const Params p = make_params(3.0 * ki / 50.0, 3.0 * kj / 50.0, 0.0, 1.0);
            const auto formula = p_star(p);
            if (!formula) continue;  // infinite branch has no finite count to compare
            const auto counted = oracle::p_star_by_recurrence(p);
            REQUIRE(counted);
            REQUIRE(*formula == *counted);
        }
    }
}

TEST_CASE("preimage fan: seed line, recurrence, and monotonicity") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> tau(0.05, 3.0), del(0.05, 3.0);
    for (int i = 0; i < 200; ++i) {
        const Params p = make_params(tau(rng), del(rng), 0.0, 1.0);
        const PreimageFan fan = preimage_fan(p, 12);
        REQUIRE(fan.size() >= 1);
        CHECK(fan.line(1).m == -p.tau_L);
        CHECK(fan.line(1).c == -1.0);
        for (int k = 2; k <= fan.size(); ++k) {
            REQUIRE(fan.line(k).m > fan.line(k - 1).m);
            REQUIRE(fan.line(k).c < fan.line(k - 1).c);
            if (k < fan.size()) REQUIRE(fan.line(k).m < 0.0);
        }
    }

    const PreimageFan fan = preimage_fan(make_params(1.0, 0.5, 0.0, 1.0), 10);
    CHECK(fan.size() == 3);  // capped at p*
    CHECK(fan.line(2).m == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(fan.line(2).c == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("fan lines pull back to the switching manifold") {
    // Points on line i must land on x = 0 after i left-branch steps.
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> tau(0.2, 2.8), del(0.2, 2.8), xs(-3.0, 0.0);
    for (int i = 0; i < 50; ++i) {
        const Params p = make_params(tau(rng), del(rng), 0.0, 1.0);
        const PreimageFan fan = preimage_fan(p, 10);
        for (int k = 1; k <= fan.size(); ++k) {
            for (int s = 0; s < 100; ++s) {
                const double x = xs(rng);
                Point z{x, fan.line(k).y_at(x)};
                for (int step = 0; step < k; ++step) z = apply_branch(p, z, Side::L);
                REQUIRE(std::fabs(z.x) < 1e-9);
            }
        }
    }
}

TEST_CASE("two-point pullback confirms the second line") {
    const Params p = make_params(1.0, 0.5, 0.0, 1.0);
    const PreimageFan fan = preimage_fan(p, 3);
    for (double x : {-1.0, -2.0}) {
        Point z{x, fan.line(2).y_at(x)};
        z = apply_branch(p, z, Side::L);
        z = apply_branch(p, z, Side::L);
        REQUIRE(std::fabs(z.x) < 1e-10);
    }
}

TEST_CASE("chi_L counts the escape from the left half-plane") {
    // Dyadic parameters keep the corner orbits exact in floating point.
    const Params p = make_params(1.0, 0.5, 0.4, 2.0);
    const PreimageFan fan = preimage_fan(p, 10);
    const EscapeCaps caps = default_caps(fan);
    for (int k = 1; k <= fan.size(); ++k) {
        const auto escape = chi_L(p, {0.0, fan.line(k).c}, caps.chi_L);
        REQUIRE(escape);
        REQUIRE(*escape == k + 1);
    }
    // Already outside the left half-plane: one step.
    const Params q = make_params(1.0, 0.5, 0.4, 2.0);
    CHECK(*chi_L(q, {0.5, 0.0}, 10) == 1);
}

TEST_CASE("chi_L equals the region index inside each D_p") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> tau(0.2, 2.8), del(0.2, 2.8), xs(-2.0, 0.0),
        frac(0.1, 0.9);
    int checked = 0;
    while (checked < 10000) {
        const Params p = make_params(tau(rng), del(rng), 0.0, 1.0);
        const PreimageFan fan = preimage_fan(p, 8);
        const EscapeCaps caps = default_caps(fan);
        for (int s = 0; s < 50 && checked < 10000; ++s) {
            const double x = xs(rng);
            Point z{x, 0.0};
            const int k = 1 + static_cast<int>(frac(rng) * fan.size()) % fan.size();
            if (k == 1) {
                z.y = fan.line(1).y_at(x) + frac(rng) * 2.0;
            } else {
                const double hi = fan.line(k - 1).y_at(x), lo = fan.line(k).y_at(x);
                z.y = lo + frac(rng) * (hi - lo);
            }
            const auto member = region_D_membership(fan, z);
            if (!member) continue;
            const auto escape = chi_L(p, z, caps.chi_L);
            ++checked;
            REQUIRE(escape);
            REQUIRE(*escape == *member);
        }
    }
}

TEST_CASE("region membership boundary conventions") {
    const Params p = make_params(1.0, 0.5, 0.0, 1.0);
    const PreimageFan fan = preimage_fan(p, 3);
    CHECK(*region_D_membership(fan, {-1.0, 5.0}) == 1);  // above line 1
    // Exactly on line p-1 belongs to D_p (inclusive upper boundary).
    const double x = -1.5;
    CHECK(*region_D_membership(fan, {x, fan.line(1).y_at(x)}) == 2);
    CHECK(*region_D_membership(fan, {x, fan.line(2).y_at(x)}) == 3);
    // Below the last line the regions are undefined.
    CHECK(!region_D_membership(fan, {x, fan.line(3).y_at(x) - 1.0}));
    CHECK_THROWS_AS((void)region_D_membership(fan, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("chi_R escape and cap semantics") {
    // First-iterate escape.
    CHECK(*chi_R(make_params(1.0, 0.5, 0.4, 2.0), {1.0, -5.0}, 10) == 1);

    // tau_R = 0, delta_R = 1 turns the right branch into a quarter turn: the
    // orbit of (1, 0) is the 4-cycle (1,0),(1,-1),(0,-1),(0,0) whose x never
    // goes negative, and the iterates on x = 0 stay in the right half-plane.
    const Params rot = make_params(1.0, 0.5, 0.0, 1.0);
    Point z{1.0, 0.0};
    for (int i = 0; i < 4; ++i) z = apply_f(rot, z);
    CHECK(z.x == 1.0);
    CHECK(z.y == 0.0);
    CHECK(!chi_R(rot, {1.0, 0.0}, 1000));

    // Orbit pinned at the attracting right fixed point never escapes.
    const Params fix = make_params(1.0, 0.5, 0.0, 0.5);
    CHECK(!chi_R(fix, {2.0 / 3.0, -1.0 / 3.0}, 1000));
}

TEST_CASE("default caps cover the corner escape counts") {
    const PreimageFan finite = preimage_fan(make_params(1.0, 0.5, 0.0, 1.0), 10);
    CHECK(default_caps(finite).chi_L == 4);  // p* + 1
    const PreimageFan infinite = preimage_fan(make_params(2.5, 1.0, 0.0, 1.0), 10);
    CHECK(default_caps(infinite).chi_L == 64);
    CHECK(default_caps(infinite).chi_R == 1000);
}

}  // TEST_SUITE
