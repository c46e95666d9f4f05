#include <doctest.h>

#include <cmath>
#include <random>

#include "bcnf/cone.hpp"
#include "bcnf/prover.hpp"
#include "support/oracles.hpp"

using namespace bcnf;

namespace {
constexpr double kPi = oracle::kPi;

Mat2 random_matrix(std::mt19937_64& rng, double lo = -2.0, double hi = 2.0) {
    std::uniform_real_distribution<double> entry(lo, hi);
    return {entry(rng), entry(rng), entry(rng), entry(rng)};
}
}  // namespace

TEST_SUITE("cone") {

TEST_CASE("angle normalization and circle metric") {
    CHECK(normalize_angle(kPi) == 0.0);
    CHECK(normalize_angle(-0.1) == doctest::Approx(kPi - 0.1));
    CHECK(normalize_angle(kPi + 0.3) == doctest::Approx(0.3));
    CHECK(circle_distance(0.05, kPi - 0.05) == doctest::Approx(0.1));
    CHECK(circle_distance(1.0, 1.0) == 0.0);
}

TEST_CASE("circle intervals, wrap-around included") {
    const CircleInterval plain{0.5, 1.5};
    CHECK(plain.contains(1.0));
    CHECK(!plain.contains(2.0));
    CHECK(plain.length() == doctest::Approx(1.0));
    CHECK(plain.midpoint() == doctest::Approx(1.0));

    const CircleInterval wrap{3.0, 0.5};
    CHECK(wrap.contains(3.1));
    CHECK(wrap.contains(0.2));
    CHECK(!wrap.contains(1.5));
    CHECK(wrap.length() == doctest::Approx(0.5 - 3.0 + kPi));
    CHECK(intervals_intersect(plain, CircleInterval{1.4, 2.0}));
    CHECK(!intervals_intersect(plain, CircleInterval{1.6, 2.0}));
    CHECK(intervals_intersect(wrap, CircleInterval{0.0, 0.1}));
}

TEST_CASE("angle map on reference matrices") {
    const Mat2 eye;
    for (double theta : {0.0, 0.4, 1.2, 2.8}) CHECK(angle_map(eye, theta) == doctest::Approx(theta));
    CHECK(angle_map({1, 0, 0, 2}, kPi / 4.0) == doctest::Approx(std::atan(2.0)));
    CHECK(angle_map({0, 1, -1, 0}, 0.0) == doctest::Approx(kPi / 2.0));
}

TEST_CASE("norm map on reference matrices") {
    CHECK(norm_map(Mat2{}, 1.3) == doctest::Approx(1.0));
    const Mat2 al{2.5, 1.0, -1.0, 0.0};
    CHECK(norm_map(al, 0.0) == doctest::Approx(std::sqrt(7.25)));
    const auto fp = fixed_points(al);
    REQUIRE(fp);
    // Stable direction is the dominant eigen-direction; its stretch is the
    // dominant eigenvalue.
    CHECK(norm_map(al, fp->stable) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("angle derivative: closed form vs central differences") {
    CHECK(angle_derivative(Mat2{}, 0.7) == doctest::Approx(1.0));
    CHECK(angle_derivative({2, 0, 0, 2}, 1.1) == doctest::Approx(1.0));  // det 4, H 2
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> theta(0.0, kPi);
    int checked = 0;
    while (checked < 1000) {
        const Mat2 m = random_matrix(rng);
        if (std::fabs(det(m)) < 0.1) continue;
        const double th = theta(rng);
        const double analytic = angle_derivative(m, th);
        REQUIRE(std::fabs(oracle::fd_angle_derivative(m, th) - analytic) <=
                1e-6 * std::fabs(analytic));
        ++checked;
    }
}

TEST_CASE("angle derivative is positive everywhere for the induced matrices") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> tau(0.1, 2.5), del(0.1, 2.5), taur(-2.5, 2.5),
        theta(0.0, kPi);
    std::uniform_int_distribution<int> expo(1, 6);
    for (int i = 0; i < 5000; ++i) {
        const Params p = make_params(tau(rng), del(rng), taur(rng), del(rng));
        const Mat2 m = mat_mul(mat_pow(branch_matrix(p, Side::R), expo(rng)),
                               mat_pow(branch_matrix(p, Side::L), expo(rng)));
        REQUIRE(angle_derivative(m, theta(rng)) > 0.0);
    }
}

TEST_CASE("fixed points of the angle map") {
    const auto al = fixed_points({2.5, 1.0, -1.0, 0.0});
    REQUIRE(al);
    CHECK(al->stable == doctest::Approx(kPi - std::atan(0.5)).epsilon(1e-12));
    CHECK(al->unstable == doctest::Approx(kPi - std::atan(2.0)).epsilon(1e-12));
    CHECK(al->eta == doctest::Approx(0.25).epsilon(1e-12));

    CHECK(!fixed_points(Mat2{}));                    // det = trace^2/4 exactly
    CHECK(!fixed_points({0.0, 1.0, -1.0, 0.0}));     // rotation, complex pair
    CHECK(!fixed_points({2.0, 0.0, 0.0, -2.0}));     // equal magnitudes

    const auto diag = fixed_points({2.0, 0.0, 0.0, 0.5});
    REQUIRE(diag);
    CHECK(diag->stable == 0.0);
    CHECK(diag->unstable == doctest::Approx(kPi / 2.0));
}

TEST_CASE("fixed points agree with the tangent-quadratic oracle") {
    std::mt19937_64 rng(53);
    int checked = 0;
    while (checked < 2000) {
        const Mat2 m = random_matrix(rng);
        const double tr = trace(m), dt = det(m);
        if (!(dt < 0.25 * tr * tr) || dt <= 0.0) continue;
        const auto got = fixed_points(m);
        const auto expect = oracle::fixed_angles_by_quadratic(m);
        if (!expect) continue;
        REQUIRE(got);
        REQUIRE(circle_distance(got->stable, expect->stable) < 1e-9);
        REQUIRE(circle_distance(got->unstable, expect->unstable) < 1e-9);
        // Residuals and derivative signatures.
        REQUIRE(circle_distance(angle_map(m, got->stable), got->stable) < 1e-9);
        REQUIRE(circle_distance(angle_map(m, got->unstable), got->unstable) < 1e-9);
        const double ds = angle_derivative(m, got->stable);
        REQUIRE(ds > 0.0);
        REQUIRE(ds < 1.0);
        REQUIRE(ds == doctest::Approx(got->eta).epsilon(1e-9));
        REQUIRE(angle_derivative(m, got->unstable) == doctest::Approx(1.0 / got->eta).epsilon(1e-9));
        ++checked;
    }
}

TEST_CASE("angle maps have degree one") {
    // The lift over one period increases by exactly pi.
    std::mt19937_64 rng(61);
    for (int i = 0; i < 50; ++i) {
        Mat2 m = random_matrix(rng);
        if (det(m) < 0.0) std::swap(m.a, m.b), std::swap(m.c, m.d);  // force det > 0
        if (det(m) <= 0.01) continue;
        double lift = angle_map(m, 0.0);
        double prev = lift;
        for (int k = 1; k <= 1000; ++k) {
            double g = angle_map(m, kPi * k / 1000.0);
            while (g < prev - kPi / 2.0) g += kPi;
            lift = g;
            prev = g;
        }
        REQUIRE(lift - angle_map(m, 0.0) == doctest::Approx(kPi).epsilon(1e-9));
    }
}

TEST_CASE("unmixed interval selection") {
    // Two stables, unstables in the far gap.
    const std::vector<AnglePair> apart = {{0.2, 1.5, 1, 1, 0.5}, {0.4, 2.0, 1, 2, 0.5}};
    auto j = unmixed_interval(apart);
    REQUIRE(j);
    CHECK(j->lo == doctest::Approx(0.2));
    CHECK(j->hi == doctest::Approx(0.4));

    // Unstable between the stables: the admissible interval wraps.
    const std::vector<AnglePair> between = {{0.2, 0.3, 1, 1, 0.5}, {0.4, 0.3, 1, 2, 0.5}};
    j = unmixed_interval(between);
    REQUIRE(j);
    CHECK(j->lo == doctest::Approx(0.4));
    CHECK(j->hi == doctest::Approx(0.2));
    CHECK(j->contains(1.5));
    CHECK(!j->contains(0.3));

    // Unstables split across both gaps: mixed.
    const std::vector<AnglePair> split = {{0.2, 0.3, 1, 1, 0.5}, {0.4, 1.5, 1, 2, 0.5}};
    CHECK(!unmixed_interval(split));

    // Single pair: degenerate interval.
    const std::vector<AnglePair> single = {{1.0, 2.0, 1, 1, 0.5}};
    j = unmixed_interval(single);
    REQUIRE(j);
    CHECK(j->lo == 1.0);
    CHECK(j->hi == 1.0);

    // Unstable coinciding with a stable angle can never be excluded.
    const std::vector<AnglePair> clash = {{1.0, 0.4, 1, 1, 0.5}, {0.4, 1.7, 1, 2, 0.5}};
    CHECK(!unmixed_interval(clash));
}

TEST_CASE("reference configuration is unmixed and expanding") {
    const Params p = make_params(1.0, 0.2, -1.2, 2.0);
    const GammaSet g{1, 3, 1, 2};
    const auto pairs = gamma_angle_pairs(p, g);
    REQUIRE(pairs);
    CHECK(pairs->size() == 6);
    const auto j = unmixed_interval(*pairs);
    REQUIRE(j);
    CHECK(invariance_check(p, g, *j));
    const ExpansionCheck ex = expansion_check(p, g, *j);
    CHECK(ex.passed);
    CHECK(ex.factor > 1.0);

    // Swapping the endpoints swallows the unstable angles; some endpoint
    // image then leaves the interval.
    CHECK(!invariance_check(p, g, CircleInterval{j->hi, j->lo}));
}

TEST_CASE("invariance holds whenever the interval exists") {
    oracle::ChaosDrawBox box(31);
    int total = 0;
    while (total < 1000) {
        const Params p = box.next();
        const ProofOutcome o = prove_chaos(p);
        if (!o.J) continue;  // needs steps 1-4 to pass
        ++total;
        const GammaSet g{*o.p_min, *o.p_max, *o.q_min, *o.q_max};
        REQUIRE(invariance_check(p, g, *o.J));
    }
}

TEST_CASE("contracting margin: small margins hold, large ones break") {
    const Params p = make_params(1.0, 0.2, -1.2, 2.0);
    const GammaSet g{1, 3, 1, 2};
    const auto j = unmixed_interval(*gamma_angle_pairs(p, g));
    REQUIRE(j);
    CHECK(contracting_margin_check(p, g, *j, 1e-4));
    CHECK(!contracting_margin_check(p, g, *j, 0.35));  // covers an unstable angle
    CHECK_THROWS_AS((void)contracting_margin_check(p, g, *j, 0.0), std::invalid_argument);

    // Bisect the supremum margin and compare with the distance from the
    // interval to the nearest unstable angle.
    double lo = 0.0, hi = 1.5;
    for (int i = 0; i < 45; ++i) {
        const double mid = 0.5 * (lo + hi);
        (contracting_margin_check(p, g, *j, mid) ? lo : hi) = mid;
    }
    double nearest = 1e9;
    for (const AnglePair& ap : *gamma_angle_pairs(p, g)) {
        nearest = std::min({nearest, normalize_angle(j->lo - ap.unstable),
                            normalize_angle(ap.unstable - j->hi)});
    }
    CHECK(lo == doctest::Approx(nearest).epsilon(1e-6));
}

TEST_CASE("unit crossings of the norm function") {
    const auto none_above = unit_crossings({2, 0, 0, 2});
    REQUIRE(std::holds_alternative<CrossingAbsence>(none_above));
    CHECK(std::get<CrossingAbsence>(none_above) == CrossingAbsence::AllAbove);

    const auto none_below = unit_crossings({0.5, 0, 0, 0.5});
    REQUIRE(std::holds_alternative<CrossingAbsence>(none_below));
    CHECK(std::get<CrossingAbsence>(none_below) == CrossingAbsence::NotExpanding);

    const auto both = unit_crossings({2, 0, 0, 0.5});
    REQUIRE(std::holds_alternative<ExpansionCrossing>(both));
    const auto x = std::get<ExpansionCrossing>(both);
    CHECK(x.dec == doctest::Approx(std::atan(2.0)).epsilon(1e-12));
    CHECK(x.inc == doctest::Approx(kPi - std::atan(2.0)).epsilon(1e-12));
    CHECK(norm_map({2, 0, 0, 0.5}, CircleInterval{x.dec, x.inc}.midpoint()) < 1.0);
}

TEST_CASE("crossing labels match a dense sign sweep") {
    std::mt19937_64 rng(71);
    int checked = 0;
    while (checked < 300) {
        const Mat2 m = random_matrix(rng);
        const auto res = unit_crossings(m);
        const auto* x = std::get_if<ExpansionCrossing>(&res);
        if (!x) continue;
        ++checked;
        const CircleInterval low{x->dec, x->inc};
        for (int k = 0; k < 2000; ++k) {
            const double theta = kPi * k / 2000.0;
            const double h = norm_map(m, theta);
            if (circle_distance(theta, x->dec) < 1e-6 || circle_distance(theta, x->inc) < 1e-6)
                continue;
            REQUIRE((h < 1.0) == low.strictly_contains(theta));
        }
    }
}

TEST_CASE("arc minimum of the norm matches dense sampling") {
    oracle::ChaosDrawBox box(777);
    int configs = 0;
    while (configs < 200) {
        const auto params = oracle::next_chaos_params(box);
        REQUIRE(params);
        const ProofOutcome o = prove_chaos(*params);
        ++configs;
        const GammaSet g{*o.p_min, *o.p_max, *o.q_min, *o.q_max};
        for (const GammaEntry& e : gamma_matrices(*params, g)) {
            REQUIRE(std::fabs(arc_min_norm(e.m, *o.J) - oracle::dense_arc_min(e.m, *o.J)) < 1e-9);
        }
    }
}

TEST_CASE("expansion check failure reporting") {
    const Params p = make_params(1.0, 0.2, -1.2, 2.0);
    const GammaSet single{1, 1, 1, 1};
    const Mat2 m11 = gamma_matrices(p, single)[0].m;
    const auto res = unit_crossings(m11);
    REQUIRE(std::holds_alternative<ExpansionCrossing>(res));
    const auto x = std::get<ExpansionCrossing>(res);
    // An interval overlapping [dec, inc] cannot certify expansion.
    const ExpansionCheck bad = expansion_check(p, single, {x.dec, CircleInterval{x.dec, x.inc}.midpoint()});
    CHECK(!bad.passed);
    CHECK(bad.failing_p == 1);
    CHECK(bad.failing_q == 1);
}

TEST_CASE("stable angles converge as the left exponent grows") {
    // For tau_L > delta_L + 1 the dominant left eigen-direction drives
    // theta^s_{p,q} toward the image of theta^s of A_L under A_R^q, and the
    // norm functions grow without bound away from the unstable direction.
    // Draw the left eigenvalues directly so convergence at p = 10 stays
    // above the noise floor while p = 20 still resolves the decrease.
    std::mt19937_64 rng2(41);
    std::uniform_real_distribution<double> l1(1.3, 2.5), l2(0.35, 0.75), taur(-2.0, 2.0),
        delr(0.5, 2.5);
    int draws = 0;
    while (draws < 10) {
        const double a = l1(rng2), b = l2(rng2);
        const Params p = make_params(a + b, a * b, taur(rng2), delr(rng2));
        REQUIRE(p.tau_L > p.delta_L + 1.0);
        const auto left = fixed_points(branch_matrix(p, Side::L));
        REQUIRE(left);
        bool usable = true;
        for (int q = 1; q <= 2 && usable; ++q) {
            const Mat2 arq = mat_pow(branch_matrix(p, Side::R), q);
            const double target = angle_map(arq, left->stable);
            if (circle_distance(target, left->unstable) < 1e-2) {
                usable = false;
                break;
            }
            double d10 = 0.0, d20 = 0.0;
            for (int pw : {10, 20}) {
                const auto fp = fixed_points(mat_mul(arq, mat_pow(branch_matrix(p, Side::L), pw)));
                REQUIRE(fp);
                (pw == 10 ? d10 : d20) = circle_distance(fp->stable, target);
            }
            REQUIRE(d20 < 1e-3);
            REQUIRE(d20 < d10);

            // Norm growth on a fixed arc away from the unstable direction.
            const CircleInterval arc{normalize_angle(left->unstable + 0.3),
                                     normalize_angle(left->unstable - 0.3)};
            double prev = 0.0;
            for (int pw = 10; pw <= 20; ++pw) {
                const double mn =
                    arc_min_norm(mat_mul(arq, mat_pow(branch_matrix(p, Side::L), pw)), arc);
                REQUIRE(mn > prev);
                prev = mn;
            }
        }
        if (usable) ++draws;
    }
}

}  // TEST_SUITE
