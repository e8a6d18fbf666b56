#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "epicampaign/dynamics.hpp"
#include "epicampaign/errors.hpp"
#include "helpers.hpp"

using namespace epicampaign;
using namespace epicampaign::testing;

TEST_CASE("zero dynamics freeze the state") {
    auto s = toy_two_class(21, 0.0);
    auto states = integrate_state(s, zero_controls(s), std::vector<double>{0.3, 0.7});
    for (int j = 0; j < states.num_points(); ++j) {
        CHECK(states.at(j, 0) == doctest::Approx(0.3).epsilon(1e-15));
        CHECK(states.at(j, 1) == doctest::Approx(0.7).epsilon(1e-15));
    }
}

TEST_CASE("fully infected start is absorbing") {
    auto s = er_default();
    auto states = integrate_state(s, zero_controls(s), uniform_seed(s, 1.0));
    for (int j = 0; j < states.num_points(); ++j)
        for (int c = 0; c < states.num_classes(); ++c)
            CHECK(states.at(j, c) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("uncontrolled terminal spread matches the ER and PL2 reference values") {
    auto er = er_default();
    auto agg_er = aggregate(er.dist, integrate_state(er, zero_controls(er), uniform_seed(er, 0.01)));
    CHECK(agg_er.i_total.back() == doctest::Approx(0.095).epsilon(0.002 / 0.095));

    auto pl2 = pl2_default();
    auto agg_pl2 =
        aggregate(pl2.dist, integrate_state(pl2, zero_controls(pl2), uniform_seed(pl2, 0.01)));
    CHECK(agg_pl2.i_total.back() == doctest::Approx(0.149).epsilon(0.002 / 0.149));
}

TEST_CASE("aggregate is the p-weighted average") {
    auto s = toy_two_class();
    Trajectory states(s.time_grid(), 2, 0.5);
    auto agg = aggregate(s.dist, states);
    for (double v : agg.i_total) CHECK(v == doctest::Approx(0.5));

    auto single = make_scenario(DegreeDistribution::from_probabilities(3, {1.0}), 0.1, 1.0, 11);
    auto st = integrate_state(single, zero_controls(single), std::vector<double>{0.2});
    auto ag = aggregate(single.dist, st);
    for (int j = 0; j < st.num_points(); ++j)
        CHECK(ag.i_total[j] == doctest::Approx(st.at(j, 0)));
}

TEST_CASE("states are non-decreasing and bounded for non-negative rates") {
    auto s = pl2_default(0.14, 25.0, 101);
    Trajectory u(s.time_grid(), s.dist.num_classes(), 0.05);
    auto states = integrate_state(s, u, uniform_seed(s, 0.01));
    for (int c = 0; c < states.num_classes(); ++c) {
        for (int j = 0; j + 1 < states.num_points(); ++j)
            CHECK(states.at(j + 1, c) >= states.at(j, c) - 1e-12);
    }
    for (double v : states.values()) {
        CHECK(v >= -1e-9);
        CHECK(v <= 1.0 + 1e-9);
    }
}

TEST_CASE("RK4 shows fourth-order convergence on constant profiles") {
    // Fine-grid reference, then errors at h and h/2.
    auto ref_scn = er_default(0.07, 25.0, 1601);
    auto ref = aggregate(ref_scn.dist,
                         integrate_state(ref_scn, zero_controls(ref_scn), uniform_seed(ref_scn, 0.01)));

    auto coarse = er_default(0.07, 25.0, 51);
    auto fine = er_default(0.07, 25.0, 101);
    auto agg_c =
        aggregate(coarse.dist, integrate_state(coarse, zero_controls(coarse), uniform_seed(coarse, 0.01)));
    auto agg_f =
        aggregate(fine.dist, integrate_state(fine, zero_controls(fine), uniform_seed(fine, 0.01)));

    double err_c = std::abs(agg_c.i_total.back() - ref.i_total.back());
    double err_f = std::abs(agg_f.i_total.back() - ref.i_total.back());
    double ratio = err_c / err_f;
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("grid refinement stability at default parameters") {
    for (auto make : {er_default, pl2_default}) {
        auto a = make(0.07, 25.0, 201);
        auto b = make(0.07, 25.0, 401);
        auto ia = aggregate(a.dist, integrate_state(a, zero_controls(a), uniform_seed(a, 0.01)));
        auto ib = aggregate(b.dist, integrate_state(b, zero_controls(b), uniform_seed(b, 0.01)));
        CHECK(std::abs(ia.i_total.back() - ib.i_total.back()) < 1e-6);
    }
}

TEST_CASE("stiff recruitment beyond the clamp slack raises a blowup error") {
    auto s = toy_two_class(3, 0.0);  // h = 0.5
    s.gamma = TimeProfile::constant(1.0);
    s.gamma_overridden = true;
    Trajectory u(s.time_grid(), 2, 100.0);  // rate * h = 50: RK4 leaves [0,1]
    CHECK_THROWS_AS(static_cast<void>(integrate_state(s, u, uniform_seed(s, 0.0))),
                    IntegrationError);
}

TEST_CASE("input validation") {
    auto s = er_default();
    Trajectory wrong_grid(std::vector<double>{0.0, 1.0}, s.dist.num_classes(), 0.0);
    CHECK_THROWS_AS(static_cast<void>(integrate_state(s, wrong_grid, uniform_seed(s, 0.01))),
                    ParameterError);
    CHECK_THROWS_AS(static_cast<void>(integrate_state(s, zero_controls(s), uniform_seed(s, 1.5))),
                    ParameterError);
}
