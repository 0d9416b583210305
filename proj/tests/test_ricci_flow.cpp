#include <random>

#include "doctest.h"
#include "twistor/ricci_flow.hpp"

using namespace twistor;

TEST_CASE("Ricci map and flow field, exact") {
    using P = std::pair<Rational, Rational>;
    CHECK(ricci_map(Family::CY, Rational(1), Rational(7)) == P{1, 8});
    CHECK(ricci_map(Family::CY, Rational(1, 2), Rational(1)) == P{Rational(3, 5), 10});
    CHECK(ricci_map(Family::Canonical, Rational(1), Rational(1)) == P{1, 8});
    CHECK_THROWS_AS(ricci_map(Family::Canonical, Rational(3), Rational(1)), RicciNotPositive);
    CHECK(flow_rhs(Family::CY, Rational(4), Rational(2)) == P{6, -13});
    CHECK(invariant_exact(Family::CY, Rational(4), Rational(81)) == Rational(6561, 4));
    CHECK_THROWS_AS(invariant_exact(Family::CY, Rational(1), Rational(1)), OnFixedRay);
    CHECK_THROWS_AS(flow_rhs(Family::CY, Rational(0), Rational(1)), NonPositiveParameter);
    CHECK(fixed_points(Family::Canonical) == std::vector<Rational>{Rational(1, 2), Rational(1)});
}

TEST_CASE("the invariant is a first integral, exactly") {
    std::mt19937 gen(20261018);
    std::uniform_int_distribution<int> num(1, 40), den(1, 13);
    for (Family f : {Family::CY, Family::Canonical}) {
        int done = 0;
        while (done < 20) {
            Rational mu(num(gen), den(gen)), rho(num(gen), den(gen));
            mu.canonicalize();
            rho.canonicalize();
            if (mu == 1 || 2 * mu == 1) continue;
            auto [gm, gr] = invariant_log_gradient(f, mu, rho);
            auto [vm, vr] = flow_rhs(f, mu, rho);
            CHECK(Rational(gm * vm + gr * vr) == 0);
            ++done;
        }
    }
}

TEST_CASE("adaptive integration against RK4 and the invariant") {
    FlowTrajectory tr = integrate({Family::CY, 2.0, 3.0}, 0.0, 0.05);
    FlowSample rk = integrate_fixed_step({Family::CY, 2.0, 3.0}, 0.0, 0.05, 4000);
    CHECK(tr.back().t == 0.05);
    CHECK(tr.back().mu == doctest::Approx(rk.mu).epsilon(1e-10));
    CHECK(tr.back().rho == doctest::Approx(rk.rho).epsilon(1e-10));
    CHECK(tr.max_invariant_drift() < 1e-8);

    FlowTrajectory can = integrate({Family::Canonical, 0.7, 2.0}, 0.0, -3.0);
    CHECK(can.back().t == -3.0);
    CHECK(can.max_invariant_drift() < 1e-8);
    CHECK(can.as_matrix().rows() == static_cast<Eigen::Index>(can.samples.size()));
}

TEST_CASE("extinction times") {
    ExtinctionResult cy = extinction_time({Family::CY, 0.5, 1.0});
    CHECK(!cy.analytic);
    CHECK(cy.T == doctest::Approx(17.0 / 384).epsilon(1e-6));

    // mu0 > 1: T = (C/4)(1/(3u^3) + 1/(4u^4)), u = mu0 - 1.
    const double C = 3.0 * 1 / 2, u = 1;
    ExtinctionResult up = extinction_time({Family::CY, 2.0, 3.0});
    CHECK(up.T == doctest::Approx(C / 4 * (1 / (3 * u * u * u) + 1 / (4 * u * u * u * u))).epsilon(1e-6));

    ExtinctionResult ke = extinction_time({Family::CY, 1.0, 2.0});
    CHECK(ke.analytic);
    CHECK(ke.T == 2.0 / 16);
    CHECK(extinction_time({Family::Canonical, 0.5, 2.0}).T == 0.1);
}

TEST_CASE("fixed rays are followed exactly") {
    FlowTrajectory tr = integrate({Family::CY, 1.0, 1.0}, 0.0, std::nullopt);
    CHECK(tr.exact_ray);
    REQUIRE(tr.find_event(EventKind::FixedRay) != nullptr);
    REQUIRE(tr.find_event(EventKind::Extinction) != nullptr);
    CHECK(*tr.terminal_time == 1.0 / 16);
    for (const FlowSample& s : tr.samples) CHECK(s.rho == doctest::Approx(1 - 16 * s.t));
}

TEST_CASE("events") {
    FlowOptions o;
    o.mu_stop = 3.0;
    FlowTrajectory up = integrate({Family::CY, 1.5, 1.0}, 0.0, std::nullopt, o);
    const FlowEvent* e = up.find_event(EventKind::MuLevel);
    REQUIRE(e != nullptr);
    CHECK(up.back().mu == doctest::Approx(3.0).epsilon(1e-3));

    FlowTrajectory down = integrate({Family::CY, 0.25, 1.0}, 0.0, std::nullopt);
    REQUIRE(down.find_event(EventKind::Extinction) != nullptr);
    CHECK(down.back().mu < 1e-5);
    CHECK(down.max_invariant_drift() < 1e-6);
}

TEST_CASE("classification") {
    CHECK(classify(Family::CY, 0.5).forward.mu == "0");
    CHECK(classify(Family::CY, 2.0).forward.mu == "inf");
    CHECK(classify(Family::CY, 2.0).ancient);
    CHECK(classify(Family::CY, 2.0).descriptor == "sub-Riemannian/horizontal limit");
    CHECK(!classify(Family::Canonical, 2.0).ancient);
    CHECK(classify(Family::Canonical, 0.7).backward.mu == "1/2");
    CHECK(classify(Family::Canonical, 0.3).ancient);
    CHECK_THROWS_AS(classify(Family::CY, 0.0), NonPositiveParameter);
}

TEST_CASE("soliton check requires span") {
    FlowTrajectory tr = integrate({Family::CY, 2.0, 1.0}, 0.0, -1.0);
    CHECK_THROWS_AS(soliton_check(tr), InsufficientSpan);
    FlowTrajectory ray = integrate({Family::CY, 1.0, 1.0}, 0.0, -6.0);
    VerificationReport rep = soliton_check(ray);
    CHECK(rep.count(Status::Fail) == 0);
}

TEST_CASE("approach to the soliton is too slow for a 1% match at t = -5") {
    // |mu - 1| decays like |t|^(-1/4), so drho/dt is still about 6% away from -16.
    FlowTrajectory tr = integrate({Family::CY, 2.0, 1.0}, 0.0, -5.0);
    VerificationReport rep = soliton_check(tr);
    CHECK(rep.find("flow.soliton.cy.monotone")->status == Status::Pass);
    CHECK(rep.find("flow.soliton.cy.contraction")->status == Status::Pass);
    CHECK(rep.find("flow.soliton.cy.drho_dt")->status == Status::Fail);
    auto [dmu, drho] = flow_rhs(Family::CY, tr.back().mu, tr.back().rho);
    (void)dmu;
    CHECK(drho == doctest::Approx(-15.08).epsilon(0.01));
}
