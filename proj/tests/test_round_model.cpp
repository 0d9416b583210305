#include "doctest.h"
#include "twistor/round_model.hpp"

using namespace twistor;

TEST_CASE("curvature norm of the round model") {
    const Coefficient rm = rm_norm_sq();
    CHECK(rm == Coefficient(64) + Coefficient(32) * Coefficient::lambda(-4));
    CHECK(rm.substitute_lambda(1) == Coefficient(96));
    CHECK(rm_norm_sq(CoframeSpec::twistor().scaled(2)) == rm * Coefficient(Rational(1, 16)));
    for (unsigned seed : {1u, 2u, 3u}) CHECK(relabeled_norms(seed).rm == rm);
    LaurentBehaviour b = laurent_behaviour(rm);
    CHECK(b.at_infinity == "finite 64");
    CHECK(b.at_zero == "diverges");
}

TEST_CASE("covariant derivative of the curvature") {
    // The printed connection is a constant conjugate of its l = 1 value, which is parallel.
    CHECK(nabla_rm_norm_sq(NablaConvention::Mixed13).is_zero());
    const Coefficient L = Coefficient::lambda(1);
    const Coefficient cov = nabla_rm_norm_sq(NablaConvention::Covariant04);
    CHECK(cov == Coefficient(160) * L * L - Coefficient(320) + Coefficient(256) * Coefficient::lambda(-2) -
                     Coefficient(192) * Coefficient::lambda(-4) + Coefficient(96) * Coefficient::lambda(-6));
    CHECK(cov.substitute_lambda(1).is_zero());
    CHECK(relabeled_norms(5, NablaConvention::Covariant04).nabla == cov);
}

TEST_CASE("round model report") {
    VerificationReport rep = round_model_report();
    CHECK(rep.find("round.nabla.lambda1")->status == Status::Pass);
    CHECK(rep.find("round.rm.scaling")->status == Status::Pass);
    CHECK(rep.find("round.nabla.decreasing")->status == Status::Fail);
    CHECK(rep.find("round.relabel.7.nabla")->status == Status::Pass);
}

TEST_CASE("curvature bound along flows") {
    FlowTrajectory ke = integrate({Family::CY, 1.0, 1.0}, 0.0, std::nullopt);
    BoundSummary b = bound_summary(ke);
    CHECK(std::isfinite(b.sup_bound));
    CHECK(b.sup_type_one == doctest::Approx(std::sqrt(96.0) / 16));

    FlowTrajectory cy = integrate({Family::CY, 2.0, 10.0}, 0.0, std::nullopt);
    FlowOptions tight;
    tight.rel_tol = 1e-14;
    FlowTrajectory cy2 = integrate({Family::CY, 2.0, 10.0}, 0.0, std::nullopt, tight);
    double s1 = bound_summary(cy).sup_bound, s2 = bound_summary(cy2).sup_bound;
    CHECK(std::abs(s1 - s2) / s1 < 1e-3);
    CHECK(bound_check(cy).count(Status::Fail) == 0);
    CHECK_THROWS_AS(bound_check(integrate({Family::CY, 2.0, 10.0}, 0.0, 0.1)), InsufficientSpan);
}
