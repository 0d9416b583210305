#include "doctest.h"
#include "twistor/frame_geometry.hpp"

using namespace twistor;
using G = Generator;

namespace {

Form gen(G g, long c = 1) { return Form::generator(g, c); }
Form xx(int a, int b) { return wedge(Form::generator(x_gen(a)), Form::generator(x_gen(b))); }

}  // namespace

TEST_CASE("so4 split") {
    So4Split s = so4_split(zero_matrix(4));
    for (int i = 0; i < 3; ++i) CHECK((s.plus[i].is_zero() && s.minus[i].is_zero()));

    CoefficientMatrix e = zero_matrix(4);
    e(1, 0) = 1;
    e(0, 1) = -1;
    s = so4_split(e);
    CHECK(s.plus[0] == Coefficient(Rational(1, 2)));
    CHECK(s.minus[0] == Coefficient(Rational(1, 2)));
    CHECK(s.plus[1].is_zero());

    // Right multiplication by i: the sp(1)- generator with a = (1, 0, 0).
    CoefficientMatrix right_i = zero_matrix(4);
    right_i(1, 0) = 1;
    right_i(0, 1) = -1;
    right_i(2, 3) = 1;
    right_i(3, 2) = -1;
    s = so4_split(right_i);
    CHECK(s.minus[0] == Coefficient(1));
    CHECK(s.plus[0].is_zero());

    for (int k = 0; k < 6; ++k) {
        So4Split b;
        for (int i = 0; i < 3; ++i) b.plus[i] = b.minus[i] = Coefficient();
        (k < 3 ? b.plus[k] : b.minus[k - 3]) = 1;
        So4Split back = so4_split(so4_recompose(b));
        CHECK((back.plus == b.plus && back.minus == b.minus));
    }

    CoefficientMatrix bad = zero_matrix(4);
    bad(1, 0) = 1;
    CHECK_THROWS_AS(so4_split(bad), NotAntisymmetric);
}

TEST_CASE("base connection matches the displayed matrix") {
    FormMatrix g = base_connection();
    // Row-by-row transcription with the (2,3) entry corrected to -G1+A1.
    const Form expected[4][4] = {
        {Form(1), -gen(G::G1) - gen(G::A1), -gen(G::G2) - gen(G::A2), -gen(G::G3) - gen(G::A3)},
        {gen(G::G1) + gen(G::A1), Form(1), -gen(G::G3) + gen(G::A3), gen(G::G2) - gen(G::A2)},
        {gen(G::G2) + gen(G::A2), gen(G::G3) - gen(G::A3), Form(1), -gen(G::G1) + gen(G::A1)},
        {gen(G::G3) + gen(G::A3), -gen(G::G2) + gen(G::A2), gen(G::G1) - gen(G::A1), Form(1)},
    };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(g(i, j) == expected[i][j]);
    CHECK((g + g.transpose()).is_zero());
    CHECK(printed_gamma_entry_23() != g(2, 3));

    for (int mu = 1; mu <= 3; ++mu) {
        So4Split sg = so4_split(g.generator_coefficients(gamma(mu)));
        So4Split sa = so4_split(g.generator_coefficients(alpha(mu)));
        for (int k = 1; k <= 3; ++k) {
            CHECK(sg.plus[k - 1] == Coefficient(k == mu ? 1 : 0));
            CHECK(sg.minus[k - 1].is_zero());
            CHECK(sa.minus[k - 1] == Coefficient(k == mu ? 1 : 0));
            CHECK(sa.plus[k - 1].is_zero());
        }
    }
}

TEST_CASE("derivation table entries") {
    DerivationTable t = derivation_table(CurvatureModel::round());
    CHECK(t[G::A1] == Coefficient(2) * Form::monomial({G::A2, G::A3}) + Coefficient(2) * (xx(1, 0) + xx(2, 3)));
    CHECK(t[G::X0] == wedge(gen(G::G1) + gen(G::A1), Form::generator(G::X1)) +
                          wedge(gen(G::G2) + gen(G::A2), Form::generator(G::X2)) +
                          wedge(gen(G::G3) + gen(G::A3), Form::generator(G::X3)));
    CHECK(t[G::G1] == Coefficient(-2) * Form::monomial({G::G2, G::G3}) + Coefficient(2) * xx(1, 0) -
                          Coefficient(2) * xx(2, 3));
}

TEST_CASE("sigma sign calibration selects the self-dual combination") {
    CHECK(calibrate_sigma_sign() == -1);
}

TEST_CASE("base curvature") {
    FormMatrix round = base_curvature(CurvatureModel::round());
    for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) CHECK(round(k, l) == Coefficient(4) * xx(k, l));

    FormMatrix formal = base_curvature(CurvatureModel::formal_w());
    Form diff = formal(1, 0) - round(1, 0);
    CHECK(!diff.is_zero());
    for (const auto& [m, c] : diff.terms()) CHECK(c.drop_weyl().is_zero());

    CoframeSpec frame = CoframeSpec::base();
    CHECK(sectional_curvature(round, frame, 0, 1) == Coefficient(4));
    CHECK(sectional_curvature(round, frame, 2, 2).is_zero());
    Coefficient k01 = sectional_curvature(formal, frame, 0, 1);
    CHECK(k01.drop_weyl() == Coefficient(4));
    CHECK(k01.has_weyl_terms());

    CHECK(is_zero(CoefficientMatrix(ricci_contract(round, frame) - scaled_identity(4, 12))));
    CHECK(is_zero(CoefficientMatrix(ricci_contract(formal, frame) - scaled_identity(4, 12))));
    CHECK(is_zero(ricci_contract(FormMatrix({"h0", "h1", "h2", "h3"}, 2), frame)));
}

TEST_CASE("consistency suite") {
    ErrataList errata = ErrataList::builtin();
    VerificationReport round = consistency_suite(CurvatureModel::round());
    CHECK(round.passed(errata));
    CHECK(round.count(Status::Fail) == 0);
    CHECK(round.count(Status::Skipped) == 0);
    CHECK(round.find("base.gamma.entry23.printed")->status == Status::Mismatch);

    VerificationReport formal = consistency_suite(CurvatureModel::formal_w());
    CHECK(formal.passed(errata));
    CHECK(formal.count(Status::Skipped) == 3);
    CHECK(formal.find("base.formalw.d2.G1")->status == Status::Skipped);

    // Negative control: a non-symmetric Weyl block breaks first Bianchi.
    CurvatureModel asym = CurvatureModel::formal_w();
    WeylBlock w;
    for (auto& row : w)
        for (auto& c : row) c = Coefficient();
    w[0][1] = Coefficient::weyl(1, 2);
    asym.custom_w = w;
    VerificationReport bad = consistency_suite(asym);
    CHECK(!bad.passed(errata));
    bool some_bianchi_failed = false;
    for (int a = 0; a < 4; ++a)
        some_bianchi_failed = some_bianchi_failed || bad.find("base.formalw.bianchi." + std::to_string(a))->status == Status::Fail;
    CHECK(some_bianchi_failed);
}
