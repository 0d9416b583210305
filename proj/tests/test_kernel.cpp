#include <random>

#include "doctest.h"
#include "twistor/form.hpp"
#include "twistor/form_matrix.hpp"

using namespace twistor;
using G = Generator;

namespace {

const Coefficient I = Coefficient::imaginary_unit();
const Coefficient L = Coefficient::lambda();

Form gen(G g, const Coefficient& c = 1) { return Form::generator(g, c); }

// Small random coefficient: a few terms with mixed l powers and Weyl symbols.
Coefficient random_coefficient(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3), lp(-2, 2), wv(0, 5), terms(1, 3);
    Coefficient out;
    for (int t = terms(rng); t > 0; --t) {
        Exponent e{};
        e[kLambdaVar] = lp(rng);
        int v = wv(rng);
        if (v > 0) e[v] = 1;
        out += Coefficient::monomial(e, GaussianRational(Rational(num(rng), den(rng)), Rational(num(rng), 5)));
    }
    return out;
}

Form random_form(std::mt19937& rng, int degree) {
    std::uniform_int_distribution<int> pick(0, kNumGenerators - 1), terms(1, 4);
    Form out(degree);
    for (int t = terms(rng); t > 0; --t) {
        Form mono = Form::scalar(random_coefficient(rng));
        for (int k = 0; k < degree; ++k) mono = wedge(mono, gen(static_cast<G>(pick(rng))));
        out += mono;
    }
    return out;
}

// Round-sphere style rules with some coefficient content, for Leibniz tests.
DerivationTable sample_table() {
    DerivationTable t;
    t.set(G::A1, Form::monomial({G::A2, G::A3}, 2) + Form::monomial({G::X1, G::X0}, 2));
    t.set(G::A2, Form::monomial({G::A3, G::A1}, 2) + Form::monomial({G::X2, G::X3}, L));
    t.set(G::X0, Form::monomial({G::G1, G::X1}, Coefficient::weyl(1, 2)));
    t.set(G::X3, Form::monomial({G::A1, G::X2}, -1) + Form::monomial({G::G3, G::X0}, I));
    return t;
}

}  // namespace

TEST_CASE("wedge basics") {
    Form x01 = wedge(gen(G::X0), gen(G::X1));
    CHECK(x01.terms().size() == 1);
    CHECK(x01.str() == "X0^X1");
    CHECK(wedge(gen(G::X0), gen(G::X0)).is_zero());
    CHECK(wedge(gen(G::X1), gen(G::X0)) == -x01);

    Form zeta = gen(G::A1) + gen(G::A3, I);
    Form zeta_bar = gen(G::A1) - gen(G::A3, I);
    CHECK(wedge(zeta, zeta_bar) == Form::monomial({G::A1, G::A3}, -2 * I));
    CHECK(conjugate(zeta) == zeta_bar);
}

TEST_CASE("wedge beyond top degree vanishes") {
    Form top = Form::scalar(1);
    for (G g : kAllGenerators) top = wedge(top, gen(g));
    CHECK(top.degree() == 10);
    CHECK(!top.is_zero());
    CHECK(wedge(top, gen(G::X0)).is_zero());
}

TEST_CASE("graded commutativity and associativity on random forms") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        int da = trial % 3, db = (trial / 3) % 3, dc = 1 + trial % 2;
        Form a = random_form(rng, da), b = random_form(rng, db), c = random_form(rng, dc);
        Form ab = wedge(a, b), ba = wedge(b, a);
        CHECK(ab == ((da * db) % 2 == 0 ? ba : -ba));
        CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    }
}

TEST_CASE("exterior derivative Leibniz rule") {
    DerivationTable t = sample_table();
    CHECK(exterior_derivative(Form::scalar(5), t).is_zero());
    Form a13 = Form::monomial({G::A1, G::A3});
    CHECK(exterior_derivative(a13, t) == wedge(t[G::A1], gen(G::A3)) - wedge(gen(G::A1), t[G::A3]));

    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        int da = trial % 3, db = 1 + trial % 2;
        Form a = random_form(rng, da), b = random_form(rng, db);
        Form lhs = exterior_derivative(wedge(a, b), t);
        Form rhs = wedge(exterior_derivative(a, t), b);
        Form second = wedge(a, exterior_derivative(b, t));
        rhs += da % 2 == 0 ? second : -second;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("conjugation is an involutive algebra automorphism") {
    CHECK(conjugate(Form::monomial({G::X0, G::X1}, I)) == Form::monomial({G::X0, G::X1}, -I));
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        Form a = random_form(rng, 1), b = random_form(rng, 2);
        CHECK(conjugate(conjugate(a)) == a);
        CHECK(conjugate(wedge(a, b)) == wedge(conjugate(a), conjugate(b)));
    }
}

TEST_CASE("lambda substitution") {
    CHECK(substitute_lambda(gen(G::X0, L) - gen(G::X0, Coefficient::lambda(-1)), 1).is_zero());
    CHECK(substitute_lambda(Form::monomial({G::A1, G::A3}, Coefficient::lambda(2)), 2) ==
          Form::monomial({G::A1, G::A3}, 4));
    CHECK_THROWS_AS(substitute_lambda(gen(G::X0, L), 0), ZeroSubstitution);

    DerivationTable t = sample_table();
    DerivationTable t1;
    for (G g : kAllGenerators) t1.set(g, substitute_lambda(t[g], 1));
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Form a = random_form(rng, 1), b = random_form(rng, 2);
        Rational v(3, 2);
        CHECK(substitute_lambda(wedge(a, b), v) == wedge(substitute_lambda(a, v), substitute_lambda(b, v)));
        CHECK(substitute_lambda(exterior_derivative(b, t), 1) == exterior_derivative(substitute_lambda(b, 1), t1));
        CHECK(substitute_lambda(conjugate(a), v) == conjugate(substitute_lambda(a, v)));
    }
}

TEST_CASE("coefficient ring") {
    Coefficient w33 = Coefficient::weyl(3, 3);
    CHECK(w33 == -(Coefficient::weyl(1, 1) + Coefficient::weyl(2, 2)));
    CHECK(Coefficient::weyl(2, 1) == Coefficient::weyl(1, 2));
    CHECK((2 * Coefficient::lambda(-1) * Coefficient::weyl(1, 2)).str() == "2*l^-1*w12");
    CHECK((L * L.inverse()) == Coefficient(1));
    CHECK(Coefficient::lambda(-2).substitute_lambda(Rational(1, 2)) == Coefficient(4));
    CHECK((Coefficient::lambda(2) + 1).substitute_lambda_squared(Rational(3)) == Coefficient(4));
    CHECK_THROWS_AS(L.substitute_lambda_squared(Rational(2)), std::invalid_argument);
    CHECK((I * I) == Coefficient(-1));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-1.5e-2") == Rational(-3, 200));
    CHECK(parse_rational("29/10") == Rational(29, 10));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("form rendering") {
    Form f = Form::monomial({G::A1, G::A3}, 2 * Coefficient::lambda(-1) * Coefficient::weyl(1, 2)) +
             Form::monomial({G::X0, G::X1}, Coefficient::weyl(1, 1) - Coefficient::weyl(2, 2));
    CHECK(f.str() == "2*l^-1*w12 * A1^A3 + (w11 - w22) * X0^X1");
    CHECK(Form(2).str() == "0");
}

TEST_CASE("evaluate_pair on the twistor coframe") {
    CoframeSpec frame = CoframeSpec::twistor();
    Form x01 = Form::monomial({G::X0, G::X1});
    CHECK(evaluate_pair(x01, frame, 2, 3) == Coefficient(1));
    CHECK(evaluate_pair(x01, frame, 3, 2) == Coefficient(-1));
    CHECK(evaluate_pair(Form::monomial({G::A1, G::X0}), frame, 0, 2) == Coefficient::lambda(-1));
    CHECK_THROWS_AS(evaluate_pair(Form::monomial({G::A2, G::X0}), frame, 0, 2), NonBasicForm);
}

TEST_CASE("form matrix algebra") {
    FormMatrix m({"a", "b"}, 1);
    m(0, 1) = gen(G::X0);
    m(1, 0) = -gen(G::X0);
    m(0, 0) = gen(G::A2, I);
    FormMatrix mm = wedge(m, m);
    CHECK(mm.degree() == 2);
    CHECK(mm(0, 0).is_zero());
    CHECK(mm(0, 1) == Form::monomial({G::A2, G::X0}, I));
    CHECK(m.transpose()(1, 0) == gen(G::X0));
    CoefficientMatrix k = m.generator_coefficients(G::X0);
    CHECK(k(0, 1) == Coefficient(1));
    CHECK(k(1, 0) == Coefficient(-1));
    CHECK(is_zero(CoefficientMatrix(k + k.transpose())));
}
