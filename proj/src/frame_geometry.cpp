#include "twistor/frame_geometry.hpp"

namespace twistor {

namespace {

using G = Generator;

Form x(int a) { return Form::generator(x_gen(a)); }
Form xx(int a, int b) { return wedge(x(a), x(b)); }

const std::vector<std::string> kBaseLabels = {"h0", "h1", "h2", "h3"};

// Basis matrices of sp(1)+ and sp(1)- in so(4); entry (i,j) of component mu.
CoefficientMatrix basis_matrix(int mu, bool plus) {
    CoefficientMatrix m = zero_matrix(4);
    auto [a, b, c] = cyclic(mu);
    (void)a;
    m(mu, 0) = 1;
    m(0, mu) = -1;
    // The complementary pair (b, c) rotates with sign -1 for sp(1)+ and +1 for sp(1)-.
    m(b, c) = plus ? -1 : 1;
    m(c, b) = plus ? 1 : -1;
    return m;
}

bool is_zero_form_list(const std::array<Form, 4>& forms) {
    for (const Form& f : forms)
        if (!f.is_zero()) return false;
    return true;
}

}  // namespace

Coefficient CurvatureModel::w(int j, int k) const {
    if (custom_w) return (*custom_w).at(j - 1).at(k - 1);
    if (kind == Kind::Round) return {};
    return Coefficient::weyl(j, k);
}

std::array<int, 3> cyclic(int mu) {
    switch (mu) {
        case 1: return {1, 2, 3};
        case 2: return {2, 3, 1};
        case 3: return {3, 1, 2};
    }
    throw std::out_of_range("cyclic index must be 1..3");
}

So4Split so4_split(const CoefficientMatrix& m) {
    if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument("so4_split expects a 4x4 matrix");
    if (!is_zero(CoefficientMatrix(m + m.transpose()))) throw NotAntisymmetric("so4_split input is not antisymmetric");
    const Coefficient half = Rational(1, 2);
    So4Split s;
    for (int mu = 1; mu <= 3; ++mu) {
        auto [a, b, c] = cyclic(mu);
        (void)a;
        s.plus[mu - 1] = half * (m(mu, 0) - m(b, c));
        s.minus[mu - 1] = half * (m(mu, 0) + m(b, c));
    }
    return s;
}

CoefficientMatrix so4_recompose(const So4Split& s) {
    CoefficientMatrix m = zero_matrix(4);
    for (int mu = 1; mu <= 3; ++mu) {
        m += s.plus[mu - 1] * basis_matrix(mu, true);
        m += s.minus[mu - 1] * basis_matrix(mu, false);
    }
    return m;
}

FormMatrix base_connection() {
    FormMatrix gamma_matrix(kBaseLabels, 1);
    for (int mu = 1; mu <= 3; ++mu) {
        CoefficientMatrix p = basis_matrix(mu, true), n = basis_matrix(mu, false);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                gamma_matrix(i, j) += Form::generator(gamma(mu), p(i, j)) + Form::generator(alpha(mu), n(i, j));
    }
    return gamma_matrix;
}

Form printed_gamma_entry_23() { return -Form::generator(G::G1) + Form::generator(G::A3); }

Form sigma(const CurvatureModel& model, int kappa) {
    auto [k, eta, nu] = cyclic(kappa);
    return xx(k, 0) + Coefficient(model.sigma_sign) * xx(eta, nu);
}

Form weyl_part(const CurvatureModel& model, int mu) {
    Form out(2);
    for (int kappa = 1; kappa <= 3; ++kappa) out += model.w(mu, kappa) * sigma(model, kappa);
    return out;
}

DerivationTable derivation_table(const CurvatureModel& model) {
    DerivationTable t;
    FormMatrix gamma_matrix = base_connection();
    for (int a = 0; a < 4; ++a) {
        Form d(2);
        for (int b = 0; b < 4; ++b) d -= wedge(gamma_matrix(a, b), x(b));
        t.set(x_gen(a), d);
    }
    for (int mu = 1; mu <= 3; ++mu) {
        auto [m, eta, nu] = cyclic(mu);
        Form a_eta = Form::generator(alpha(eta)), a_nu = Form::generator(alpha(nu));
        Form g_eta = Form::generator(gamma(eta)), g_nu = Form::generator(gamma(nu));
        t.set(alpha(m), Coefficient(2) * wedge(a_eta, a_nu) + Coefficient(2) * (xx(m, 0) + xx(eta, nu)));
        t.set(gamma(m), Coefficient(-2) * wedge(g_eta, g_nu) + Coefficient(2) * xx(m, 0) -
                            Coefficient(2) * xx(eta, nu) + weyl_part(model, m));
    }
    return t;
}

FormMatrix base_curvature(const CurvatureModel& model) {
    return curvature_of(base_connection(), derivation_table(model));
}

CoefficientMatrix ricci_contract(const FormMatrix& omega, const CoframeSpec& frame) {
    const auto n = static_cast<Eigen::Index>(frame.size());
    CoefficientMatrix r = zero_matrix(n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k)
                r(i, j) += evaluate_pair(omega(static_cast<std::size_t>(j), static_cast<std::size_t>(k)), frame,
                                         static_cast<std::size_t>(i), static_cast<std::size_t>(k));
    return r;
}

Coefficient sectional_curvature(const FormMatrix& omega, const CoframeSpec& frame, std::size_t p, std::size_t q) {
    return evaluate_pair(omega(p, q), frame, p, q);
}

std::array<Form, 4> bianchi_residuals(const CurvatureModel& model) {
    FormMatrix omega = base_curvature(model);
    std::array<Form, 4> out;
    for (int a = 0; a < 4; ++a) {
        Form r(3);
        for (int b = 0; b < 4; ++b) r += wedge(omega(a, b), x(b));
        out[a] = r;
    }
    return out;
}

int calibrate_sigma_sign() {
    int chosen = 0;
    for (int s : {1, -1}) {
        CurvatureModel m = CurvatureModel::formal_w();
        m.sigma_sign = s;
        if (is_zero_form_list(bianchi_residuals(m))) {
            if (chosen != 0) throw std::logic_error("both sigma signs satisfy first Bianchi");
            chosen = s;
        }
    }
    if (chosen == 0) throw std::logic_error("no sigma sign satisfies first Bianchi");
    return chosen;
}

VerificationReport consistency_suite(const CurvatureModel& model) {
    VerificationReport rep;
    const std::string pre = std::string("base.") + model.name() + ".";
    DerivationTable t = derivation_table(model);

    rep.add(pre + "sigma.convention", Status::Pass, "sigma_k = X_k^X0 " +
            std::string(model.sigma_sign < 0 ? "-" : "+") + " X_eta^X_nu", "",
            "overall sign epsilon = +1; the sign inside sigma is fixed by first Bianchi");

    FormMatrix gamma_matrix = base_connection();
    rep.compare(pre + "gamma.antisymmetric", "Gamma + Gamma^T", "0",
                (gamma_matrix + gamma_matrix.transpose()).is_zero());
    rep.compare("base.gamma.entry23.printed", printed_gamma_entry_23().str(), gamma_matrix(2, 3).str(),
                printed_gamma_entry_23() == gamma_matrix(2, 3), Status::Mismatch);

    for (int a = 0; a < 4; ++a) {
        Form dd = exterior_derivative(t[x_gen(a)], t);
        rep.compare(pre + "d2.X" + std::to_string(a), dd.str(), "0", dd.is_zero());
    }
    for (int mu = 1; mu <= 3; ++mu) {
        Form dd = exterior_derivative(t[alpha(mu)], t);
        rep.compare(pre + "d2.A" + std::to_string(mu), dd.str(), "0", dd.is_zero());
    }
    for (int mu = 1; mu <= 3; ++mu) {
        const std::string id = pre + "d2.G" + std::to_string(mu);
        if (model.kind == CurvatureModel::Kind::Round && !model.custom_w) {
            Form dd = exterior_derivative(t[gamma(mu)], t);
            rep.compare(id, dd.str(), "0", dd.is_zero());
        } else {
            rep.add(id, Status::Skipped, "", "", "needs d(w), i.e. second Bianchi data for W+, which is not modelled");
        }
    }

    auto residuals = bianchi_residuals(model);
    for (int a = 0; a < 4; ++a)
        rep.compare(pre + "bianchi." + std::to_string(a), residuals[a].str(), "0", residuals[a].is_zero());

    FormMatrix omega = curvature_of(gamma_matrix, t);
    rep.compare(pre + "omega.antisymmetric", "Omega + Omega^T", "0", (omega + omega.transpose()).is_zero());

    bool basic = true;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (G g : {G::A1, G::A2, G::A3, G::G1, G::G2, G::G3}) basic = basic && !omega(i, j).contains(g);
    rep.compare(pre + "omega.basic", "gauge generators in Omega", "none", basic);

    CoframeSpec frame = CoframeSpec::base();
    if (!basic) {
        rep.add(pre + "ricci.identity12", Status::Fail, "", "", "curvature is not basic");
        return rep;
    }

    if (model.kind == CurvatureModel::Kind::Round && !model.custom_w) {
        bool eq4 = true;
        for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) eq4 = eq4 && omega(k, l) == Coefficient(4) * xx(k, l);
        rep.compare(pre + "omega.eq4", "Omega^k_l", "4 X_k^X_l", eq4);
    }

    CoefficientMatrix ric = ricci_contract(omega, frame);
    CoefficientMatrix expected = scaled_identity(4, 12);
    std::string ric_text;
    for (int i = 0; i < 4; ++i) ric_text += (i ? ", " : "") + ric(i, i).str();
    rep.compare(pre + "ricci.identity12", "diag(" + ric_text + ")", "12*I", is_zero(CoefficientMatrix(ric - expected)));
    rep.compare(pre + "ricci.symmetric", "R - R^T", "0", is_zero(CoefficientMatrix(ric - ric.transpose())));
    Coefficient trace = ric.trace();
    rep.compare(pre + "ricci.trace48", trace.str(), std::to_string(kScalarCurvature),
                trace == Coefficient(kScalarCurvature));

    for (std::size_t p = 0; p < 4; ++p)
        for (std::size_t q = p + 1; q < 4; ++q) {
            Coefficient k = sectional_curvature(omega, frame, p, q);
            const std::string id = pre + "sectional." + std::to_string(p) + std::to_string(q);
            if (model.kind == CurvatureModel::Kind::Round && !model.custom_w)
                rep.compare(id, k.str(), "4", k == Coefficient(4));
            else
                rep.compare(id, k.str(), "4 + (w-linear)", k.drop_weyl() == Coefficient(4), Status::Fail,
                            "round part 4 plus the Weyl contribution");
        }
    return rep;
}

}  // namespace twistor
