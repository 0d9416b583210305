#pragma once

// Cartan data of a self-dual Einstein 4-manifold with scalar curvature 48.

#include <array>
#include <optional>
#include <utility>

#include "twistor/form.hpp"
#include "twistor/form_matrix.hpp"
#include "twistor/report.hpp"

namespace twistor {

inline constexpr int kScalarCurvature = 48;

using WeylBlock = std::array<std::array<Coefficient, 3>, 3>;

struct CurvatureModel {
    enum class Kind { Round, FormalW };

    Kind kind = Kind::Round;
    /// Replaces the symbolic Weyl block; test fixtures use it for asymmetric w.
    std::optional<WeylBlock> custom_w;
    /// Sign s in sigma_k = X_k ^ X_0 + s * X_eta ^ X_nu. Bianchi selects s = -1.
    int sigma_sign = -1;

    static CurvatureModel round() { return {}; }
    static CurvatureModel formal_w() { return {Kind::FormalW, std::nullopt, -1}; }

    /// w_jk (1-based); zero for the round model.
    Coefficient w(int j, int k) const;
    const char* name() const { return kind == Kind::Round ? "round" : "formalw"; }
};

/// Cyclic successor triple (mu, eta, nu) of mu in 1..3.
std::array<int, 3> cyclic(int mu);

/// sp(1)+ (Gamma) and sp(1)- (alpha) components of an antisymmetric 4x4 matrix.
struct So4Split {
    std::array<Coefficient, 3> plus;
    std::array<Coefficient, 3> minus;
};
So4Split so4_split(const CoefficientMatrix& m);
CoefficientMatrix so4_recompose(const So4Split& s);

/// The 4x4 Levi-Civita connection matrix over A1..A3, G1..G3.
FormMatrix base_connection();
/// Entry (2,3) in its printed form, for the errata record.
Form printed_gamma_entry_23();

/// Self-dual 2-form sigma_k with the model's sign.
Form sigma(const CurvatureModel& model, int kappa);
/// Weyl part Omega'^mu_0 = sum_k w_{mu k} sigma_k.
Form weyl_part(const CurvatureModel& model, int mu);

DerivationTable derivation_table(const CurvatureModel& model);
FormMatrix base_curvature(const CurvatureModel& model);

/// R_ij = sum_k Omega^j_k(e_i, e_k).
CoefficientMatrix ricci_contract(const FormMatrix& omega, const CoframeSpec& frame);
Coefficient sectional_curvature(const FormMatrix& omega, const CoframeSpec& frame, std::size_t p, std::size_t q);

/// First Bianchi residuals sum_B Omega^A_B ^ X_B for A = 0..3.
std::array<Form, 4> bianchi_residuals(const CurvatureModel& model);
/// Picks the sigma sign for which first Bianchi holds with symbolic w.
int calibrate_sigma_sign();

VerificationReport consistency_suite(const CurvatureModel& model);

}  // namespace twistor
