#pragma once

// Twistor-space connection of the partially scaled metric and its curvature.

#include <array>
#include <set>
#include <utility>
#include <vector>

#include "twistor/frame_geometry.hpp"

namespace twistor {

/// Labels v1, v2, h0..h3 of the orthonormal twistor coframe.
const std::vector<std::string>& twistor_labels();
/// The coframe entries l*A1, l*A3, X0..X3 as forms.
std::array<Form, 6> twistor_coframe_forms();
inline constexpr std::array<Generator, 4> kGaugeGenerators = {Generator::A2, Generator::G1, Generator::G2,
                                                              Generator::G3};

/// The 6x6 connection matrix as printed (not skew for l != 1).
FormMatrix cy_connection();
VerificationReport verify_first_structure(const CurvatureModel& model);
VerificationReport skewness_report();

FormMatrix cy_curvature(const CurvatureModel& model);
/// Printed curvature entries with the dalpha shorthand expanded by the model rules,
/// keyed by (row, column) in twistor_labels() order.
std::vector<std::pair<std::pair<std::size_t, std::size_t>, Form>> printed_curvature_entries(const CurvatureModel& model);
VerificationReport curvature_report(const CurvatureModel& model);

CoefficientMatrix cy_ricci(const CurvatureModel& model);
VerificationReport ricci_report(const CurvatureModel& model);

/// Components R^l_{kij} = Omega^l_k(e_i, e_j), flattened as ((l*n + k)*n + i)*n + j.
class CurvatureArray {
public:
    CurvatureArray(const FormMatrix& omega, const CoframeSpec& frame);
    explicit CurvatureArray(std::size_t n) : n_(n), data_(n * n * n * n) {}

    std::size_t dim() const { return n_; }
    Coefficient& operator()(std::size_t l, std::size_t k, std::size_t i, std::size_t j) {
        return data_[((l * n_ + k) * n_ + i) * n_ + j];
    }
    const Coefficient& operator()(std::size_t l, std::size_t k, std::size_t i, std::size_t j) const {
        return data_[((l * n_ + k) * n_ + i) * n_ + j];
    }
    const std::vector<Coefficient>& data() const { return data_; }
    bool is_zero() const;

private:
    std::size_t n_;
    std::vector<Coefficient> data_;
};

/// Derivation of the component array by an infinitesimal frame rotation k acting on all four slots.
CurvatureArray frame_derivation(const CoefficientMatrix& k, const CurvatureArray& r);
/// Induced rotation of the Weyl block under the gauge generator G_kappa, as the
/// corresponding derivation of the component array (zero for A2 and the round model).
CurvatureArray weyl_derivation(Generator g, const CurvatureArray& r);
VerificationReport gauge_invariance_check(const CurvatureModel& model);

/// zeta0 = A1 + i A3, Z1 = X0 + i X2, Z2 = X1 + i X3.
std::array<Form, 3> complex_coframe();
/// The Hermitian connection matrix K with d theta = -K ^ theta.
FormMatrix hermitian_connection();
VerificationReport complex_structure_check(const CurvatureModel& model);
VerificationReport ricci_form_check(const CurvatureModel& model);

enum class Family { CY, Canonical };
const char* family_name(Family f);
Family parse_family(const std::string& s);

/// (fiber, base) coefficients of the canonical-family Ricci tensor, 4(1+mu^2) and 4(3-mu).
std::pair<Rational, Rational> canonical_ricci(const Rational& mu);
/// Polynomial (ascending coefficients) whose positive roots are the Einstein parameters mu.
std::vector<Rational> einstein_polynomial(Family f);
std::set<Rational> einstein_parameters(Family f);
/// Einstein parameter sets and the canonical positivity boundary mu = 3.
VerificationReport einstein_report();
/// Positive rational roots of a polynomial with rational coefficients (ascending order).
std::set<Rational> positive_rational_roots(const std::vector<Rational>& coeffs);
/// Laurent polynomial in l with only even powers and no Weyl terms, as ascending
/// coefficients of mu = l^2 after multiplying through by mu^shift; returns shift too.
std::pair<std::vector<Rational>, int> as_polynomial_in_mu(const Coefficient& c);

}  // namespace twistor
