#pragma once

// Curvature magnitudes of the CY twistor metric over the round 4-sphere.

#include <array>
#include <string>

#include "twistor/ricci_flow.hpp"

namespace twistor {

/// R^l_{kij} of the round-base CY metric in the orthonormal twistor frame.
CurvatureArray round_curvature_array(const CoframeSpec& frame = CoframeSpec::twistor());

/// |Rm|^2 as the quarter-sum of squared components over all index tuples.
Coefficient rm_norm_sq(const CoframeSpec& frame = CoframeSpec::twistor());

/// Connection coefficients K_m(l, a) = M^l_a(e_m) of the printed connection in normal gauge.
CoefficientMatrix connection_in_direction(std::size_t m, const CoframeSpec& frame = CoframeSpec::twistor());

enum class NablaConvention {
    /// Upper first index; every slot transported by the printed connection.
    Mixed13,
    /// All indices lowered with the orthonormal metric before differentiating.
    Covariant04,
};
const char* convention_name(NablaConvention c);

/// |nabla Rm|^2: plain sum over the derivative slot of the quarter-sum over the rest.
Coefficient nabla_rm_norm_sq(NablaConvention c = NablaConvention::Mixed13);

/// Both norms recomputed after relabeling the frame by a signed permutation.
struct RelabelResult {
    std::array<int, 6> perm;
    std::array<int, 6> signs;
    Coefficient rm, nabla;
};
RelabelResult relabeled_norms(unsigned seed, NablaConvention c = NablaConvention::Mixed13);

struct LaurentBehaviour {
    std::optional<int> max_degree, min_degree;
    std::string at_infinity, at_zero;  // "0", "finite <value>", "diverges"
};
LaurentBehaviour laurent_behaviour(const Coefficient& c);

VerificationReport round_model_report();

/// sup over the samples of |Rm(t)| (T_k - t + 1), with T_k the last sample time.
struct BoundSummary {
    double sup_bound;
    double sup_type_one;  // sup |Rm(t)| (T - t), T the extrapolated extinction time
    double t_k;
};
BoundSummary bound_summary(const FlowTrajectory& traj);
VerificationReport bound_check(const FlowTrajectory& traj);

}  // namespace twistor
