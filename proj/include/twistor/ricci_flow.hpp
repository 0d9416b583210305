#pragma once

// Ricci flow dg/dt = -2 Ric restricted to the two-parameter families
// rho * g_l (CY) and rho * g_l^can, written in mu = l^2 and rho.

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "twistor/coefficient.hpp"
#include "twistor/report.hpp"
#include "twistor/twistor_curvature.hpp"

namespace twistor {

struct FamilyPoint {
    Family family = Family::CY;
    double mu = 1.0;
    double rho = 1.0;
};

namespace detail {

template <class T>
void require_positive(const T& mu, const T& rho) {
    if (!(mu > 0) || !(rho > 0)) throw NonPositiveParameter("mu and rho must be positive");
}

template <class T>
T abs_value(const T& v) {
    using std::abs;
    return abs(v);
}

}  // namespace detail

/// (mu, rho) of the metric Ric(rho g); independent of rho.
template <class T>
std::pair<T, T> ricci_map(Family f, const T& mu, const T& rho) {
    detail::require_positive(mu, rho);
    if (f == Family::CY) return {T(2 * mu * (1 + mu) / (1 + 3 * mu)), T(2 * (1 + 3 * mu) / mu)};
    if (!(mu < 3)) throw RicciNotPositive("canonical Ricci tensor is not positive for mu >= 3");
    return {T((1 + mu * mu) / (3 - mu)), T(4 * (3 - mu))};
}

/// (dmu/dt, drho/dt).
template <class T>
std::pair<T, T> flow_rhs(Family f, const T& mu, const T& rho) {
    detail::require_positive(mu, rho);
    if (f == Family::CY) return {T(4 * (mu - 1) / rho), T(-4 * (1 / mu + 3))};
    return {T(-8 * (mu - 1) * (2 * mu - 1) / rho), T(-8 * (3 - mu))};
}

/// Fixed rays dmu/dt = 0.
std::vector<Rational> fixed_points(Family f);

/// First integral C: rho (1-mu)^4 / mu (CY) or rho |2mu-1|^(5/2) / (mu-1)^2 (canonical).
/// The canonical invariant is irrational in general, so the exact overload covers CY only.
double invariant(Family f, double mu, double rho);
Rational invariant_exact(Family f, const Rational& mu, const Rational& rho);

/// (d log C / d mu, d log C / d rho), exact for rational input.
template <class T>
std::pair<T, T> invariant_log_gradient(Family f, const T& mu, const T& rho) {
    detail::require_positive(mu, rho);
    if (f == Family::CY) {
        if (mu == 1) throw OnFixedRay("invariant is singular on the ray mu = 1");
        return {T(-4 / (1 - mu) - 1 / mu), T(1 / rho)};
    }
    if (mu == 1 || 2 * mu == 1) throw OnFixedRay("invariant is singular on the fixed rays");
    return {T(5 / (2 * mu - 1) - 2 / (mu - 1)), T(1 / rho)};
}

enum class EventKind { Extinction, ParameterBlowup, FixedRay, MuLevel };
const char* event_name(EventKind k);

struct FlowOptions {
    double rel_tol = 1e-12;
    double abs_tol = 0.0;
    double rho_floor = 1e-12;
    double mu_floor = 1e-12;
    double mu_ceiling = 1e12;
    /// Optional level crossing mu = mu_stop that ends the run.
    std::optional<double> mu_stop;
    double fixed_ray_band = 1e-13;
    double event_time_tol = 1e-12;
    double initial_step = 1e-3;
    std::size_t max_steps = 5'000'000;
    /// Number of samples emitted along an exact fixed-ray segment.
    int ray_samples = 64;
};

struct FlowSample {
    double t, mu, rho;
};

struct FlowEvent {
    EventKind kind;
    double t, mu, rho;
};

struct FlowTrajectory {
    Family family = Family::CY;
    std::vector<FlowSample> samples;
    /// Invariant at each sample; NaN on a fixed ray.
    std::vector<double> invariant_C;
    std::vector<FlowEvent> events;
    /// Blow-up time extrapolated from the terminal approach, when a terminal event occurred.
    std::optional<double> terminal_time;
    /// Exponent p in Q ~ (T - t)^p of the quantity that triggered the terminal event.
    std::optional<double> terminal_exponent;
    bool exact_ray = false;
    std::size_t rejected_steps = 0;

    const FlowSample& back() const { return samples.back(); }
    /// max |C_i - C_0| / |C_0| over the samples where C is defined.
    double max_invariant_drift() const;
    const FlowEvent* find_event(EventKind k) const;
    Eigen::MatrixX3d as_matrix() const;
};

/// Dormand-Prince 5(4) with adaptive steps and event location. t1 = nullopt runs
/// forward until a terminal event.
FlowTrajectory integrate(const FamilyPoint& p, double t0, std::optional<double> t1, const FlowOptions& opts = {});

/// Fixed-step classical RK4, used as an independent oracle.
FlowSample integrate_fixed_step(const FamilyPoint& p, double t0, double t1, int steps);

struct ExtinctionResult {
    double T;
    EventKind kind;
    bool analytic;
};
ExtinctionResult extinction_time(const FamilyPoint& p, const FlowOptions& opts = {});

struct Limits {
    std::string mu, rho, rho_mu;
};

struct ClassificationRecord {
    Family family;
    double mu0;
    std::string regime;
    Limits backward, forward;
    bool ancient;
    std::string descriptor;
    std::string mu_direction;  // sign of dmu/dt at mu0: "increasing", "decreasing", "constant"
};
ClassificationRecord classify(Family f, double mu0);

/// drho/dt = -2 Ric_hh and d(rho mu)/dt = -2 Ric_vv mu checked exactly against cy_ricci
/// at n random rational mu (fixed seed).
VerificationReport flow_ricci_consistency(unsigned seed = 20261018, int n = 20);
/// Extinction on the Kaehler-Einstein ray and the printed value T = 1/8 for rho0 = 1.
VerificationReport ke_ray_report();

/// Backward run to t_min must reach t_min <= -5.
VerificationReport soliton_check(const FlowTrajectory& traj);

std::vector<FlowTrajectory> portrait(Family f, double mu_a, double mu_b, int n_mu, double rho_a, double rho_b, int n_rho,
                                     const FlowOptions& opts = {});

}  // namespace twistor
