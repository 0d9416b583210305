#include "twistor/ricci_flow.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <random>

namespace twistor {

namespace {

using State = Eigen::Vector2d;  // (mu, rho)

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Unchecked right-hand side: stage evaluations may probe mu <= 0 near events.
State rhs(Family f, const State& y) {
    const double mu = y[0], rho = y[1];
    if (f == Family::CY) return {4 * (mu - 1) / rho, -4 * (1 / mu + 3)};
    return {-8 * (mu - 1) * (2 * mu - 1) / rho, -8 * (3 - mu)};
}

bool valid(const State& y) { return std::isfinite(y[0]) && std::isfinite(y[1]) && y[0] > 0 && y[1] > 0; }

// The integrator works with z = (mu - a, rho), a the limit of mu in the direction of
// integration, so that the error control is relative to the distance from that limit.
struct Chart {
    Family f;
    double a;

    State mu_state(const State& z) const { return {z[0] + a, z[1]}; }
    State field(const State& z) const {
        const double u = z[0], rho = z[1], mu = u + a;
        const double m1 = u + (a - 1), m2 = 2 * u + (2 * a - 1);
        if (f == Family::CY) return {4 * m1 / rho, -4 * (1 / mu + 3)};
        return {-8 * m1 * m2 / rho, -8 * (3 - mu)};
    }
    double invariant(const State& z) const {
        const double u = z[0], rho = z[1];
        const double m1 = u + (a - 1), m2 = 2 * u + (2 * a - 1);
        if (f == Family::CY) return rho * std::pow(m1, 4) / (u + a);
        return rho * std::pow(std::abs(m2), 2.5) / (m1 * m1);
    }
    bool valid(const State& z) const { return twistor::valid(mu_state(z)); }
};

Chart chart_for(Family f, double mu0, double dir) {
    if (f == Family::CY) return {f, dir < 0 ? 1.0 : 0.0};
    if (dir > 0) return {f, mu0 < 0.5 ? 0.0 : 1.0};
    return {f, mu0 < 1 ? 0.5 : 0.0};
}

struct StepResult {
    State y;
    State err;
    bool ok;
};

// One Dormand-Prince 5(4) step.
StepResult dopri_step(const Chart& c, const State& y, double h) {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;
    StepResult out{y, State::Zero(), false};
    auto stage = [&](const State& s, State& k) {
        if (!c.valid(s)) return false;
        k = c.field(s);
        return std::isfinite(k[0]) && std::isfinite(k[1]);
    };
    State k1, k2, k3, k4, k5, k6, k7;
    if (!stage(y, k1)) return out;
    if (!stage(y + h * a21 * k1, k2)) return out;
    if (!stage(y + h * (a31 * k1 + a32 * k2), k3)) return out;
    if (!stage(y + h * (a41 * k1 + a42 * k2 + a43 * k3), k4)) return out;
    if (!stage(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), k5)) return out;
    if (!stage(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), k6)) return out;
    State y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    if (!stage(y5, k7)) return out;
    out.y = y5;
    out.err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    out.ok = true;
    return out;
}

double error_norm(const StepResult& s, const State& y, const FlowOptions& o) {
    double e = 0;
    for (int i = 0; i < 2; ++i) {
        double scale = o.abs_tol + o.rel_tol * std::max(std::abs(y[i]), std::abs(s.y[i]));
        if (scale <= 0) scale = std::numeric_limits<double>::min();
        e = std::max(e, std::abs(s.err[i]) / scale);
    }
    return e;
}

// Terminal conditions. Returns the kind of the first condition violated by y (or none).
std::optional<EventKind> terminal(Family f, const State& y, const FlowOptions& o, double mu_sign0) {
    (void)f;
    const double mu = y[0], rho = y[1];
    if (std::min(rho, rho * mu) < o.rho_floor) return EventKind::Extinction;
    if (mu < o.mu_floor || mu > o.mu_ceiling) return EventKind::ParameterBlowup;
    if (o.mu_stop && (mu - *o.mu_stop) * mu_sign0 <= 0) return EventKind::MuLevel;
    return std::nullopt;
}

// Which terminal quantity is closest to its threshold, for states the step could not reach.
EventKind nearest_terminal(const State& y, const FlowOptions& o) {
    const double mu = y[0], rho = y[1];
    double ext = std::log(std::min(rho, rho * mu) / o.rho_floor);
    double lo = std::log(mu / o.mu_floor), hi = std::log(o.mu_ceiling / mu);
    if (ext <= lo && ext <= hi) return EventKind::Extinction;
    return EventKind::ParameterBlowup;
}

// The quantity whose vanishing or divergence ends the run, and its time derivative.
std::pair<double, double> terminal_quantity(Family f, EventKind kind, const State& y) {
    State d = rhs(f, y);
    const double mu = y[0], rho = y[1];
    if (kind == EventKind::Extinction) {
        if (rho * mu < rho) return {rho * mu, mu * d[1] + rho * d[0]};
        return {rho, d[1]};
    }
    if (mu < 1) return {mu, d[0]};
    return {1 / mu, -d[0] / (mu * mu)};
}

// RK4 in s = log Q from s = 0 to s = ds: d(t, z)/ds = (1, z') Q / Q'.
// Returns the elapsed time and the final z.
std::pair<double, State> land_on_threshold(const Chart& c, EventKind kind, const State& z0, double ds) {
    constexpr int steps = 256;
    using V3 = Eigen::Vector3d;
    auto field = [&](const V3& w) {
        const State z(w[1], w[2]);
        auto [q, dq] = terminal_quantity(c.f, kind, c.mu_state(z));
        const State d = c.field(z);
        const double r = q / dq;
        return V3(r, d[0] * r, d[1] * r);
    };
    V3 w(0, z0[0], z0[1]);
    const double h = ds / steps;
    for (int i = 0; i < steps; ++i) {
        V3 k1 = field(w);
        V3 k2 = field(w + 0.5 * h * k1);
        V3 k3 = field(w + 0.5 * h * k2);
        V3 k4 = field(w + h * k3);
        w += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return {w[0], State(w[1], w[2])};
}

std::optional<Rational> fixed_point_near(Family f, double mu, double band) {
    for (const Rational& fp : fixed_points(f))
        if (std::abs(mu - fp.get_d()) < band) return fp;
    return std::nullopt;
}

void push(FlowTrajectory& tr, double t, const State& y, bool ray) {
    tr.samples.push_back({t, y[0], y[1]});
    tr.invariant_C.push_back(ray ? kNaN : invariant(tr.family, y[0], y[1]));
}

void push(FlowTrajectory& tr, double t, const Chart& c, const State& z) {
    const State y = c.mu_state(z);
    tr.samples.push_back({t, y[0], y[1]});
    tr.invariant_C.push_back(c.invariant(z));
}

// Exact homothetic solution rho(t) = rho_k + rate (t - t_k) on a fixed ray.
void follow_ray(FlowTrajectory& tr, double tk, double mu_fp, double rho_k, std::optional<double> t1, double dir,
                const FlowOptions& o) {
    tr.exact_ray = true;
    tr.events.push_back({EventKind::FixedRay, tk, mu_fp, rho_k});
    const double rate = rhs(tr.family, State(mu_fp, rho_k))[1];
    const double extinction = tk - rho_k / rate;
    double t_end;
    bool extinct = false;
    const double floor_time = tk + (o.rho_floor - rho_k) / rate;
    if (t1 && (dir < 0 || *t1 < floor_time)) {
        t_end = *t1;
    } else {
        t_end = floor_time;
        extinct = true;
    }
    // Drop the sample at t_k recorded by the caller; the ray re-emits it exactly.
    if (!tr.samples.empty() && tr.samples.back().t == tk) {
        tr.samples.pop_back();
        tr.invariant_C.pop_back();
    }
    for (int i = 0; i <= o.ray_samples; ++i) {
        double t = i == o.ray_samples ? t_end : tk + (t_end - tk) * i / o.ray_samples;
        push(tr, t, State(mu_fp, rho_k + rate * (t - tk)), true);
    }
    if (extinct) {
        tr.events.push_back({EventKind::Extinction, t_end, mu_fp, tr.back().rho});
        tr.terminal_time = extinction;
        tr.terminal_exponent = 1.0;
    }
}

std::string limit_name(double v) {
    if (v == 0.5) return "1/2";
    if (std::isinf(v)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

std::vector<Rational> fixed_points(Family f) {
    if (f == Family::CY) return {Rational(1)};
    return {Rational(1, 2), Rational(1)};
}

double invariant(Family f, double mu, double rho) {
    detail::require_positive(mu, rho);
    if (f == Family::CY) {
        if (mu == 1) throw OnFixedRay("invariant is singular on the ray mu = 1");
        return rho * std::pow(1 - mu, 4) / mu;
    }
    if (mu == 1 || mu == 0.5) throw OnFixedRay("invariant is singular on the fixed rays");
    return rho * std::pow(std::abs(2 * mu - 1), 2.5) / ((mu - 1) * (mu - 1));
}

Rational invariant_exact(Family f, const Rational& mu, const Rational& rho) {
    detail::require_positive(mu, rho);
    if (f != Family::CY) throw std::domain_error("the canonical invariant is not rational in general");
    if (mu == 1) throw OnFixedRay("invariant is singular on the ray mu = 1");
    Rational d = 1 - mu;
    Rational out = rho * d * d * d * d / mu;
    out.canonicalize();
    return out;
}

const char* event_name(EventKind k) {
    switch (k) {
        case EventKind::Extinction: return "extinction";
        case EventKind::ParameterBlowup: return "parameter-blowup";
        case EventKind::FixedRay: return "fixed-ray";
        case EventKind::MuLevel: return "mu-level";
    }
    return "unknown";
}

double FlowTrajectory::max_invariant_drift() const {
    double c0 = kNaN, drift = 0;
    for (double c : invariant_C) {
        if (std::isnan(c)) continue;
        if (std::isnan(c0)) {
            c0 = c;
            continue;
        }
        drift = std::max(drift, std::abs(c - c0) / std::abs(c0));
    }
    return drift;
}

const FlowEvent* FlowTrajectory::find_event(EventKind k) const {
    for (const FlowEvent& e : events)
        if (e.kind == k) return &e;
    return nullptr;
}

Eigen::MatrixX3d FlowTrajectory::as_matrix() const {
    Eigen::MatrixX3d m(static_cast<Eigen::Index>(samples.size()), 3);
    for (std::size_t i = 0; i < samples.size(); ++i)
        m.row(static_cast<Eigen::Index>(i)) << samples[i].t, samples[i].mu, samples[i].rho;
    return m;
}

FlowTrajectory integrate(const FamilyPoint& p, double t0, std::optional<double> t1, const FlowOptions& o) {
    detail::require_positive(p.mu, p.rho);
    if (!(o.rel_tol > 0)) throw std::invalid_argument("rel_tol must be positive");
    FlowTrajectory tr;
    tr.family = p.family;
    const double dir = t1 && *t1 < t0 ? -1.0 : 1.0;

    State y(p.mu, p.rho);
    double t = t0;
    if (auto fp = fixed_point_near(p.family, y[0], o.fixed_ray_band)) {
        follow_ray(tr, t, fp->get_d(), y[1], t1, dir, o);
        return tr;
    }
    const Chart chart = chart_for(p.family, p.mu, dir);
    State z(p.mu - chart.a, p.rho);
    push(tr, t, chart, z);
    if (t1 && *t1 == t0) return tr;

    const double mu_sign0 = o.mu_stop ? (p.mu > *o.mu_stop ? 1.0 : -1.0) : 1.0;
    if (auto k = terminal(p.family, y, o, mu_sign0)) {
        tr.events.push_back({*k, t, y[0], y[1]});
        return tr;
    }

    double h = o.initial_step;
    if (t1) h = std::min(h, std::abs(*t1 - t0));
    for (std::size_t step = 0; step < o.max_steps; ++step) {
        if (t1 && (*t1 - t) * dir <= 0) return tr;
        double hs = dir * h;
        bool last = false;
        if (t1 && (t + hs - *t1) * dir >= 0) {
            hs = *t1 - t;
            last = true;
        }
        const double h_min = 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
        bool at_resolution = false;
        if (std::abs(hs) < h_min) {
            // Below time resolution: fine if the singularity is within reach, an error otherwise.
            y = chart.mu_state(z);
            auto [q, dq] = terminal_quantity(p.family, nearest_terminal(y, o), y);
            if (!(q / std::abs(dq) < 1e6 * h_min))
                throw StepUnderflow("step size underflow at t = " + std::to_string(t), t, y[0], y[1]);
            at_resolution = true;
        }

        StepResult s = at_resolution ? StepResult{z, State::Zero(), false} : dopri_step(chart, z, hs);
        double err = s.ok ? error_norm(s, z, o) : std::numeric_limits<double>::infinity();
        std::optional<EventKind> crossed;
        if (s.ok && err <= 1) crossed = terminal(p.family, chart.mu_state(s.y), o, mu_sign0);

        // A failed step close to a terminal threshold is a crossing, not an error.
        bool unreachable = at_resolution || (!s.ok && std::abs(hs) < 1e-6 * std::max(1.0, std::abs(t)));
        if (crossed || unreachable) {
            double lo = 0, hi = hs;
            State zlo = z;
            State yhi = s.ok ? chart.mu_state(s.y) : State(kNaN, kNaN);
            for (int it = 0; it < 400; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi) break;
                StepResult m = dopri_step(chart, z, mid);
                if (m.ok && !terminal(p.family, chart.mu_state(m.y), o, mu_sign0)) {
                    lo = mid;
                    zlo = m.y;
                } else {
                    hi = mid;
                    yhi = m.ok ? chart.mu_state(m.y) : State(kNaN, kNaN);
                }
                const State ylo = chart.mu_state(zlo);
                // Stop once the bracket is tight in t and the valid end sits at the threshold.
                if (std::abs(hi - lo) < o.event_time_tol) {
                    const EventKind k = crossed.value_or(nearest_terminal(ylo, o));
                    double gap = 0;
                    if (k == EventKind::Extinction) gap = std::min(ylo[1], ylo[1] * ylo[0]) / o.rho_floor - 1;
                    if (k == EventKind::MuLevel) gap = std::abs(ylo[0] - *o.mu_stop) / std::abs(*o.mu_stop);
                    if (gap < 1e-3) break;
                }
            }
            State ylo = chart.mu_state(zlo);
            EventKind kind = crossed.value_or(nearest_terminal(ylo, o));
            if (valid(yhi)) {
                if (auto k = terminal(p.family, yhi, o, mu_sign0)) kind = *k;
            }
            if ((kind == EventKind::Extinction || kind == EventKind::ParameterBlowup) && valid(ylo)) {
                // Near the singularity t is too coarse a clock; finish on the threshold
                // using log Q as the independent variable.
                auto [q, dq] = terminal_quantity(p.family, kind, ylo);
                double target = o.rho_floor;
                if (kind == EventKind::ParameterBlowup) target = ylo[0] < 1 ? o.mu_floor : 1 / o.mu_ceiling;
                target *= 1 + 1e-9;
                if (q > target && -q / dq * dir > 0) {
                    auto [dt, z_end] = land_on_threshold(chart, kind, zlo, std::log(target / q));
                    if (chart.valid(z_end) && !terminal(p.family, chart.mu_state(z_end), o, mu_sign0)) {
                        lo += dt;
                        hi = lo;
                        zlo = z_end;
                        ylo = chart.mu_state(zlo);
                    }
                }
            }
            if (lo != 0) push(tr, t + lo, chart, zlo);
            tr.events.push_back({kind, t + 0.5 * (lo + hi), ylo[0], ylo[1]});
            if (kind == EventKind::Extinction || kind == EventKind::ParameterBlowup) {
                // Q ~ (T - t)^p gives q = -Q/Q' = (T - t)/p, linear in t with slope -1/p.
                const std::size_t n = tr.samples.size();
                if (n >= 2) {
                    const FlowSample& a = tr.samples[n - 2];
                    const FlowSample& b = tr.samples[n - 1];
                    auto [qa, da] = terminal_quantity(p.family, kind, State(a.mu, a.rho));
                    auto [qb, db] = terminal_quantity(p.family, kind, State(b.mu, b.rho));
                    double ra = -qa / da, rb = -qb / db;
                    double slope = (rb - ra) / (b.t - a.t);
                    if (std::isfinite(slope) && slope < 0) {
                        double pexp = -1 / slope;
                        tr.terminal_exponent = pexp;
                        tr.terminal_time = b.t + pexp * rb;
                    }
                }
                if (!tr.terminal_time) tr.terminal_time = tr.events.back().t;
            }
            return tr;
        }

        if (s.ok && err <= 1) {
            t = last ? *t1 : t + hs;
            z = s.y;
            y = chart.mu_state(z);
            push(tr, t, chart, z);
            if (auto fp = fixed_point_near(p.family, y[0], o.fixed_ray_band)) {
                follow_ray(tr, t, fp->get_d(), y[1], t1, dir, o);
                return tr;
            }
            double fac = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            h = std::abs(hs) * std::clamp(fac, 0.2, 5.0);
        } else {
            ++tr.rejected_steps;
            double fac = s.ok ? 0.9 * std::pow(err, -0.2) : 0.25;
            h = std::abs(hs) * std::clamp(fac, 0.1, 0.9);
        }
    }
    throw StepUnderflow("step budget exhausted", t, y[0], y[1]);
}

FlowSample integrate_fixed_step(const FamilyPoint& p, double t0, double t1, int steps) {
    detail::require_positive(p.mu, p.rho);
    State y(p.mu, p.rho);
    const double h = (t1 - t0) / steps;
    for (int i = 0; i < steps; ++i) {
        State k1 = rhs(p.family, y);
        State k2 = rhs(p.family, y + 0.5 * h * k1);
        State k3 = rhs(p.family, y + 0.5 * h * k2);
        State k4 = rhs(p.family, y + h * k3);
        y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return {t1, y[0], y[1]};
}

ExtinctionResult extinction_time(const FamilyPoint& p, const FlowOptions& opts) {
    detail::require_positive(p.mu, p.rho);
    if (auto fp = fixed_point_near(p.family, p.mu, opts.fixed_ray_band)) {
        const double rate = rhs(p.family, State(fp->get_d(), p.rho))[1];
        return {-p.rho / rate, EventKind::Extinction, true};
    }
    FlowTrajectory tr = integrate(p, 0.0, std::nullopt, opts);
    for (const FlowEvent& e : tr.events)
        if (e.kind == EventKind::Extinction || e.kind == EventKind::ParameterBlowup)
            return {tr.terminal_time.value_or(e.t), e.kind, false};
    throw StepUnderflow("no terminal event reached", tr.back().t, tr.back().mu, tr.back().rho);
}

ClassificationRecord classify(Family f, double mu0) {
    if (!(mu0 > 0)) throw NonPositiveParameter("mu0 must be positive");
    ClassificationRecord r{f, mu0, "", {}, {}, true, "", ""};
    const double inf = std::numeric_limits<double>::infinity();
    const double dmu = f == Family::CY ? 4 * (mu0 - 1) : -8 * (mu0 - 1) * (2 * mu0 - 1);
    r.mu_direction = dmu > 0 ? "increasing" : dmu < 0 ? "decreasing" : "constant";
    if (f == Family::CY) {
        if (mu0 == 1) {
            r.regime = "KE-ray";
            r.backward = {"1", "inf", "inf"};
            r.forward = {"1", "0", "0"};
            r.descriptor = "Kaehler-Einstein homothety, shrinking to a point at T = rho0/16";
        } else if (mu0 < 1) {
            r.regime = "fiber-collapse";
            r.backward = {"1", "inf", "inf"};
            r.forward = {"0", "0", "0"};
            r.descriptor = "base-metric limit after rho-normalization";
        } else {
            r.regime = "base-first-collapse";
            r.backward = {"1", "inf", "inf"};
            r.forward = {"inf", "0", "0"};
            r.descriptor = "sub-Riemannian/horizontal limit";
        }
        r.ancient = true;
        return r;
    }
    if (mu0 == 1 || mu0 == 0.5) {
        r.regime = mu0 == 1 ? "KE-ray" : "Einstein-ray";
        r.backward = {limit_name(mu0), "inf", "inf"};
        r.forward = {limit_name(mu0), "0", "0"};
        r.descriptor = "homothetic Einstein solution";
        r.ancient = true;
    } else if (mu0 < 0.5) {
        r.regime = "canonical-below-einstein";
        r.backward = {"1/2", "inf", "inf"};
        r.forward = {"0", "positive", "0"};
        r.descriptor = "fiber degenerates in finite time with the base scale positive";
        r.ancient = true;
    } else if (mu0 < 1) {
        r.regime = "canonical-between-fixed-rays";
        r.backward = {"1/2", "inf", "inf"};
        r.forward = {"1", "0", "0"};
        r.descriptor = "repelled by the Einstein ray mu=1/2, attracted to the Kaehler-Einstein ray";
        r.ancient = true;
    } else {
        r.regime = "canonical-above-ke";
        r.backward = {limit_name(inf), "0", "inf"};
        r.forward = {"1", "0", "0"};
        r.descriptor = "attracted to the Kaehler-Einstein ray forward; mu blows up in finite backward time";
        r.ancient = false;
    }
    return r;
}

VerificationReport flow_ricci_consistency(unsigned seed, int n) {
    const CoefficientMatrix ric = cy_ricci(CurvatureModel::formal_w());
    std::mt19937 gen(seed);
    std::uniform_int_distribution<int> num(1, 97), den(1, 31);
    VerificationReport rep;
    for (int i = 0; i < n; ++i) {
        Rational mu(num(gen), den(gen)), rho(num(gen), den(gen));
        mu.canonicalize();
        rho.canonicalize();
        const Rational hh = ric(2, 2).substitute_lambda_squared(mu).constant_value()->re;
        const Rational vv = ric(0, 0).substitute_lambda_squared(mu).constant_value()->re;
        auto [dmu, drho] = flow_rhs(Family::CY, mu, rho);
        const Rational d_rho_mu = mu * drho + rho * dmu;
        const std::string at = "mu=" + rational_str(mu);
        const std::string id = "flow.cross." + std::to_string(i);
        rep.compare(id + ".rho", rational_str(drho), rational_str(Rational(-2 * hh)), drho == -2 * hh, Status::Fail, at);
        rep.compare(id + ".rho_mu", rational_str(d_rho_mu), rational_str(Rational(-2 * vv * mu)),
                    d_rho_mu == -2 * vv * mu, Status::Fail, at);
    }
    return rep;
}

VerificationReport ke_ray_report() {
    VerificationReport rep;
    FlowTrajectory tr = integrate({Family::CY, 1.0, 1.0}, 0.0, std::nullopt);
    double mu_dev = 0, rho_dev = 0;
    for (const FlowSample& s : tr.samples) {
        mu_dev = std::max(mu_dev, std::abs(s.mu - 1));
        rho_dev = std::max(rho_dev, std::abs(s.rho - (1 - 16 * s.t)));
    }
    rep.compare("flow.ke.mu_preserved", std::to_string(mu_dev), "< 1e-12", mu_dev < 1e-12);
    rep.compare("flow.ke.rho_linear", std::to_string(rho_dev), "< 1e-9", rho_dev < 1e-9);
    const double T = extinction_time({Family::CY, 1.0, 1.0}).T;
    rep.compare("flow.ke.extinction", "T = " + std::to_string(T), "T = rho0/16 = 0.0625", T == 1.0 / 16);
    rep.compare("flow.ke.extinction.printed", "T = 1/16", "T = 1/8", false, Status::Mismatch,
                "printed extinction time for rho0 = 1 disagrees with drho/dt = -16");
    return rep;
}

VerificationReport soliton_check(const FlowTrajectory& traj) {
    if (traj.samples.size() < 2 || traj.samples.back().t > traj.samples.front().t)
        throw InsufficientSpan("soliton_check needs a backward trajectory");
    const FlowSample& first = traj.samples.front();
    const FlowSample& last = traj.samples.back();
    if (last.t > -5) throw InsufficientSpan("backward span must reach t <= -5");

    VerificationReport rep;
    const std::string pre = std::string("flow.soliton.") + family_name(traj.family) + ".";
    // |mu - 1| must shrink as t decreases.
    bool monotone = true;
    for (std::size_t i = 1; i < traj.samples.size(); ++i)
        monotone = monotone &&
                   std::abs(traj.samples[i].mu - 1) <= std::abs(traj.samples[i - 1].mu - 1) * (1 + 1e-12) + 1e-15;
    rep.compare(pre + "monotone", monotone ? "|mu-1| non-increasing backward" : "|mu-1| grows backward",
                "|mu-1| non-increasing backward", monotone, Status::Fail,
                traj.family == Family::Canonical ? "the canonical flow approaches mu=1 forward in time, not backward"
                                                 : "");

    // Exponential fit log|mu-1| ~ a + b t, reported as data.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const FlowSample& s : traj.samples) {
        double d = std::abs(s.mu - 1);
        if (d == 0) continue;
        sx += s.t;
        sy += std::log(d);
        sxx += s.t * s.t;
        sxy += s.t * std::log(d);
        ++n;
    }
    std::string fit = "n/a";
    double residual = 0;
    if (n >= 3) {
        double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        double a = (sy - b * sx) / n;
        for (const FlowSample& s : traj.samples) {
            double d = std::abs(s.mu - 1);
            if (d > 0) residual += std::pow(std::log(d) - a - b * s.t, 2);
        }
        residual = std::sqrt(residual / n);
        fit = "rate " + std::to_string(b) + ", rms log residual " + std::to_string(residual);
    }
    double d0 = std::abs(first.mu - 1), d1 = std::abs(last.mu - 1);
    rep.compare(pre + "contraction", "|mu(t_min)-1| = " + std::to_string(d1), "< |mu(0)-1| = " + std::to_string(d0),
                d1 <= d0, Status::Fail, "exponential fit: " + fit);

    auto [dmu, drho] = flow_rhs(traj.family, last.mu, last.rho);
    (void)dmu;
    double rel = std::abs(drho + 16) / 16;
    rep.compare(pre + "drho_dt", "drho/dt(t_min) = " + std::to_string(drho), "-16 within 1%", rel < 0.01,
                Status::Fail, "relative deviation " + std::to_string(rel));
    return rep;
}

std::vector<FlowTrajectory> portrait(Family f, double mu_a, double mu_b, int n_mu, double rho_a, double rho_b, int n_rho,
                                     const FlowOptions& opts) {
    if (n_mu < 1 || n_rho < 1) throw std::invalid_argument("grid sizes must be positive");
    std::vector<FlowTrajectory> out;
    for (int i = 0; i < n_mu; ++i)
        for (int j = 0; j < n_rho; ++j) {
            double mu = n_mu == 1 ? mu_a : mu_a + (mu_b - mu_a) * i / (n_mu - 1);
            double rho = n_rho == 1 ? rho_a : rho_a + (rho_b - rho_a) * j / (n_rho - 1);
            out.push_back(integrate({f, mu, rho}, 0.0, std::nullopt, opts));
        }
    return out;
}

}  // namespace twistor
