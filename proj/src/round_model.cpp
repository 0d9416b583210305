#include "twistor/round_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace twistor {

namespace {

using Index = Eigen::Index;

Coefficient quarter_sum(const CurvatureArray& r) {
    Coefficient s;
    for (const Coefficient& c : r.data()) s += c * c;
    return s * Coefficient(Rational(1, 4));
}

// nabla_m R in the given convention; the components themselves are constant in the frame.
CurvatureArray covariant_derivative(const CoefficientMatrix& k, const CurvatureArray& r, NablaConvention c) {
    if (c == NablaConvention::Mixed13) return frame_derivation(k, r);
    const std::size_t n = r.dim();
    auto kk = [&](std::size_t a, std::size_t b) -> const Coefficient& { return k(Index(a), Index(b)); };
    CurvatureArray out(n);
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t q = 0; q < n; ++q)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    Coefficient v;
                    for (std::size_t a = 0; a < n; ++a) {
                        v -= kk(a, l) * r(a, q, i, j);
                        v -= kk(a, q) * r(l, a, i, j);
                        v -= kk(a, i) * r(l, q, a, j);
                        v -= kk(a, j) * r(l, q, i, a);
                    }
                    out(l, q, i, j) = std::move(v);
                }
    return out;
}

Coefficient nabla_norm(const std::vector<CoefficientMatrix>& ks, const CurvatureArray& r, NablaConvention c) {
    Coefficient s;
    for (const CoefficientMatrix& k : ks) s += quarter_sum(covariant_derivative(k, r, c));
    return s;
}

std::vector<CoefficientMatrix> all_directions(const CoframeSpec& frame) {
    std::vector<CoefficientMatrix> ks;
    for (std::size_t m = 0; m < frame.size(); ++m) ks.push_back(connection_in_direction(m, frame));
    return ks;
}

Coefficient constant_term(const Coefficient& c) {
    for (const auto& [e, v] : c.terms())
        if (e == Exponent{}) return Coefficient(v);
    return Coefficient();
}

int permutation_sign(const std::array<int, 6>& p) {
    int s = 1;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

std::string decimal(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

CurvatureArray round_curvature_array(const CoframeSpec& frame) {
    return CurvatureArray(cy_curvature(CurvatureModel::round()), frame);
}

Coefficient rm_norm_sq(const CoframeSpec& frame) { return quarter_sum(round_curvature_array(frame)); }

CoefficientMatrix connection_in_direction(std::size_t m, const CoframeSpec& frame) {
    FormMatrix conn = cy_connection();
    const Vector& e = frame.frame_vector(m);
    const Index n = Index(conn.size());
    CoefficientMatrix k = zero_matrix(n);
    for (Index l = 0; l < n; ++l)
        for (Index a = 0; a < n; ++a) k(l, a) = interior(conn(std::size_t(l), std::size_t(a)), e).coefficient(0);
    return k;
}

const char* convention_name(NablaConvention c) { return c == NablaConvention::Mixed13 ? "mixed13" : "covariant04"; }

Coefficient nabla_rm_norm_sq(NablaConvention c) {
    const CoframeSpec frame = CoframeSpec::twistor();
    return nabla_norm(all_directions(frame), round_curvature_array(frame), c);
}

RelabelResult relabeled_norms(unsigned seed, NablaConvention c) {
    std::mt19937 gen(seed);
    RelabelResult out;
    // Vertical slots stay put; the horizontal ones get a signed permutation of determinant +1.
    std::array<int, 4> h{2, 3, 4, 5};
    std::shuffle(h.begin(), h.end(), gen);
    out.perm = {0, 1, h[0], h[1], h[2], h[3]};
    std::bernoulli_distribution flip(0.5);
    int sign_product = 1;
    out.signs = {1, 1, 1, 1, 1, 1};
    for (int i = 2; i < 5; ++i) {
        out.signs[i] = flip(gen) ? -1 : 1;
        sign_product *= out.signs[i];
    }
    out.signs[5] = sign_product * permutation_sign(out.perm);

    const CoframeSpec frame = CoframeSpec::twistor();
    const CurvatureArray r = round_curvature_array(frame);
    const auto& p = out.perm;
    const auto& s = out.signs;
    CurvatureArray rp(6);
    for (std::size_t l = 0; l < 6; ++l)
        for (std::size_t k = 0; k < 6; ++k)
            for (std::size_t i = 0; i < 6; ++i)
                for (std::size_t j = 0; j < 6; ++j)
                    rp(l, k, i, j) = Coefficient(long(s[l] * s[k] * s[i] * s[j])) * r(p[l], p[k], p[i], p[j]);
    std::vector<CoefficientMatrix> ks = all_directions(frame), kp;
    for (std::size_t m = 0; m < 6; ++m) {
        CoefficientMatrix k = zero_matrix(6);
        for (Index l = 0; l < 6; ++l)
            for (Index a = 0; a < 6; ++a)
                k(l, a) = Coefficient(long(s[m] * s[l] * s[a])) * ks[p[m]](p[l], p[a]);
        kp.push_back(std::move(k));
    }
    out.rm = quarter_sum(rp);
    out.nabla = nabla_norm(kp, rp, c);
    return out;
}

LaurentBehaviour laurent_behaviour(const Coefficient& c) {
    LaurentBehaviour b{c.max_lambda_degree(), c.min_lambda_degree(), "0", "0"};
    if (c.is_zero()) return b;
    const std::string finite = "finite " + constant_term(c).str();
    b.at_infinity = *b.max_degree > 0 ? "diverges" : *b.max_degree == 0 ? finite : "0";
    b.at_zero = *b.min_degree < 0 ? "diverges" : *b.min_degree == 0 ? finite : "0";
    return b;
}

VerificationReport round_model_report() {
    VerificationReport rep;
    const Coefficient rm = rm_norm_sq();
    const Coefficient nabla = nabla_rm_norm_sq(NablaConvention::Mixed13);

    const Coefficient rm1 = rm.substitute_lambda(1);
    rep.compare("round.rm.lambda1", rm1.str(), "96", rm1 == Coefficient(96));
    rep.compare("round.rm.wfree", rm.has_weyl_terms() ? "w-dependent" : "w-free", "w-free",
                !rm.has_weyl_terms() && !nabla.has_weyl_terms());
    const LaurentBehaviour brm = laurent_behaviour(rm);
    rep.compare("round.rm.degree", "max degree " + std::to_string(brm.max_degree.value_or(0)), "<= 0",
                brm.max_degree.value_or(0) <= 0, Status::Fail, rm.str());

    // g -> 4g at l = 2: the squared norm picks up 1/16.
    const Coefficient scaled = rm_norm_sq(CoframeSpec::twistor().scaled(2)).substitute_lambda(2);
    const Coefficient expected = rm.substitute_lambda(2) * Coefficient(Rational(1, 16));
    rep.compare("round.rm.scaling", scaled.str(), expected.str(), scaled == expected);

    for (unsigned seed : {7u, 11u, 2026u}) {
        RelabelResult r = relabeled_norms(seed);
        const std::string id = "round.relabel." + std::to_string(seed);
        rep.compare(id + ".rm", r.rm.str(), rm.str(), r.rm == rm);
        rep.compare(id + ".nabla", r.nabla.str(), nabla.str(), r.nabla == nabla);
    }

    const Coefficient n1 = nabla.substitute_lambda(1);
    rep.compare("round.nabla.lambda1", n1.str(), "0", n1.is_zero());
    std::string values;
    bool decreasing = true;
    std::optional<Rational> prev;
    for (int l : {2, 4, 8, 16, 32}) {
        Coefficient v = nabla.substitute_lambda(l);
        values += (values.empty() ? "" : ", ") + v.str();
        const Rational q = v.is_zero() ? Rational(0) : v.constant_value()->re;
        decreasing = decreasing && q > 0 && (!prev || q < *prev);
        prev = q;
    }
    rep.compare("round.nabla.decreasing", values, "strictly decreasing positive values at l = 2,4,8,16,32",
                decreasing, Status::Fail,
                nabla.is_zero() ? "the printed connection transports the curvature array exactly: nabla Rm vanishes for every l"
                                : "");
    const LaurentBehaviour bn = laurent_behaviour(nabla);
    rep.compare("round.nabla.limit_infinity", bn.at_infinity, "0", bn.at_infinity == "0", Status::Fail,
                nabla.is_zero() ? "identically zero" : nabla.str());
    rep.add("round.nabla.limit_zero", Status::Pass, bn.at_zero, "reported", "l -> 0 behaviour of " + nabla.str());
    rep.add("round.rm.limits", Status::Pass, "l->0: " + brm.at_zero + "; l->inf: " + brm.at_infinity, "reported",
            rm.str());

    const Coefficient cov = nabla_rm_norm_sq(NablaConvention::Covariant04);
    const LaurentBehaviour bc = laurent_behaviour(cov);
    rep.add("round.nabla.covariant04", Status::Skipped, cov.str(),
            "l->0: " + bc.at_zero + "; l->inf: " + bc.at_infinity,
            "all-lower-index variant, reported for comparison only");
    return rep;
}

BoundSummary bound_summary(const FlowTrajectory& traj) {
    if (traj.samples.empty()) throw InsufficientSpan("empty trajectory");
    const Coefficient rm = rm_norm_sq();
    BoundSummary b{0, 0, traj.back().t};
    const double T = traj.terminal_time.value_or(std::numeric_limits<double>::quiet_NaN());
    for (const FlowSample& s : traj.samples) {
        const double norm = std::sqrt(rm.evaluate_real(std::sqrt(s.mu))) / s.rho;
        b.sup_bound = std::max(b.sup_bound, norm * (b.t_k - s.t + 1));
        b.sup_type_one = std::max(b.sup_type_one, norm * (T - s.t));
    }
    return b;
}

VerificationReport bound_check(const FlowTrajectory& traj) {
    if (traj.family != Family::CY) throw std::invalid_argument("bound_check needs a CY trajectory");
    if (!traj.find_event(EventKind::Extinction)) throw InsufficientSpan("trajectory does not reach extinction");
    const BoundSummary b = bound_summary(traj);
    VerificationReport rep;
    rep.compare("round.bound.finite", decimal(b.sup_bound), "finite", std::isfinite(b.sup_bound), Status::Fail,
                "sup |Rm| (T_k - t + 1) with T_k = " + decimal(b.t_k));
    rep.compare("round.bound.type_one", decimal(b.sup_type_one), "finite", std::isfinite(b.sup_type_one),
                Status::Fail, "sup |Rm| (T - t) with T the extrapolated extinction time");
    return rep;
}

}  // namespace twistor
