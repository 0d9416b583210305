#include "twistor/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "twistor/round_model.hpp"

namespace twistor::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

Rational rational_arg(const std::string& s) {
    try {
        return parse_rational(s);
    } catch (const std::exception&) {
        throw UsageError("not a number: " + s);
    }
}

double parse_number(const std::string& s) { return rational_arg(s).get_d(); }

struct Range {
    double a, b;
    int n;
};

Range parse_range(const std::string& s) {
    const auto c1 = s.find(':'), c2 = s.rfind(':');
    if (c1 == std::string::npos || c1 == c2) throw UsageError("range must read a:b:n, got " + s);
    Range r{parse_number(s.substr(0, c1)), parse_number(s.substr(c1 + 1, c2 - c1 - 1)), 0};
    try {
        std::size_t used = 0;
        r.n = std::stoi(s.substr(c2 + 1), &used);
        if (used != s.size() - c2 - 1) throw std::invalid_argument(s);
    } catch (const std::exception&) {
        throw UsageError("range count must be an integer, got " + s);
    }
    if (r.n < 1) throw UsageError("range count must be positive");
    return r;
}

Family family_arg(const std::string& s) {
    try {
        return parse_family(s);
    } catch (const std::exception&) {
        throw UsageError("unknown family: " + s);
    }
}

std::ostream& open_or(std::ofstream& file, const std::string& path, std::ostream& fallback) {
    if (path.empty()) return fallback;
    file.open(path);
    if (!file) throw std::runtime_error("cannot write " + path);
    return file;
}

void write_trajectory_rows(std::ostream& os, const FlowTrajectory& tr, const std::string& prefix = {}) {
    for (std::size_t i = 0; i < tr.samples.size(); ++i) {
        const FlowSample& s = tr.samples[i];
        os << prefix << format_double(s.t) << ',' << format_double(s.mu) << ',' << format_double(s.rho) << ','
           << format_double(s.rho * s.mu) << ',' << format_double(tr.invariant_C[i]) << '\n';
    }
}

json events_json(const FlowTrajectory& tr) {
    json ev = json::array();
    for (const FlowEvent& e : tr.events)
        ev.push_back({{"kind", event_name(e.kind)}, {"t", number(e.t)}, {"mu", number(e.mu)}, {"rho", number(e.rho)}});
    return ev;
}

constexpr double kDriftBound = 1e-8;

// ---- verify

VerificationReport build_suite(const std::string& suite, const std::vector<CurvatureModel>& models) {
    VerificationReport rep;
    const bool all = suite == "all";
    if (all || suite == "structure") {
        for (const CurvatureModel& m : models) {
            rep.append(consistency_suite(m));
            rep.append(verify_first_structure(m));
            rep.append(curvature_report(m));
            rep.append(gauge_invariance_check(m));
        }
        rep.append(skewness_report());
    }
    if (all || suite == "kaehler") {
        for (const CurvatureModel& m : models) {
            rep.append(complex_structure_check(m));
            rep.append(ricci_form_check(m));
        }
    }
    if (all || suite == "ricci") {
        for (const CurvatureModel& m : models) rep.append(ricci_report(m));
        rep.append(einstein_report());
        rep.append(flow_ricci_consistency());
        rep.append(ke_ray_report());
    }
    if (all || suite == "round") {
        bool round = false;
        for (const CurvatureModel& m : models) round = round || m.kind == CurvatureModel::Kind::Round;
        if (round)
            rep.append(round_model_report());
        else
            rep.add("round.formalw", Status::Skipped, {}, {},
                    "curvature norms need the round base; a general base needs derivatives of w");
    }
    return rep;
}

int cmd_verify(const std::string& suite, const std::string& model, const std::string& format,
               const std::string& errata_path, std::ostream& out) {
    std::vector<CurvatureModel> models;
    if (model.empty() || model == "round") models.push_back(CurvatureModel::round());
    if (model.empty() || model == "formalw") models.push_back(CurvatureModel::formal_w());
    const ErrataList errata = errata_path.empty() ? ErrataList::builtin() : ErrataList::load(errata_path);
    VerificationReport rep = build_suite(suite, models);
    rep.apply_errata(errata);
    if (format == "json")
        out << rep.to_json(errata).dump(2) << '\n';
    else
        out << rep.to_text(errata);
    return rep.passed(errata) ? 0 : 1;
}

// ---- ricci

int cmd_ricci(Family f, const std::string& mu_text, std::ostream& out) {
    const Rational mu = rational_arg(mu_text);
    json j;
    j["family"] = family_name(f);
    j["mu"] = rational_str(mu);
    Rational fiber, base;
    if (f == Family::CY) {
        const CoefficientMatrix ric = cy_ricci(CurvatureModel::formal_w());
        detail::require_positive(mu, Rational(1));
        fiber = ric(0, 0).substitute_lambda_squared(mu).constant_value()->re;
        base = ric(2, 2).substitute_lambda_squared(mu).constant_value()->re;
    } else {
        // canonical_ricci gives coefficients against l^2 g_FS and the base metric.
        auto [a, b] = canonical_ricci(mu);
        fiber = a / mu;
        base = b;
    }
    // Orthonormal-frame eigenvalues on the fiber and the base, at rho = 1.
    j["ricci_fiber"] = rational_str(fiber);
    j["ricci_base"] = rational_str(base);
    j["einstein"] = fiber == base;
    auto [rmu, rrho] = ricci_map(f, mu, Rational(1));
    j["ricci_metric"] = {{"mu", rational_str(rmu)}, {"rho", rational_str(rrho)}};
    out << j.dump() << '\n';
    return 0;
}

// ---- flow

int cmd_flow(Family f, const std::string& mu_text, const std::string& rho_text, double t0, const std::string& t1_text,
             double tol, const std::string& path, std::ostream& out) {
    FlowOptions opts;
    opts.rel_tol = tol;
    std::optional<double> t1;
    if (t1_text != "end") t1 = parse_number(t1_text);
    const double mu = parse_number(mu_text), rho = parse_number(rho_text);
    FlowTrajectory tr = integrate({f, mu, rho}, t0, t1, opts);

    std::ofstream file;
    std::ostream& csv = open_or(file, path, out);
    csv << "t,mu,rho,rho_mu,invariant_C\n";
    write_trajectory_rows(csv, tr);
    if (!tr.events.empty()) {
        const FlowEvent& e = tr.events.back();
        const double te = tr.terminal_time.value_or(e.t);
        const double c = tr.exact_ray ? std::nan("") : invariant(f, e.mu, e.rho);
        csv << format_double(te) << ',' << format_double(e.mu) << ',' << format_double(e.rho) << ','
            << format_double(e.mu * e.rho) << ',' << format_double(c) << '\n';
    }
    const double drift = tr.max_invariant_drift();
    const bool ok = drift < kDriftBound;
    if (!path.empty()) {
        json j;
        j["family"] = family_name(f);
        j["mu0"] = mu;
        j["rho0"] = rho;
        j["t0"] = t0;
        j["samples"] = tr.samples.size();
        j["exact_ray"] = tr.exact_ray;
        j["events"] = events_json(tr);
        j["terminal_time"] = tr.terminal_time ? number(*tr.terminal_time) : json(nullptr);
        j["terminal_exponent"] = tr.terminal_exponent ? number(*tr.terminal_exponent) : json(nullptr);
        j["invariant_C0"] = number(tr.invariant_C.front());
        j["flow.invariant.drift"] = {{"value", drift}, {"bound", kDriftBound}, {"status", ok ? "pass" : "fail"}};
        j["rejected_steps"] = tr.rejected_steps;
        j["out"] = path;
        out << j.dump() << '\n';
    }
    return ok ? 0 : 1;
}

// ---- portrait

int cmd_portrait(Family f, const std::string& mu_range, const std::string& rho_range, const std::string& path,
                 std::ostream& out) {
    const Range rm = parse_range(mu_range), rr = parse_range(rho_range);
    std::vector<FlowTrajectory> trs = portrait(f, rm.a, rm.b, rm.n, rr.a, rr.b, rr.n);
    std::ofstream file;
    std::ostream& csv = open_or(file, path, out);
    csv << "trajectory,t,mu,rho,rho_mu,invariant_C\n";
    json list = json::array();
    bool ok = true;
    for (std::size_t i = 0; i < trs.size(); ++i) {
        write_trajectory_rows(csv, trs[i], std::to_string(i) + ",");
        const double drift = trs[i].max_invariant_drift();
        ok = ok && drift < kDriftBound;
        list.push_back({{"trajectory", i},
                        {"mu0", trs[i].samples.front().mu},
                        {"rho0", trs[i].samples.front().rho},
                        {"events", events_json(trs[i])},
                        {"invariant_drift", drift}});
    }
    if (!path.empty()) {
        json j;
        j["family"] = family_name(f);
        j["trajectories"] = list;
        j["drift_bound"] = kDriftBound;
        j["ok"] = ok;
        out << j.dump() << '\n';
    }
    return ok ? 0 : 1;
}

// ---- classify

json limits_json(const Limits& l) { return {{"mu", l.mu}, {"rho", l.rho}, {"rho_mu", l.rho_mu}}; }

int cmd_classify(Family f, const std::string& mu_text, std::ostream& out) {
    const double mu0 = parse_number(mu_text);
    ClassificationRecord r = classify(f, mu0);
    json j;
    j["family"] = family_name(r.family);
    j["mu0"] = r.mu0;
    j["regime"] = r.regime;
    j["mu_direction"] = r.mu_direction;
    j["backward"] = limits_json(r.backward);
    j["forward"] = limits_json(r.forward);
    j["ancient"] = r.ancient;
    j["descriptor"] = r.descriptor;

    // Numeric evidence from rho0 = 1.
    json ev;
    FlowTrajectory fwd = integrate({f, mu0, 1.0}, 0.0, std::nullopt);
    ev["forward"] = {{"t", fwd.back().t}, {"mu", fwd.back().mu}, {"rho", fwd.back().rho},
                     {"events", events_json(fwd)}};
    try {
        FlowTrajectory bwd = integrate({f, mu0, 1.0}, 0.0, -10.0);
        ev["backward"] = {{"t", bwd.back().t}, {"mu", bwd.back().mu}, {"rho", bwd.back().rho},
                          {"events", events_json(bwd)}};
    } catch (const StepUnderflow& e) {
        ev["backward"] = {{"t", e.t}, {"mu", e.mu}, {"rho", e.rho}, {"error", e.what()}};
    }
    j["evidence"] = ev;
    out << j.dump() << '\n';
    return 0;
}

// ---- curvnorm

int cmd_curvnorm(const std::string& lambdas, const std::string& convention, const std::string& path,
                 std::ostream& out) {
    const NablaConvention c = convention == "covariant04" ? NablaConvention::Covariant04 : NablaConvention::Mixed13;
    const Coefficient rm = rm_norm_sq(), nabla = nabla_rm_norm_sq(c);
    std::ofstream file;
    std::ostream& csv = open_or(file, path, out);
    csv << "lambda,rm_norm_sq,nabla_rm_norm_sq,rm_norm_sq_decimal,nabla_rm_norm_sq_decimal\n";
    std::stringstream ss(lambdas);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const Rational l = rational_arg(item);
        if (!(l > 0)) throw NonPositiveParameter("lambda must be positive");
        auto value = [&](const Coefficient& p) {
            const Coefficient v = p.substitute_lambda(l);
            return v.is_zero() ? Rational(0) : v.constant_value()->re;
        };
        const Rational a = value(rm), b = value(nabla);
        csv << rational_str(l) << ',' << rational_str(a) << ',' << rational_str(b) << ',' << format_double(a.get_d())
            << ',' << format_double(b.get_d()) << '\n';
    }
    return 0;
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Moving-frame verification of twistor-space curvature and Ricci flow", "twistor"};
    app.require_subcommand(1);

    std::string suite = "all", model, format = "json", errata;
    auto* verify = app.add_subcommand("verify", "run the symbolic verification suites");
    verify->add_option("--suite", suite)->check(CLI::IsMember({"all", "structure", "kaehler", "ricci", "round"}));
    verify->add_option("--model", model)->check(CLI::IsMember({"round", "formalw"}));
    verify->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    verify->add_option("--errata", errata, "errata whitelist (JSON); defaults to the built-in list");

    std::string family = "cy", mu, rho = "1", t1 = "end", out_path, mu_range, rho_range, lambdas, convention = "mixed13";
    double t0 = 0, tol = 1e-12;
    auto* ricci = app.add_subcommand("ricci", "Ricci tensor of a family member");
    ricci->add_option("--family", family)->check(CLI::IsMember({"cy", "canonical"}));
    ricci->add_option("--mu", mu)->required();

    auto* flow = app.add_subcommand("flow", "integrate the Ricci flow on a family");
    flow->add_option("--family", family)->check(CLI::IsMember({"cy", "canonical"}));
    flow->add_option("--mu", mu)->required();
    flow->add_option("--rho", rho);
    flow->add_option("--t0", t0);
    flow->add_option("--t1", t1, "end time, or 'end' to run to the terminal event");
    flow->add_option("--tol", tol)->check(CLI::PositiveNumber);
    flow->add_option("--out", out_path);

    auto* port = app.add_subcommand("portrait", "forward trajectories over a grid of initial data");
    port->add_option("--family", family)->check(CLI::IsMember({"cy", "canonical"}));
    port->add_option("--mu-range", mu_range)->required();
    port->add_option("--rho-range", rho_range)->required();
    port->add_option("--out", out_path);

    auto* cls = app.add_subcommand("classify", "asymptotic classification of a trajectory");
    cls->add_option("--family", family)->check(CLI::IsMember({"cy", "canonical"}));
    cls->add_option("--mu", mu)->required();

    auto* curv = app.add_subcommand("curvnorm", "|Rm|^2 and |nabla Rm|^2 of the round model");
    curv->add_option("--lambdas", lambdas)->required();
    curv->add_option("--convention", convention)->check(CLI::IsMember({"mixed13", "covariant04"}));
    curv->add_option("--out", out_path);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*verify) return cmd_verify(suite, model, format, errata, out);
        const Family f = family_arg(family);
        if (*ricci) return cmd_ricci(f, mu, out);
        if (*flow) return cmd_flow(f, mu, rho, t0, t1, tol, out_path, out);
        if (*port) return cmd_portrait(f, mu_range, rho_range, out_path, out);
        if (*cls) return cmd_classify(f, mu, out);
        if (*curv) return cmd_curvnorm(lambdas, convention, out_path, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace twistor::cli
