#include "twistor/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace twistor {

const char* status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Mismatch: return "mismatch";
        case Status::Skipped: return "skipped";
    }
    return "fail";
}

ErrataList ErrataList::from_json(const nlohmann::json& j) {
    ErrataList out;
    for (const auto& e : j.at("errata")) out.entries.push_back({e.at("check_prefix"), e.at("note")});
    return out;
}

ErrataList ErrataList::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open errata file " + path);
    return from_json(nlohmann::json::parse(in));
}

ErrataList ErrataList::builtin() {
    return {{
        {"flow.ke.extinction.printed", "erratum: printed T=1/8 and rho(t)=1-8t disagree with the flow equations (T=rho0/16)"},
        {"kaehler.dzeta0.printed", "erratum: bar placement in the printed d(zeta0)"},
        {"base.gamma.entry23.printed", "erratum: printed Gamma entry (2,3) reads -G1+A3; forced value is -G1+A1"},
        {"eq8.skew.", "erratum: non-skew vertical/horizontal pairing of the printed connection"},
        {"eq9.skew.", "erratum: non-skew vertical/horizontal pairing of the printed curvature"},
    }};
}

const ErrataList::Entry* ErrataList::match(const std::string& check_id) const {
    for (const Entry& e : entries)
        if (check_id.rfind(e.prefix, 0) == 0) return &e;
    return nullptr;
}

void VerificationReport::add(std::string id, Status s, std::string lhs, std::string rhs, std::string note) {
    records_.push_back({std::move(id), s, std::move(lhs), std::move(rhs), std::move(note)});
}

void VerificationReport::compare(std::string id, const std::string& lhs, const std::string& rhs, bool equal,
                                 Status on_failure, std::string note) {
    if (equal)
        add(std::move(id), Status::Pass, lhs, rhs, std::move(note));
    else
        add(std::move(id), on_failure, lhs, rhs, std::move(note));
}

void VerificationReport::append(const VerificationReport& other) {
    records_.insert(records_.end(), other.records_.begin(), other.records_.end());
}

std::size_t VerificationReport::count(Status s) const {
    return static_cast<std::size_t>(
        std::count_if(records_.begin(), records_.end(), [s](const CheckRecord& r) { return r.status == s; }));
}

const CheckRecord* VerificationReport::find(const std::string& id) const {
    for (const CheckRecord& r : records_)
        if (r.check_id == id) return &r;
    return nullptr;
}

void VerificationReport::apply_errata(const ErrataList& errata) {
    for (CheckRecord& r : records_) {
        if (r.status != Status::Mismatch) continue;
        if (const auto* e = errata.match(r.check_id)) r.note = e->note;
    }
}

bool VerificationReport::passed(const ErrataList& errata) const {
    for (const CheckRecord& r : records_) {
        if (r.status == Status::Fail) return false;
        if (r.status == Status::Mismatch && !errata.match(r.check_id)) return false;
    }
    return true;
}

nlohmann::ordered_json VerificationReport::to_json(const ErrataList& errata) const {
    VerificationReport copy = *this;
    copy.apply_errata(errata);
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    std::size_t errata_count = 0;
    for (const CheckRecord& r : copy.records_) {
        nlohmann::ordered_json j;
        j["check_id"] = r.check_id;
        j["status"] = status_name(r.status);
        j["lhs_rendered"] = r.lhs_rendered;
        j["rhs_rendered"] = r.rhs_rendered;
        j["note"] = r.note;
        checks.push_back(std::move(j));
        if (r.status == Status::Mismatch && errata.match(r.check_id)) ++errata_count;
    }
    nlohmann::ordered_json out;
    out["summary"] = {{"total", copy.records_.size()},
                      {"pass", copy.count(Status::Pass)},
                      {"fail", copy.count(Status::Fail)},
                      {"mismatch", copy.count(Status::Mismatch)},
                      {"mismatch_whitelisted", errata_count},
                      {"skipped", copy.count(Status::Skipped)},
                      {"ok", copy.passed(errata)}};
    out["checks"] = std::move(checks);
    return out;
}

std::string VerificationReport::to_text(const ErrataList& errata) const {
    VerificationReport copy = *this;
    copy.apply_errata(errata);
    std::ostringstream os;
    for (const CheckRecord& r : copy.records_) {
        os << status_name(r.status) << "  " << r.check_id;
        if (r.status == Status::Mismatch || r.status == Status::Fail) {
            os << "\n    lhs: " << r.lhs_rendered << "\n    rhs: " << r.rhs_rendered;
        }
        if (!r.note.empty()) os << "\n    note: " << r.note;
        os << "\n";
    }
    os << "total " << copy.records_.size() << ", pass " << copy.count(Status::Pass) << ", fail "
       << copy.count(Status::Fail) << ", mismatch " << copy.count(Status::Mismatch) << ", skipped "
       << copy.count(Status::Skipped) << " => " << (copy.passed(errata) ? "OK" : "FAILED") << "\n";
    return os.str();
}

}  // namespace twistor
