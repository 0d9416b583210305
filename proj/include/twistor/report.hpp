#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace twistor {

enum class Status { Pass, Fail, Mismatch, Skipped };

const char* status_name(Status s);

struct CheckRecord {
    std::string check_id;
    Status status = Status::Pass;
    std::string lhs_rendered;
    std::string rhs_rendered;
    std::string note;
};

/// Whitelisted errata in the reference formulas: a mismatch whose check_id starts with one of the
/// prefixes is reported with the erratum note and does not fail the run.
struct ErrataList {
    struct Entry {
        std::string prefix;
        std::string note;
    };
    std::vector<Entry> entries;

    static ErrataList from_json(const nlohmann::json& j);
    static ErrataList load(const std::string& path);
    /// The built-in list mirrors data/errata.json.
    static ErrataList builtin();
    const Entry* match(const std::string& check_id) const;
};

class VerificationReport {
public:
    void add(CheckRecord r) { records_.push_back(std::move(r)); }
    void add(std::string id, Status s, std::string lhs = {}, std::string rhs = {}, std::string note = {});
    /// pass when lhs == rhs, otherwise the given failure status with both sides rendered.
    void compare(std::string id, const std::string& lhs, const std::string& rhs, bool equal,
                 Status on_failure = Status::Fail, std::string note = {});
    void append(const VerificationReport& other);

    const std::vector<CheckRecord>& records() const { return records_; }
    std::size_t count(Status s) const;
    const CheckRecord* find(const std::string& id) const;

    /// Marks whitelisted mismatches with their erratum note.
    void apply_errata(const ErrataList& errata);
    /// No failures and no mismatch outside the errata whitelist.
    bool passed(const ErrataList& errata) const;

    nlohmann::ordered_json to_json(const ErrataList& errata) const;
    std::string to_text(const ErrataList& errata) const;

private:
    std::vector<CheckRecord> records_;
};

}  // namespace twistor
