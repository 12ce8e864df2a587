#ifndef QLH_REPORT_HPP
#define QLH_REPORT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qlh/domain.hpp"

namespace qlh {

inline constexpr const char* kToolVersion = "0.1.0";

struct ReportEntry {
    std::string check_id;
    std::string paper_ref;
    std::string kind;   // symmetry | solution | conservation | ...
    bool pass = false;
    std::vector<std::string> residuals;
    std::string classification; // "point" / "potential" for generators
    std::string note;
    std::optional<double> numeric_max_abs;

    static ReportEntry from_verdict(const Verdict& v, std::string check_id, std::string kind);
};

struct Report {
    std::string command;
    std::string generated_at; // the only field allowed to differ between runs
    std::vector<ReportEntry> entries;

    int pass_count() const;
    int fail_count() const;

    std::string to_json() const; // pretty-printed, deterministic key order
    std::string to_text() const;
};

std::string now_iso8601();

// Oracle file: JSON list of {"check_id": ..., "expected": "PASS"|"FAIL"}.
std::map<std::string, bool> load_oracle(const std::string& json_text);

// Mismatch descriptions; empty means the report matches the oracle exactly
// (every oracle entry present with the expected status, no extras checked).
std::vector<std::string> compare_oracle(const Report& report,
                                        const std::map<std::string, bool>& oracle);

} // namespace qlh

#endif
