#include "qlh/report.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

#include <json.hpp>

#include "qlh/parser.hpp"

namespace qlh {

using nlohmann::ordered_json;

ReportEntry ReportEntry::from_verdict(const Verdict& v, std::string check_id,
                                      std::string kind) {
    ReportEntry e;
    e.check_id = std::move(check_id);
    e.paper_ref = v.paper_ref;
    e.kind = std::move(kind);
    e.pass = v.pass;
    for (auto& r : v.residuals) e.residuals.push_back(r.str());
    e.note = v.note;
    e.numeric_max_abs = v.numeric_max_abs;
    return e;
}

int Report::pass_count() const {
    int n = 0;
    for (auto& e : entries) n += e.pass ? 1 : 0;
    return n;
}

int Report::fail_count() const { return static_cast<int>(entries.size()) - pass_count(); }

std::string Report::to_json() const {
    ordered_json j;
    j["tool_version"] = kToolVersion;
    j["command"] = command;
    j["generated_at"] = generated_at;
    j["verdicts"] = ordered_json::array();
    for (auto& e : entries) {
        ordered_json v;
        v["name"] = e.check_id;
        v["paper_ref"] = e.paper_ref;
        v["kind"] = e.kind;
        v["status"] = e.pass ? "PASS" : "FAIL";
        v["residuals"] = e.residuals;
        if (!e.classification.empty()) v["classification"] = e.classification;
        if (!e.note.empty()) v["note"] = e.note;
        if (e.numeric_max_abs) v["numeric_max_abs"] = *e.numeric_max_abs;
        j["verdicts"].push_back(std::move(v));
    }
    j["summary"] = {{"pass", pass_count()}, {"fail", fail_count()},
                    {"total", static_cast<int>(entries.size())}};
    return j.dump(2) + "\n";
}

std::string Report::to_text() const {
    std::ostringstream os;
    for (auto& e : entries) {
        os << (e.pass ? "PASS" : "FAIL") << "  " << e.check_id;
        if (!e.paper_ref.empty()) os << "  [" << e.paper_ref << "]";
        if (!e.classification.empty()) os << "  (" << e.classification << ")";
        os << "\n";
        if (!e.pass)
            for (auto& r : e.residuals)
                if (r != "0") os << "      residual: " << r << "\n";
        if (!e.note.empty()) os << "      note: " << e.note << "\n";
        if (e.numeric_max_abs) os << "      numeric_max_abs: " << *e.numeric_max_abs << "\n";
    }
    os << pass_count() << " passed, " << fail_count() << " failed, " << entries.size()
       << " total\n";
    return os.str();
}

std::string now_iso8601() {
    auto now = std::chrono::system_clock::now();
    std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::map<std::string, bool> load_oracle(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("oracle: invalid JSON: ") + e.what());
    }
    if (!j.is_array()) throw ParseError("oracle: expected a JSON array");
    std::map<std::string, bool> out;
    for (auto& item : j) {
        if (!item.is_object() || !item.contains("check_id") || !item.contains("expected"))
            throw ParseError("oracle: entries need 'check_id' and 'expected'");
        std::string status = item["expected"].get<std::string>();
        if (status != "PASS" && status != "FAIL")
            throw ParseError("oracle: 'expected' must be PASS or FAIL");
        out[item["check_id"].get<std::string>()] = status == "PASS";
    }
    return out;
}

std::vector<std::string> compare_oracle(const Report& report,
                                        const std::map<std::string, bool>& oracle) {
    std::vector<std::string> out;
    std::map<std::string, bool> seen;
    for (auto& e : report.entries) seen[e.check_id] = e.pass;
    for (auto& [id, expected] : oracle) {
        auto it = seen.find(id);
        if (it == seen.end()) {
            out.push_back("oracle entry '" + id + "' missing from the report");
        } else if (it->second != expected) {
            out.push_back("'" + id + "': expected " + (expected ? "PASS" : "FAIL") + ", got " +
                          (it->second ? "PASS" : "FAIL"));
        }
    }
    for (auto& [id, pass] : seen)
        if (!oracle.count(id)) out.push_back("report entry '" + id + "' missing from the oracle");
    return out;
}

} // namespace qlh
