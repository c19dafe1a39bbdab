#pragma once

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace jcs {

struct CheckEntry {
    std::string id;       // stable check identifier, e.g. "jn2/jordan"
    std::string instance; // instance description, e.g. "a=x1+,b=1-,c=..."
    bool pass = true;
    std::string residual; // rendered residual, only meaningful on fail
};

/// Structured record of one verification suite run.  Entry order is made
/// deterministic before emission.
struct VerificationReport {
    std::string suite;
    std::map<std::string, std::string> config;
    std::vector<CheckEntry> entries;
    std::int64_t wall_ms = 0;

    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& e : entries)
            if (!e.pass) ++n;
        return n;
    }

    void add(std::string id, std::string instance, bool pass, std::string residual = "") {
        entries.push_back(CheckEntry{std::move(id), std::move(instance), pass, std::move(residual)});
    }

    void sort_entries() {
        std::stable_sort(entries.begin(), entries.end(), [](const CheckEntry& a, const CheckEntry& b) {
            if (a.id != b.id) return a.id < b.id;
            return a.instance < b.instance;
        });
    }

    void merge(const VerificationReport& sub) {
        for (const auto& e : sub.entries) {
            CheckEntry copy = e;
            copy.id = sub.suite + "/" + copy.id;
            entries.push_back(std::move(copy));
        }
    }
};

/// Canonical JSON document.  Timing is emitted only on request so that the
/// document is bit-identical across runs for a fixed config and seed.
inline std::string report_json(const VerificationReport& r, bool with_timing = false) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["suite"] = r.suite;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.config) cfg[k] = v;
    j["config"] = cfg;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& e : r.entries) {
        nlohmann::ordered_json c;
        c["id"] = e.id;
        c["instance"] = e.instance;
        c["status"] = e.pass ? "pass" : "fail";
        if (!e.pass) c["residual"] = e.residual;
        checks.push_back(std::move(c));
    }
    j["checks"] = std::move(checks);
    j["summary"] = {{"pass", r.entries.size() - r.failures()},
                    {"fail", r.failures()},
                    {"total", r.entries.size()}};
    if (with_timing) j["wall_ms"] = r.wall_ms;
    return j.dump(2) + "\n";
}

inline std::string report_text(const VerificationReport& r) {
    std::string out = "suite: " + r.suite + "\n";
    for (const auto& [k, v] : r.config) out += "  config " + k + " = " + v + "\n";
    for (const auto& e : r.entries) {
        if (e.pass) continue;
        out += "  FAIL " + e.id + " [" + e.instance + "] residual = " + e.residual + "\n";
    }
    out += "  checks: " + std::to_string(r.entries.size()) + ", failures: " +
           std::to_string(r.failures()) + ", wall: " + std::to_string(r.wall_ms) + " ms\n";
    return out;
}

} // namespace jcs
