#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace parcurve::cli {

struct CheckRecord {
    std::string name;
    double measured = 0.0;
    std::optional<double> reference;
    std::optional<double> margin;
    std::optional<double> tolerance;
    std::optional<bool> passed;  // absent = informational or skipped
    bool regular = true;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["name"] = name;
        j["measured"] = measured;
        if (reference) j["reference"] = *reference;
        if (margin) j["margin"] = *margin;
        if (tolerance) j["tolerance"] = *tolerance;
        if (passed) j["passed"] = *passed;
        j["regular"] = regular;
        return j;
    }
};

struct RunReport {
    std::string command;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json provenance = nlohmann::json::object();
    std::vector<CheckRecord> records;

    void add(CheckRecord r) { records.push_back(std::move(r)); }

    int failed_count() const {
        int failed = 0;
        for (const auto& r : records)
            if (r.passed && !*r.passed) ++failed;
        return failed;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["command"] = command;
        j["inputs"] = inputs;
        j["provenance"] = provenance;
        auto recs = nlohmann::json::array();
        int passed = 0, failed = 0, skipped = 0;
        for (const auto& r : records) {
            recs.push_back(r.to_json());
            if (!r.passed)
                ++skipped;
            else if (*r.passed)
                ++passed;
            else
                ++failed;
        }
        j["records"] = recs;
        j["summary"] = {{"passed", passed}, {"failed", failed}, {"skipped", skipped}};
        return j;
    }

    // Exit code convention: 0 all passed, 1 any failed check.
    int exit_code() const { return failed_count() > 0 ? 1 : 0; }
};

}  // namespace parcurve::cli
