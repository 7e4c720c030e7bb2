#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace defo {

using Json = nlohmann::ordered_json;

/// Tally of one identity over many trials of one subject.
struct Check {
    std::string subject;
    std::string identity;
    long passed = 0;
    long total = 0;
    std::string failure;  // first failing trial

    bool ok() const { return total > 0 && passed == total; }
    void record(bool ok, const std::string& why = "");
};

struct Section {
    std::string name;
    std::vector<Check> checks;
    Json data = Json::object();

    bool ok() const;
    /// Existing check with this subject and identity, or a new one.
    Check& check(const std::string& subject, const std::string& identity);
};

struct Report {
    std::string command;
    Json config = Json::object();
    std::vector<Section> sections;
    std::vector<std::string> errors;

    bool ok() const;
    Section& section(const std::string& name);
    Json to_json() const;
    std::string markdown() const;
    /// "json" or "markdown".
    std::string render(const std::string& format) const;
};

}  // namespace defo
