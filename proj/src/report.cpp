#include "defo/report.hpp"

#include <sstream>
#include <stdexcept>

namespace defo {

namespace {

std::string cell(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '|') out += "\\|";
        else if (c == '\n') out += ' ';
        else out += c;
    }
    return out;
}

std::string scalar(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

void Check::record(bool ok, const std::string& why) {
    ++total;
    if (ok) ++passed;
    else if (failure.empty()) failure = why.empty() ? "trial " + std::to_string(total) : why;
}

bool Section::ok() const {
    for (const Check& c : checks)
        if (!c.ok()) return false;
    return true;
}

Check& Section::check(const std::string& subject, const std::string& identity) {
    for (Check& c : checks)
        if (c.subject == subject && c.identity == identity) return c;
    checks.push_back(Check{subject, identity, 0, 0, ""});
    return checks.back();
}

bool Report::ok() const {
    if (!errors.empty()) return false;
    for (const Section& s : sections)
        if (!s.ok()) return false;
    return true;
}

Section& Report::section(const std::string& name) {
    for (Section& s : sections)
        if (s.name == name) return s;
    sections.push_back(Section{name, {}, Json::object()});
    return sections.back();
}

Json Report::to_json() const {
    Json j;
    j["schema"] = "defo.report/1";
    j["command"] = command;
    j["verdict"] = ok() ? "pass" : "fail";
    j["config"] = config;
    j["sections"] = Json::array();
    for (const Section& s : sections) {
        Json js;
        js["name"] = s.name;
        js["verdict"] = s.ok() ? "pass" : "fail";
        js["checks"] = Json::array();
        for (const Check& c : s.checks) {
            Json jc;
            jc["subject"] = c.subject;
            jc["identity"] = c.identity;
            jc["passed"] = c.passed;
            jc["total"] = c.total;
            jc["verdict"] = c.ok() ? "pass" : "fail";
            if (!c.failure.empty()) jc["first_failure"] = c.failure;
            js["checks"].push_back(jc);
        }
        if (!s.data.empty()) js["data"] = s.data;
        j["sections"].push_back(js);
    }
    if (!errors.empty()) j["errors"] = errors;
    return j;
}

std::string Report::markdown() const {
    std::ostringstream o;
    o << "# defo " << command << "\n\n";
    o << "Verdict: **" << (ok() ? "PASS" : "FAIL") << "**\n\n";
    if (!config.empty()) {
        o << "| setting | value |\n|---|---|\n";
        for (const auto& [k, v] : config.items()) o << "| " << cell(k) << " | " << cell(scalar(v)) << " |\n";
        o << "\n";
    }
    for (const std::string& e : errors) o << "Error: " << e << "\n\n";
    for (const Section& s : sections) {
        o << "## " << s.name << " (" << (s.ok() ? "pass" : "fail") << ")\n\n";
        if (!s.checks.empty()) {
            o << "| subject | identity | passed | verdict |\n|---|---|---|---|\n";
            for (const Check& c : s.checks) {
                o << "| " << cell(c.subject) << " | `" << cell(c.identity) << "` | " << c.passed << "/" << c.total << " | "
                  << (c.ok() ? "pass" : "FAIL: " + cell(c.failure)) << " |\n";
            }
            o << "\n";
        }
        if (!s.data.empty()) {
            o << "| quantity | value |\n|---|---|\n";
            for (const auto& [k, v] : s.data.items()) o << "| " << cell(k) << " | " << cell(scalar(v)) << " |\n";
            o << "\n";
        }
    }
    return o.str();
}

std::string Report::render(const std::string& format) const {
    if (format == "json") return to_json().dump(2) + "\n";
    if (format == "markdown") return markdown();
    throw std::invalid_argument("unknown format '" + format + "' (expected json or markdown)");
}

}  // namespace defo
