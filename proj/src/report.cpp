#include "gpt/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace gpt {

double round12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

CheckResult CheckResult::make(std::string name, std::string anchor, double residual,
                              double tolerance) {
    CheckResult c;
    c.name = std::move(name);
    c.anchor = std::move(anchor);
    c.residual = residual;
    c.tolerance = tolerance;
    c.pass = residual <= tolerance;
    return c;
}

json CheckResult::to_json() const {
    json j;
    j["check"] = name;
    j["anchor"] = anchor;
    j["status"] = pass ? "pass" : "fail";
    j["residual"] = round12(residual);
    j["tol"] = round12(tolerance);
    if (witness) j["witness"] = *witness;
    return j;
}

bool VerificationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
    for (CheckResult c : other.checks) {
        c.name = prefix + c.name;
        checks.push_back(std::move(c));
    }
    for (const auto& n : other.notes) notes.push_back(n);
}

void VerificationReport::sort_by_name() {
    std::stable_sort(checks.begin(), checks.end(),
                     [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
}

std::string VerificationReport::to_json_lines() const {
    std::ostringstream out;
    for (const auto& c : checks) out << c.to_json().dump() << "\n";
    json summary;
    summary["summary"] = all_pass() ? "pass" : "fail";
    summary["checks"] = checks.size();
    std::size_t failed = 0;
    for (const auto& c : checks)
        if (!c.pass) ++failed;
    summary["failed"] = failed;
    summary["seed"] = seed;
    summary["dims"] = dims;
    if (!notes.empty()) summary["notes"] = notes;
    out << summary.dump() << "\n";
    return out.str();
}

std::string VerificationReport::to_table() const {
    std::ostringstream out;
    std::size_t width = 4;
    for (const auto& c : checks) width = std::max(width, c.name.size());
    for (const auto& c : checks) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%-6s %-*s residual=%-14.6g tol=%-10.3g %s\n",
                      c.pass ? "PASS" : "FAIL", static_cast<int>(width), c.name.c_str(),
                      c.residual, c.tolerance, c.anchor.c_str());
        out << buf;
    }
    for (const auto& n : notes) out << "note   " << n << "\n";
    out << (all_pass() ? "ALL CHECKS PASSED" : "SOME CHECKS FAILED") << " ("
        << checks.size() << " checks)\n";
    return out.str();
}

}  // namespace gpt
