#ifndef GPT_REPORT_HPP
#define GPT_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace gpt {

using json = nlohmann::ordered_json;

/// Round to 12 significant digits; all reported numerics go through this
/// so that repeated runs print byte-identical output.
double round12(double x);

struct CheckResult {
    std::string name;
    std::string anchor;  ///< short identifier of the property being checked
    bool pass = false;
    double residual = 0.0;
    double tolerance = 0.0;
    std::optional<json> witness;

    static CheckResult make(std::string name, std::string anchor, double residual,
                            double tolerance);
    json to_json() const;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    std::uint64_t seed = 0;
    std::vector<int> dims;
    std::vector<std::string> notes;

    bool all_pass() const;
    void add(CheckResult c) { checks.push_back(std::move(c)); }
    void merge(const VerificationReport& other, const std::string& prefix = "");
    void sort_by_name();

    /// One JSON object per check, one line each, then a summary line.
    std::string to_json_lines() const;
    std::string to_table() const;
};

}  // namespace gpt

#endif  // GPT_REPORT_HPP
