#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "igdyn/errors.hpp"

namespace igdyn {

/// Flat key-value config: `key = value` lines, `#` comments, values are
/// numbers, bare or quoted strings, or numeric arrays `[a, b, c]`.
class Config {
public:
    using Value = std::variant<double, std::string, std::vector<double>>;

    static Config parse(const std::string& text);
    static Config parse_file(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key) const;
    long get_int(const std::string& key, long fallback) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::vector<double> get_array(const std::string& key) const;
    std::vector<double> get_array(const std::string& key, std::vector<double> fallback) const;

    /// Throws ConfigParseError naming the first key outside `allowed`.
    void restrict_keys(const std::vector<std::string>& allowed) const;

    const std::map<std::string, Value>& values() const { return values_; }

private:
    const Value& require(const std::string& key) const;
    std::map<std::string, Value> values_;
    std::map<std::string, int> lines_;
};

enum class ScenarioKind { curvature, geodesic, jlc, ige, iho_entropy, appendix_sweep };

ScenarioKind scenario_kind_from_string(const std::string& s);
std::string to_string(ScenarioKind k);

/// One measured-vs-predicted comparison inside a scenario.
struct Claim {
    std::string name;
    double measured = 0.0;
    double predicted = 0.0;
    double tolerance = 0.0;      // relative unless predicted == 0
    double relative_error = 0.0;
    bool pass = false;
};

struct ScenarioResult {
    std::string name;
    ScenarioKind kind = ScenarioKind::curvature;
    std::uint64_t seed = 0;
    std::vector<Claim> claims;
    std::vector<std::string> artifacts; // paths written
    bool all_pass() const;
};

/// Runs one scenario config; artifact paths in the config are resolved
/// against out_dir (or the config file's directory when empty).
ScenarioResult run_scenario_file(const std::string& path, const std::string& out_dir = "");
ScenarioResult run_scenario_text(const std::string& text, const std::string& name,
                                 const std::string& out_dir = ".");

/// Runs every scenario listed (one path per line, # comments) with up to
/// IGDYN_THREADS workers; results are ordered by scenario name.
std::vector<ScenarioResult> run_sweep(const std::string& list_path, const std::string& out_dir = "");

/// Stable-keyed JSON report document (schema_version, scenarios ordered by
/// name, one entry per claim with measured/predicted/tolerance/pass).
std::string emit_report(const std::vector<ScenarioResult>& results);

} // namespace igdyn
