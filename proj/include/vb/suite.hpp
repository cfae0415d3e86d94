#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "vb/cocycle.hpp"

namespace vb {

struct GridSpec {
    int n_r = 96;
    int n_theta = 256;
    int n_rho = 24;
    int n_plane = 64;
};

struct SuiteConfig {
    std::string suite = "all";
    double c0 = 1.0;
    GridSpec grid;
    double L = 1.25;
    DerivativePlan::Kind plan = DerivativePlan::ANALYTIC;
    std::uint64_t seed = 1;
    std::map<std::string, double> tol;  // overrides keyed by check name
    std::string out_path;
    int jobs = 1;
    bool timing = false;

    void validate() const;  // throws ConfigError
    CocycleConfig cocycle(const GridSpec& g) const;
    CocycleConfig cocycle() const { return cocycle(grid); }
};

struct Report {
    std::string suite;
    std::vector<CheckResult> checks;  // sorted by name
    std::map<std::string, std::string> errors;  // check name -> exception text
    nlohmann::ordered_json meta;

    bool pass() const;
    nlohmann::ordered_json to_json() const;
};

// Quantity measured by a check at one grid: `value` is the headline number
// (an integral, a cocycle value), `residual` what the tolerance applies to.
struct Measurement {
    double value = 0.0;
    double residual = 0.0;
    std::map<std::string, double> params;
};

struct CheckSpec {
    std::string name;
    std::string suite;
    std::string anchor;
    double tolerance = 0.0;
    std::function<Measurement(const SuiteConfig&, const GridSpec&)> run;
    std::vector<GridSpec> default_series;  // for convergence studies
};

const std::vector<CheckSpec>& check_registry();
const CheckSpec& find_check(const std::string& name);  // ConfigError if unknown
const std::vector<std::string>& suite_names();

Report run_suite(const SuiteConfig& cfg);
void write_report(const Report& r, const std::string& path);
std::string summary_table(const Report& r, double wall_seconds);

struct ConvergenceRow {
    std::string check;
    GridSpec grid;
    double value = 0.0;
    double residual = 0.0;
};

std::vector<ConvergenceRow> convergence_study(const std::string& check_name, const std::vector<GridSpec>& series,
                                              const SuiteConfig& cfg);
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

// n, m, kind, coefficient, central-real, central-imag; |n|, |m| <= nmax
std::string generator_table_csv(int nmax, double c0);

}  // namespace vb
