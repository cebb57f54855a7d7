#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tunnelshift/shooting.hpp"
#include "tunnelshift/spectra.hpp"

namespace tunnelshift {

/// What was computed: a line/radial potential on a domain, or a confined
/// hydrogen level (n, l, Z) in a box of radius `upper`.
struct CaseDescriptor {
  std::string potential;
  std::string kind = "line";  // line | radial | hydrogen
  double lower = 0.0;
  double upper = 0.0;
  int m = 0;
  std::optional<double> nu;
  double h = 0.1;
  std::optional<int> n;
  std::optional<int> ell;
  std::optional<double> charge;

  bool operator==(const CaseDescriptor&) const = default;
};

struct Diagnostics {
  int iterations = 0;
  int unconfined_iterations = 0;
  int steps = 0;
  std::string lambda0_method;
  std::optional<double> oracle_value;
  std::vector<std::string> warnings;

  bool operator==(const Diagnostics&) const = default;
};

struct ShiftReport {
  CaseDescriptor descriptor;
  double lambda0 = 0.0;
  double lambda_confined = 0.0;
  double numeric_shift = 0.0;
  double log_numeric = 0.0;
  double predicted_shift = 0.0;
  double log_predicted = 0.0;
  double ratio = 0.0;
  std::string status = "ok";
  Diagnostics diagnostics;
};

/// Field-for-field equality; NaN equals NaN.
bool same_report(const ShiftReport& a, const ShiftReport& b);

nlohmann::json to_json(const ShiftReport& report);
ShiftReport report_from_json(const nlohmann::json& j);

/// Fills numeric_shift, the log forms and the ratio from lambda0,
/// lambda_confined and the predicted shift's log.
void set_shift(ShiftReport& report, double log_predicted);

enum class SweepVariable { h, radius };

/// Frozen header; the first column is `R` for hydrogen sweeps.
std::string csv_header(SweepVariable variable = SweepVariable::h);
std::string csv_escape(const std::string& field);
void write_csv(std::ostream& os, const std::vector<ShiftReport>& reports, SweepVariable variable = SweepVariable::h);
void write_table(std::ostream& os, const std::vector<ShiftReport>& reports, SweepVariable variable = SweepVariable::h);

struct OrderFit {
  double order = 0.0;
  double intercept = 0.0;
  int points = 0;
};

/// Least-squares slope of log(err) against log(x); entries with
/// non-positive or non-finite values are skipped. NaN order if < 2 remain.
OrderFit fit_order(const std::vector<double>& x, const std::vector<double>& err);

/// lambda0, confined value, prediction and optional FD check for one case.
ShiftReport run_shift_case(const PotentialSpec& p, const CaseDescriptor& descriptor, const SpectraOptions& options = {},
                           std::optional<int> oracle_grid = std::nullopt);
ShiftReport run_hydrogen_case(const HydrogenSpec& spec, const SpectraOptions& options = {});

/// Runs `count` jobs on up to `jobs` threads; results keep input order.
std::vector<ShiftReport> run_parallel(int count, int jobs, const std::function<ShiftReport(int)>& job);

}  // namespace tunnelshift
