#pragma once

// Report documents emitted by the CLI: a config echo, the contribution
// table with exact coefficients, per-power coefficient rows, the audit
// list, and comparison rows against the published constants. Text output
// is deterministic and diff-stable; the structured form is JSON with
// rationals as numerator/denominator strings.

#include <map>
#include <string>
#include <vector>

#include "gmoment/audit.hpp"
#include "gmoment/moment.hpp"

namespace gmoment {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "gmoment 1.0.0";

// QED alpha^2 coefficient quoted for comparison
inline constexpr double kQedAlpha2 = -0.3285;

struct ContributionRow {
  std::string label;
  std::string delta_h;  // exact coefficient of (e/2m) beta sigma.B
  std::string anomaly;  // exact contribution to (g-2)/2
};

struct CoefficientRow {
  std::string label;  // e.g. "Eq.435 alpha^2"
  int power = 0;      // power of alpha/pi
  Rational value;     // exact rational multiplier of (alpha/pi)^power
};

struct ComparisonRow {
  std::string label;
  double this_work;
  double reference;
};

struct CheckLine {
  std::string name;
  bool pass;
  std::string detail;
};

struct ReportDocument {
  std::string tool_version = kToolVersion;
  std::string subcommand;
  std::map<std::string, std::string> config;
  std::vector<ContributionRow> contributions;
  std::vector<CoefficientRow> coefficients;
  std::vector<ComparisonRow> comparison;
  std::vector<CheckLine> checks;
  std::vector<AuditEntry> audit;
  std::vector<std::string> traces;  // serialized expressions, pre-formatted
  std::string summary;
  bool ok = true;
};

ReportDocument report_from_moment(const MomentReport& m);

std::string emit_text(const ReportDocument& doc);
std::string emit_json(const ReportDocument& doc);

// structural validation of an emitted JSON document; returns the list of
// violations (empty when valid)
std::vector<std::string> validate_report_json(const std::string& json_text);

// fixed-precision float rendering used everywhere in text reports
std::string render_float(double v);

}  // namespace gmoment
