#include "gmoment/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace gmoment {

std::string render_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

namespace {

std::string rational_str(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

double rational_to_double(const Rational& q) { return static_cast<double>(q); }

// total (g-2)/2 must be a sum of q_k (alpha/pi)^k; extract the q_k
std::map<int, Rational> alpha_pi_table(const ScalarCoeff& total) {
  std::map<int, Rational> out;
  for (auto& [mono, g] : total.parts()) {
    if (!g.is_real()) throw Error("report: non-real (g-2)/2 coefficient");
    int pa = 0, ppi = 0;
    for (auto& [id, p] : mono.exps) {
      if (id == sym::alpha)
        pa = p;
      else if (id == sym::pi)
        ppi = p;
      else
        throw Error("report: unexpected symbol in (g-2)/2: " + Symbols::name(id));
    }
    if (ppi != -pa) throw Error("report: coefficient is not an (alpha/pi)-power");
    out[pa] = g.re;
  }
  return out;
}

}  // namespace

ReportDocument report_from_moment(const MomentReport& m) {
  ReportDocument doc;
  doc.subcommand = "moment";
  doc.config["particle"] = m.particle.name;
  doc.config["order"] = std::to_string(m.order);
  doc.config["vacuum_polarization"] = m.vacuum_polarization ? "true" : "false";
  doc.config["mass_ratio"] = rational_str(m.particle.mass_ratio_to_electron);

  for (auto& c : m.contributions)
    doc.contributions.push_back({c.label, c.delta_h.str(), c.anomaly.str()});

  auto table = alpha_pi_table(m.total);
  for (auto& [power, q] : table) {
    std::string label;
    if (power == 1) {
      label = "Eq.420 alpha^1";
    } else if (power == 2) {
      if (!m.vacuum_polarization)
        label = "Eq.435 alpha^2";
      else
        label = m.particle.name == "muon" ? "Eq.442 alpha^2" : "Eq.439 alpha^2";
    } else {
      label = "alpha^" + std::to_string(power);
    }
    doc.coefficients.push_back({label, power, q});
  }

  if (table.count(2))
    doc.comparison.push_back({"alpha^2 coefficient vs QED (Eq.436)",
                              rational_to_double(table[2]), kQedAlpha2});
  doc.audit = m.audit.entries();

  std::ostringstream sum;
  sum << "(g-2)/2 =";
  bool first = true;
  for (auto& [power, q] : table) {
    Rational aq = q < 0 ? Rational(-q) : q;
    sum << (q < 0 ? " - " : (first ? " " : " + ")) << rational_str(aq) << "(alpha/pi)";
    if (power != 1) sum << "^" << power;
    first = false;
  }
  doc.summary = sum.str();
  return doc;
}

std::string emit_text(const ReportDocument& doc) {
  std::ostringstream os;
  os << doc.tool_version << " -- " << doc.subcommand << "\n";
  for (auto& [k, v] : doc.config) os << "  " << k << " = " << v << "\n";
  if (!doc.contributions.empty()) {
    os << "contributions (delta H coefficient of (e/2m) beta sigma.B | (g-2)/2 part):\n";
    for (auto& c : doc.contributions)
      os << "  " << c.label << ": " << c.delta_h << " | " << c.anomaly << "\n";
  }
  if (!doc.coefficients.empty()) {
    os << "coefficients:\n";
    for (auto& c : doc.coefficients)
      os << "  " << c.label << ": " << rational_str(c.value) << " = "
         << render_float(rational_to_double(c.value)) << "\n";
  }
  for (auto& c : doc.comparison)
    os << "comparison: " << c.label << ": this work " << render_float(c.this_work)
       << ", reference " << render_float(c.reference) << ", gap "
       << render_float(c.this_work - c.reference) << "\n";
  if (!doc.checks.empty()) {
    for (auto& c : doc.checks)
      os << (c.pass ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail)
         << "\n";
  }
  for (auto& t : doc.traces) os << t;
  if (!doc.audit.empty()) {
    os << "audit:\n";
    for (auto& a : doc.audit)
      os << "  [" << a.stage << "] " << a.note
         << (a.term_count ? " (" + std::to_string(a.term_count) + " terms)" : "") << "\n";
  }
  if (!doc.summary.empty()) os << doc.summary << "\n";
  os << (doc.ok ? "status: ok\n" : "status: FAILED\n");
  return os.str();
}

std::string emit_json(const ReportDocument& doc) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool_version"] = doc.tool_version;
  j["subcommand"] = doc.subcommand;
  j["config"] = doc.config;
  j["contributions"] = nlohmann::ordered_json::array();
  for (auto& c : doc.contributions)
    j["contributions"].push_back({{"label", c.label}, {"delta_h", c.delta_h}, {"anomaly", c.anomaly}});
  j["coefficients"] = nlohmann::ordered_json::array();
  for (auto& c : doc.coefficients) {
    Rational num = numerator(c.value), den = denominator(c.value);
    std::ostringstream ns, ds;
    ns << num;
    ds << den;
    j["coefficients"].push_back({{"label", c.label},
                                 {"power", c.power},
                                 {"num", ns.str()},
                                 {"den", ds.str()},
                                 {"value", rational_to_double(c.value)}});
  }
  j["comparison"] = nlohmann::ordered_json::array();
  for (auto& c : doc.comparison)
    j["comparison"].push_back(
        {{"label", c.label}, {"this_work", c.this_work}, {"reference", c.reference}});
  j["checks"] = nlohmann::ordered_json::array();
  for (auto& c : doc.checks)
    j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["audit"] = nlohmann::ordered_json::array();
  for (auto& a : doc.audit)
    j["audit"].push_back({{"stage", a.stage},
                          {"note", a.note},
                          {"term_count", a.term_count},
                          {"detail", a.detail}});
  j["traces"] = doc.traces;
  j["summary"] = doc.summary;
  j["ok"] = doc.ok;
  return j.dump(2) + "\n";
}

std::vector<std::string> validate_report_json(const std::string& json_text) {
  std::vector<std::string> issues;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const std::exception& ex) {
    issues.push_back(std::string("not valid JSON: ") + ex.what());
    return issues;
  }
  auto need = [&](const char* key, bool cond) {
    if (!cond) issues.push_back(std::string("missing or mistyped field: ") + key);
  };
  need("schema_version", j.contains("schema_version") && j["schema_version"].is_number_integer());
  if (j.contains("schema_version") && j["schema_version"] != kReportSchemaVersion)
    issues.push_back("unsupported schema_version");
  need("tool_version", j.contains("tool_version") && j["tool_version"].is_string());
  need("subcommand", j.contains("subcommand") && j["subcommand"].is_string());
  need("config", j.contains("config") && j["config"].is_object());
  need("contributions", j.contains("contributions") && j["contributions"].is_array());
  need("coefficients", j.contains("coefficients") && j["coefficients"].is_array());
  need("checks", j.contains("checks") && j["checks"].is_array());
  need("audit", j.contains("audit") && j["audit"].is_array());
  need("ok", j.contains("ok") && j["ok"].is_boolean());
  if (j.contains("coefficients") && j["coefficients"].is_array())
    for (auto& row : j["coefficients"]) {
      if (!row.contains("label") || !row["label"].is_string() || !row.contains("num") ||
          !row["num"].is_string() || !row.contains("den") || !row["den"].is_string())
        issues.push_back("coefficient row must carry label and num/den strings");
    }
  return issues;
}

}  // namespace gmoment
