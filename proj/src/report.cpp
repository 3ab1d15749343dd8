#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "vilenkin/verify.hpp"

namespace vilenkin {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double number_from(const ordered_json &j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

} // namespace

ReportFormat parse_format(const std::string &name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw std::invalid_argument("unknown report format '" + name + "'");
}

void write_csv(std::ostream &out, const VerificationReport &r) {
  out << "suite,spec,p,weights,tolerance,case_id,lhs,rhs,ratio\n";
  const std::string prefix = csv_field(r.suite) + ',' + csv_field(r.spec) + ',' +
                             (r.p ? format_double(*r.p) : std::string()) + ',' +
                             csv_field(r.weights) + ',' +
                             format_double(r.summary.tolerance) + ',';
  for (const auto &rec : r.records) {
    out << prefix << csv_field(rec.id) << ',' << format_double(rec.lhs) << ','
        << format_double(rec.rhs) << ',' << format_double(rec.ratio) << '\n';
  }
}

std::string to_json(const VerificationReport &r) {
  ordered_json j;
  j["suite"] = r.suite;
  j["spec"] = r.spec;
  ordered_json params;
  params["p"] = r.p ? number(*r.p) : ordered_json(nullptr);
  params["weights"] = r.weights;
  params["n_range"] = r.n_range;
  params["seeds"] = r.seeds;
  j["parameters"] = params;
  ordered_json records = ordered_json::array();
  for (const auto &rec : r.records) {
    ordered_json e;
    e["case_id"] = rec.id;
    e["lhs"] = number(rec.lhs);
    e["rhs"] = number(rec.rhs);
    e["ratio"] = number(rec.ratio);
    records.push_back(std::move(e));
  }
  j["records"] = std::move(records);
  ordered_json summary;
  summary["max_ratio"] = number(r.summary.max_ratio);
  summary["estimated_constant"] = number(r.summary.estimated_constant);
  summary["pass"] = r.summary.pass;
  summary["tolerance"] = number(r.summary.tolerance);
  summary["policy"] = r.summary.policy;
  summary["report_only"] = r.summary.report_only;
  j["summary"] = std::move(summary);
  ordered_json details = ordered_json::object();
  for (const auto &[k, v] : r.details) details[k] = v;
  j["details"] = std::move(details);
  return j.dump(2) + "\n";
}

VerificationReport report_from_json(const std::string &text) {
  const auto j = ordered_json::parse(text);
  VerificationReport r;
  r.suite = j.at("suite").get<std::string>();
  r.spec = j.at("spec").get<std::string>();
  const auto &params = j.at("parameters");
  if (!params.at("p").is_null()) r.p = number_from(params.at("p"));
  r.weights = params.at("weights").get<std::string>();
  r.n_range = params.at("n_range").get<std::string>();
  r.seeds = params.at("seeds").get<std::string>();
  for (const auto &e : j.at("records")) {
    r.records.push_back({e.at("case_id").get<std::string>(), number_from(e.at("lhs")),
                         number_from(e.at("rhs")), number_from(e.at("ratio"))});
  }
  const auto &s = j.at("summary");
  r.summary.max_ratio = number_from(s.at("max_ratio"));
  r.summary.estimated_constant = number_from(s.at("estimated_constant"));
  r.summary.pass = s.at("pass").get<bool>();
  r.summary.tolerance = number_from(s.at("tolerance"));
  r.summary.policy = s.at("policy").get<std::string>();
  r.summary.report_only = s.at("report_only").get<bool>();
  for (const auto &[k, v] : j.at("details").items()) {
    r.details.emplace_back(k, v.get<std::string>());
  }
  return r;
}

void emit_report(const VerificationReport &r, ReportFormat format,
                 const std::string &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open report file '" + path + "'");
  if (format == ReportFormat::csv) {
    write_csv(out, r);
  } else {
    out << to_json(r);
  }
  out.flush();
  if (!out) throw std::runtime_error("failed writing report file '" + path + "'");
}

} // namespace vilenkin
