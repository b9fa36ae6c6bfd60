#include "zlaw/report.hpp"

#include <charconv>
#include <cmath>

#include "json.hpp"

namespace zlaw {
namespace {

constexpr const char* kHeader =
    "scenario,T,H,param_name,param_value,observed,predicted,ratio,error_budget,pass,n_evals,seconds";

std::string param_value(const VerificationReport& r) {
  std::string out;
  for (std::size_t i = 0; i < r.params.size(); ++i) {
    if (i) out += ';';
    out += format_number(r.params[i]);
  }
  return out;
}

// Names and messages are generated here, but quote defensively anyway.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string_view status(const VerificationReport& r) {
  if (r.error) return "error";
  return r.pass ? "pass" : "fail";
}

void write_csv(std::ostream& os, const RunResult& r) {
  const RunMetadata& m = r.metadata;
  os << "# version: " << m.version << '\n';
  os << "# command: " << m.command << '\n';
  for (const auto& [k, v] : m.config) os << "# " << k << ": " << v << '\n';
  os << "# z_evaluations: " << m.z_evaluations << '\n';
  os << "# wall_seconds: " << format_number(m.wall_seconds) << '\n';
  os << kHeader << '\n';
  for (const auto& row : r.rows) {
    os << csv_field(row.scenario) << ',' << format_number(row.T) << ',' << format_number(row.H) << ','
       << csv_field(row.param_name) << ',' << param_value(row) << ',' << format_number(row.observed) << ','
       << format_number(row.predicted) << ',' << format_number(row.ratio) << ','
       << format_number(row.error_budget) << ',' << status(row) << ',' << row.n_evals << ','
       << format_number(row.seconds) << '\n';
  }
}

void write_json(std::ostream& os, const RunResult& r) {
  using nlohmann::json;
  const RunMetadata& m = r.metadata;
  json meta = {{"version", m.version},
               {"command", m.command},
               {"z_evaluations", m.z_evaluations},
               {"wall_seconds", m.wall_seconds}};
  json config = json::object();
  for (const auto& [k, v] : m.config) config[k] = v;
  meta["config"] = config;

  json cells = json::array();
  for (const auto& row : r.rows) {
    json params = json::array();
    for (const double p : row.params) params.push_back(number(p));
    json pv = row.params.empty() ? json(nullptr) : row.params.size() == 1 ? number(row.params[0]) : params;
    json cell = {{"scenario", row.scenario},
                 {"T", number(row.T)},
                 {"H", number(row.H)},
                 {"param_name", row.param_name},
                 {"param_value", pv},
                 {"observed", number(row.observed)},
                 {"predicted", number(row.predicted)},
                 {"ratio", number(row.ratio)},
                 {"error_budget", number(row.error_budget)},
                 {"pass", std::string(status(row))},
                 {"n_evals", row.n_evals},
                 {"seconds", number(row.seconds)},
                 {"band", row.band.lo <= row.band.hi ? json::array({row.band.lo, row.band.hi}) : json(nullptr)},
                 {"safety", number(row.safety)},
                 {"pass_band", row.pass_band},
                 {"pass_budget", row.pass_budget}};
    if (!row.message.empty()) cell["message"] = row.message;
    cells.push_back(std::move(cell));
  }
  json doc = {{"metadata", meta}, {"cells", cells}};
  os << doc.dump(2) << '\n';
}

void write_report(std::ostream& os, const RunResult& r, Format format) {
  if (format == Format::json) {
    write_json(os, r);
  } else {
    write_csv(os, r);
  }
}

}  // namespace zlaw
