#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "lochardy/kernels.hpp"
#include "lochardy/verify.hpp"

namespace lochardy {

namespace {

using nlohmann::json;

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

json number_or_string(double v) { return std::isfinite(v) ? json(v) : json(num(v)); }

double read_number(const json& j, const std::string& key) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return kInf;
  }
  throw Error("config: '" + key + "' must be a number");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace

std::string report_csv(const Report& report) {
  std::ostringstream os;
  os << "check,instance,trial,item,lhs,rhs,constant,kind,holds";
  if (report.config.timing) os << ",runtime-ms";
  os << '\n';
  for (const ReportRow& r : report.rows) {
    os << csv_field(r.check) << ',' << csv_field(r.instance) << ',' << r.trial << ',' << csv_field(r.item) << ','
       << num(r.lhs) << ',' << num(r.rhs) << ',' << num(r.constant) << ','
       << (r.kind == RowKind::exact ? "exact" : "recorded") << ',' << (r.holds ? "true" : "false");
    if (report.config.timing) os << ',' << num(r.runtime_ms);
    os << '\n';
  }
  return os.str();
}

std::string report_sidecar(const Report& report) {
  json j;
  j["config"] = json::parse(config_to_json(report.config));
  std::size_t threads = report.config.threads ? report.config.threads : std::thread::hardware_concurrency();
  j["environment"] = {
      {"isa", std::string(kernels::isa_name(kernels::active().isa))},
#if defined(__clang__)
      {"compiler", "clang " __clang_version__},
#elif defined(__GNUC__)
      {"compiler", "gcc " __VERSION__},
#else
      {"compiler", "unknown"},
#endif
      {"threads", threads},
  };
  json per_check = json::object();
  std::size_t exact = 0, recorded = 0;
  for (const ReportRow& r : report.rows) {
    json& c = per_check[r.check];
    if (c.is_null()) c = {{"rows", 0}, {"exact", 0}, {"violations", 0}, {"max_constant", nullptr}};
    c["rows"] = c["rows"].get<std::size_t>() + 1;
    if (r.kind == RowKind::exact) {
      ++exact;
      c["exact"] = c["exact"].get<std::size_t>() + 1;
      if (!r.holds) c["violations"] = c["violations"].get<std::size_t>() + 1;
    } else {
      ++recorded;
      if (std::isfinite(r.constant) &&
          (c["max_constant"].is_null() || r.constant > c["max_constant"].get<double>())) {
        c["max_constant"] = r.constant;
      }
    }
  }
  j["summary"] = {{"rows", report.rows.size()},
                  {"exact_rows", exact},
                  {"recorded_rows", recorded},
                  {"violations", report.violations()},
                  {"checks", per_check}};
  return j.dump(2) + "\n";
}

void write_report(const Report& report) {
  if (report.config.out.empty()) throw Error("no output path");
  write_file(report.config.out, report_csv(report));
  write_file(report.config.out + ".json", report_sidecar(report));
}

// ---------------------------------------------------------------- config

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw Error("config: expected a JSON object");
  ExperimentConfig c;
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "seed") {
        c.seed = v.get<std::uint64_t>();
      } else if (key == "family") {
        c.family = v.get<std::string>();
      } else if (key == "space_file" || key == "space") {
        c.space_file = v.get<std::string>();
        c.family = "file";
      } else if (key == "sizes") {
        c.sizes = v.get<std::vector<std::size_t>>();
      } else if (key == "n") {
        c.sizes = {v.get<std::size_t>()};
      } else if (key == "trials") {
        c.trials = v.get<std::size_t>();
      } else if (key == "checks") {
        c.checks = v.get<std::vector<std::string>>();
      } else if (key == "check") {
        c.checks = {v.get<std::string>()};
      } else if (key == "random_masses") {
        c.random_masses = v.get<bool>();
      } else if (key == "tolerance") {
        c.tolerance = read_number(v, key);
      } else if (key == "q_values" || key == "p_values") {
        if (!v.is_array()) throw Error("config: '" + key + "' must be an array");
        std::vector<double> xs;
        for (const auto& e : v) xs.push_back(read_number(e, key));
        (key == "q_values" ? c.q_values : c.p_values) = xs;
      } else if (key == "functions_per_trial") {
        c.functions_per_trial = v.get<std::size_t>();
      } else if (key == "atoms_per_trial") {
        c.atoms_per_trial = v.get<std::size_t>();
      } else if (key == "threads") {
        c.threads = v.get<std::size_t>();
      } else if (key == "out") {
        c.out = v.get<std::string>();
      } else if (key == "timing") {
        c.timing = v.get<bool>();
      } else {
        throw Error("config: unknown key '" + key + "'");
      }
    } catch (const json::exception&) {
      throw Error("config: bad value for '" + key + "'");
    }
  }
  for (const auto& name : c.checks) {
    if (!is_check_name(name)) throw Error("config: unknown check '" + name + "'");
  }
  for (double q : c.q_values) {
    if (!(q >= 1.0) || std::isinf(q)) throw Error("config: q values must be finite and >= 1");
  }
  for (double p : c.p_values) {
    if (!(p > 1.0)) throw Error("config: p values must exceed 1");
  }
  if (!(c.tolerance >= 0.0)) throw Error("config: tolerance must be nonnegative");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const ExperimentConfig& c) {
  json p = json::array();
  for (double v : c.p_values) p.push_back(number_or_string(v));
  json j = {{"seed", c.seed},
            {"family", c.family},
            {"sizes", c.sizes},
            {"trials", c.trials},
            {"checks", c.checks},
            {"random_masses", c.random_masses},
            {"tolerance", c.tolerance},
            {"q_values", c.q_values},
            {"p_values", p},
            {"functions_per_trial", c.functions_per_trial},
            {"atoms_per_trial", c.atoms_per_trial},
            {"threads", c.threads},
            {"timing", c.timing}};
  if (c.family == "file") j["space_file"] = c.space_file;
  if (!c.out.empty()) j["out"] = c.out;
  return j.dump(2);
}

}  // namespace lochardy
