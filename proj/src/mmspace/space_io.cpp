#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lochardy/space_io.hpp"

namespace lochardy {

namespace {

using nlohmann::json;

std::vector<double> shortest_path_closure(std::size_t n, const json& edges) {
  std::vector<double> d(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 3) throw Error("space: graph edge must be [i, j, w]");
    const auto i = e[0].get<std::size_t>();
    const auto j = e[1].get<std::size_t>();
    const double w = e[2].get<double>();
    if (i >= n || j >= n) throw Error("space: graph edge endpoint out of range");
    if (!(w > 0.0)) throw Error("space: graph edge weight must be positive");
    d[i * n + j] = std::min(d[i * n + j], w);
    d[j * n + i] = std::min(d[j * n + i], w);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = d[i * n + k];
      if (dik == kInf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double via = dik + d[k * n + j];
        if (via < d[i * n + j]) d[i * n + j] = via;
      }
    }
  }
  for (double v : d) {
    if (v == kInf) throw Error("space: graph is disconnected");
  }
  return d;
}

}  // namespace

Space load_space(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::exception& e) {
    throw Error(std::string("space: malformed document: ") + e.what());
  }
  try {
    const auto n = doc.at("n").get<std::size_t>();
    const auto& metric = doc.at("metric");
    const auto type = metric.at("type").get<std::string>();
    std::vector<double> dist;
    if (type == "dense") {
      const auto& rows = metric.at("data");
      if (rows.size() != n) throw Error("space: dense metric must have n rows");
      dist.reserve(n * n);
      for (const auto& row : rows) {
        if (row.size() != n) throw Error("space: dense metric must have n columns");
        for (const auto& v : row) dist.push_back(v.get<double>());
      }
    } else if (type == "graph") {
      dist = shortest_path_closure(n, metric.at("data"));
    } else {
      throw Error("space: unknown metric type '" + type + "'");
    }
    auto mass = doc.at("mass").get<std::vector<double>>();
    if (mass.size() != n) throw Error("space: mass must have n entries");
    const double unit = doc.value("scale_unit", 1.0);
    return Space(std::move(dist), std::move(mass), unit);
  } catch (const json::exception& e) {
    throw Error(std::string("space: ") + e.what());
  }
}

Space load_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("space: cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_space(ss.str());
}

std::string space_to_json(const Space& space) {
  const std::size_t n = space.size();
  json rows = json::array();
  for (Index i = 0; i < n; ++i) {
    const auto r = space.dist_row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  json doc;
  doc["n"] = n;
  doc["metric"] = {{"type", "dense"}, {"data", rows}};
  doc["mass"] = std::vector<double>(space.masses().begin(), space.masses().end());
  doc["scale_unit"] = space.scale_unit();
  return doc.dump();
}

}  // namespace lochardy
