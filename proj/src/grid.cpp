#include "shotnoise/grid.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace shotnoise {

std::vector<double> parse_grid_spec(const std::string& spec) {
  double start = 0.0, stop = 0.0;
  long count = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(spec);
  if (!(in >> start >> c1 >> stop >> c2 >> count) || c1 != ':' || c2 != ':' ||
      !in.eof())
    throw std::invalid_argument("grid spec must be start:stop:count");
  if (count < 1) throw std::invalid_argument("grid count must be >= 1");
  std::vector<double> g(count);
  if (count == 1) {
    g[0] = start;
    return g;
  }
  for (long i = 0; i < count; ++i)
    g[i] = start + (stop - start) * i / (count - 1);
  return g;
}

void DensityGrid::validate() const {
  if (f.size() != x.size())
    throw std::invalid_argument("DensityGrid: x/f length mismatch");
  for (const auto& c : extra)
    if (c.values.size() != x.size())
      throw std::invalid_argument("DensityGrid: extra column length mismatch");
  for (double v : f)
    if (!(v >= -1e-9))
      throw std::invalid_argument("DensityGrid: negative density beyond ringing tolerance");
}

double DensityGrid::trapezoid() const {
  double s = 0.0;
  for (size_t i = 1; i < x.size(); ++i)
    s += 0.5 * (f[i] + f[i - 1]) * (x[i] - x[i - 1]);
  return s;
}

std::string to_csv(const DensityGrid& g) {
  std::string out = "x,f,method,err";
  for (const auto& c : g.extra) out += "," + c.name;
  out += '\n';
  char buf[64];
  for (size_t i = 0; i < g.x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,", g.x[i], g.f[i]);
    out += buf;
    out += g.method;
    std::snprintf(buf, sizeof buf, ",%.17g", g.err_estimate);
    out += buf;
    for (const auto& c : g.extra) {
      std::snprintf(buf, sizeof buf, ",%.17g", c.values[i]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

DensityGrid from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty csv");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> names;
  {
    std::istringstream hdr(line);
    std::string cell;
    while (std::getline(hdr, cell, ',')) names.push_back(cell);
  }
  if (names.size() < 4 || names[0] != "x" || names[1] != "f" ||
      names[2] != "method" || names[3] != "err")
    throw std::invalid_argument("csv header must start with x,f,method,err");
  DensityGrid g;
  for (size_t j = 4; j < names.size(); ++j) g.extra.push_back({names[j], {}});
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != names.size())
      throw std::invalid_argument("csv row width mismatch");
    g.x.push_back(std::stod(cells[0]));
    g.f.push_back(std::stod(cells[1]));
    g.method = cells[2];
    g.err_estimate = std::stod(cells[3]);
    for (size_t j = 4; j < names.size(); ++j)
      g.extra[j - 4].values.push_back(std::stod(cells[j]));
  }
  return g;
}

std::string to_json(const DensityGrid& g) {
  nlohmann::json j;
  j["x"] = g.x;
  j["f"] = g.f;
  j["method"] = g.method;
  j["config"] = {{"x1", g.x1}, {"x2", g.x2}, {"step", g.step}};
  j["err_estimate"] = g.err_estimate;
  for (const auto& c : g.extra) j["extra"][c.name] = c.values;
  return j.dump(2);
}

DensityGrid from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  DensityGrid g;
  g.x = j.at("x").get<std::vector<double>>();
  g.f = j.at("f").get<std::vector<double>>();
  g.method = j.at("method").get<std::string>();
  g.err_estimate = j.value("err_estimate", 0.0);
  if (j.contains("config")) {
    g.x1 = j["config"].value("x1", 0.0);
    g.x2 = j["config"].value("x2", 0.0);
    g.step = j["config"].value("step", 0.0);
  }
  if (j.contains("extra"))
    for (auto it = j["extra"].begin(); it != j["extra"].end(); ++it)
      g.extra.push_back({it.key(), it.value().get<std::vector<double>>()});
  return g;
}

}  // namespace shotnoise
