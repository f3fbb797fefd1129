#include "oufpt/grid_io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace oufpt {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string grid_to_csv(const DensityGrid& grid, const Metadata& meta) {
  std::ostringstream out;
  for (const auto& [key, value] : meta) out << "# " << key << "=" << value << "\n";
  out << "# confidence=" << format_double(grid.confidence) << "\n";
  out << "# n_paths=" << grid.n_paths << "\n";
  out << "# survival_at_horizon=" << format_double(grid.survival_at_horizon) << "\n";
  out << "t_lo,t_hi,density,half_width\n";
  for (std::size_t j = 0; j < grid.density.size(); ++j) {
    out << format_double(grid.t_edges[j]) << ',' << format_double(grid.t_edges[j + 1])
        << ',' << format_double(grid.density[j]) << ','
        << format_double(grid.half_width[j]) << "\n";
  }
  return out.str();
}

std::string grid_to_json(const DensityGrid& grid, const Metadata& meta) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json m;
  for (const auto& [key, value] : meta) m[key] = value;
  j["metadata"] = m;
  j["confidence"] = grid.confidence;
  j["n_paths"] = grid.n_paths;
  j["survival_at_horizon"] = grid.survival_at_horizon;
  j["t_edges"] = grid.t_edges;
  j["density"] = grid.density;
  j["half_width"] = grid.half_width;
  return j.dump(2) + "\n";
}

ParsedGrid grid_from_csv(const std::string& text) {
  ParsedGrid out;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  std::vector<double> lo, hi;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        std::string key = line.substr(1, eq - 1);
        key.erase(0, key.find_first_not_of(' '));
        key.erase(key.find_last_not_of(' ') + 1);
        out.meta[key] = line.substr(eq + 1);
      }
      continue;
    }
    if (!header_seen) {
      header_seen = true;  // column header row
      continue;
    }
    std::istringstream row(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() != 4) throw std::runtime_error("grid_from_csv: malformed row");
    lo.push_back(vals[0]);
    hi.push_back(vals[1]);
    out.grid.density.push_back(vals[2]);
    out.grid.half_width.push_back(vals[3]);
  }
  if (lo.empty()) throw std::runtime_error("grid_from_csv: no data rows");
  out.grid.t_edges = lo;
  out.grid.t_edges.push_back(hi.back());
  if (auto it = out.meta.find("confidence"); it != out.meta.end())
    out.grid.confidence = std::stod(it->second);
  if (auto it = out.meta.find("n_paths"); it != out.meta.end())
    out.grid.n_paths = std::stoull(it->second);
  if (auto it = out.meta.find("survival_at_horizon"); it != out.meta.end())
    out.grid.survival_at_horizon = std::stod(it->second);
  return out;
}

ParsedGrid grid_from_json(const std::string& text) {
  ParsedGrid out;
  const auto j = nlohmann::json::parse(text);
  for (const auto& [key, value] : j.at("metadata").items())
    out.meta[key] = value.get<std::string>();
  out.grid.confidence = j.at("confidence").get<double>();
  out.grid.n_paths = j.at("n_paths").get<std::size_t>();
  out.grid.survival_at_horizon = j.at("survival_at_horizon").get<double>();
  out.grid.t_edges = j.at("t_edges").get<std::vector<double>>();
  out.grid.density = j.at("density").get<std::vector<double>>();
  out.grid.half_width = j.at("half_width").get<std::vector<double>>();
  return out;
}

}  // namespace oufpt
