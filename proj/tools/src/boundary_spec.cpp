#include "boundary_spec.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "oufpt/special.hpp"

namespace oufpt::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double num_field(const std::vector<std::string>& parts, std::size_t idx,
                 const std::string& spec) {
  if (idx >= parts.size())
    throw std::invalid_argument("boundary spec '" + spec + "': missing field " +
                                std::to_string(idx + 1));
  try {
    std::size_t used = 0;
    const double v = std::stod(parts[idx], &used);
    if (used != parts[idx].size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("boundary spec '" + spec + "': field " +
                                std::to_string(idx + 1) + " ('" + parts[idx] +
                                "') is not a number");
  }
}

void expect_fields(const std::vector<std::string>& parts, std::size_t n,
                   const std::string& spec) {
  if (parts.size() != n)
    throw std::invalid_argument("boundary spec '" + spec + "': expected " +
                                std::to_string(n - 1) + " parameter(s), got " +
                                std::to_string(parts.size() - 1));
}

}  // namespace

ParsedBoundary parse_boundary(const std::string& spec, double k) {
  const auto parts = split(spec, ':');
  ParsedBoundary out;
  out.description = spec;
  const std::string& kind = parts[0];
  if (kind == "const") {
    expect_fields(parts, 2, spec);
    out.f = Boundary::constant(num_field(parts, 1, spec));
  } else if (kind == "affine") {
    expect_fields(parts, 3, spec);
    out.f = Boundary::affine(num_field(parts, 1, spec), num_field(parts, 2, spec));
  } else if (kind == "parabola") {
    expect_fields(parts, 3, spec);
    const double a = num_field(parts, 1, spec), b = num_field(parts, 2, spec);
    out.f = k == 0.0 ? parabola_boundary_bm(a, b) : parabola_boundary_ou(a, b, k);
  } else if (kind == "hyperbolic") {
    expect_fields(parts, 3, spec);
    out.f = hyperbolic_family(num_field(parts, 1, spec), num_field(parts, 2, spec), k);
  } else if (kind == "images") {
    if (parts.size() < 2)
      throw std::invalid_argument("boundary spec '" + spec + "': missing file");
    // the file name may itself contain ':'; rejoin
    std::string path = spec.substr(std::string("images:").size());
    std::ifstream in(path);
    if (!in)
      throw std::invalid_argument("boundary spec '" + spec + "': cannot open '" + path +
                                  "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const ImageMeasure m = ImageMeasure::from_json(buf.str());
    out.measure = m;
    if (m.two_sided()) {
      auto [fp, fm] = boundary_from_measure_two_sided(m, k);
      out.f = fp;
      out.f_minus = fm;
    } else {
      out.f = boundary_from_measure(m, k);
    }
  } else {
    throw std::invalid_argument(
        "boundary spec '" + spec +
        "': unknown kind '" + kind +
        "' (expected const, affine, parabola, hyperbolic, images)");
  }
  return out;
}

GridSpec parse_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3)
    throw std::invalid_argument("grid spec '" + spec + "': expected T0:T1:N");
  GridSpec g;
  g.t0 = num_field(parts, 0, spec);
  g.t1 = num_field(parts, 1, spec);
  const double n = num_field(parts, 2, spec);
  if (!(g.t1 > g.t0)) throw std::invalid_argument("grid spec '" + spec + "': T1 <= T0");
  if (!(n >= 2.0)) throw std::invalid_argument("grid spec '" + spec + "': N >= 2");
  g.n = static_cast<std::size_t>(n);
  return g;
}

}  // namespace oufpt::cli
