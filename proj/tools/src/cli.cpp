#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "boundary_spec.hpp"
#include "oufpt/asymptotics.hpp"
#include "oufpt/density.hpp"
#include "oufpt/grid_io.hpp"
#include "oufpt/images.hpp"
#include "oufpt/mc.hpp"
#include "oufpt/special.hpp"
#include "suites.hpp"

namespace oufpt::cli {

namespace {

constexpr int kOk = 0, kConfigError = 2, kSuiteFailure = 3;

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
  file << text;
}

std::string table_csv(const Metadata& meta, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  for (const auto& [key, value] : meta) os << "# " << key << "=" << value << "\n";
  for (std::size_t i = 0; i < header.size(); ++i)
    os << header[i] << (i + 1 < header.size() ? "," : "\n");
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << format_double(row[i]) << (i + 1 < row.size() ? "," : "\n");
  }
  return os.str();
}

std::string table_json(const Metadata& meta, const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  os << "{\n  \"metadata\": {";
  std::size_t i = 0;
  for (const auto& [key, value] : meta)
    os << (i++ ? ", " : "") << "\"" << key << "\": \"" << value << "\"";
  os << "},\n  \"columns\": [";
  for (std::size_t c = 0; c < header.size(); ++c)
    os << (c ? ", " : "") << "\"" << header[c] << "\"";
  os << "],\n  \"rows\": [\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    os << "    [";
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      os << (c ? ", " : "") << format_double(rows[r][c]);
    os << "]" << (r + 1 < rows.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

struct CommonOpts {
  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed = 1;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--out", c.out_path, "Write to this file instead of stdout");
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", c.seed, "RNG seed");
  cmd->add_option("--threads", c.threads,
                  "Worker cap (0 = OU_FPT_THREADS env or hardware)");
}

int cmd_transform(const std::string& boundary_spec, double alpha, double beta, double k,
                  const std::string& grid_spec, const CommonOpts& common,
                  std::ostream& out) {
  if (alpha == 0.0) throw CLI::ValidationError("--alpha", "alpha must be nonzero");
  const ParsedBoundary pb = parse_boundary(boundary_spec, k);
  const GridSpec grid = parse_grid(grid_spec);
  const TransformParams p{alpha, beta, k};
  const double zeta = zeta_horizon(p);

  Metadata meta{{"command", "transform"},   {"boundary", pb.description},
                {"alpha", format_double(alpha)}, {"beta", format_double(beta)},
                {"k", format_double(k)},    {"grid", grid_spec},
                {"zeta", format_double(zeta)},   {"version", kVersion}};

  std::vector<std::string> header{"t", "f", "Sf"};
  const Boundary sf = s_transform(pb.f, p);
  Boundary sf_minus;
  if (pb.f_minus) {
    header = {"t", "f_plus", "Sf_plus", "f_minus", "Sf_minus"};
    sf_minus = s_transform(*pb.f_minus, p);
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double t = grid.t0 + (grid.t1 - grid.t0) * i / (grid.n - 1);
    if (t >= sf.domain_end() || t >= pb.f.domain_end()) break;
    if (pb.f_minus) {
      rows.push_back({t, pb.f(t), sf(t), (*pb.f_minus)(t), sf_minus(t)});
    } else {
      rows.push_back({t, pb.f(t), sf(t)});
    }
  }
  write_output(common.format == "csv" ? table_csv(meta, header, rows)
                                      : table_json(meta, header, rows),
               common.out_path, out);
  return kOk;
}

struct FptOpts {
  std::string method;
  std::string boundary;
  std::string boundary_lower;
  std::string source;       // density grid file for --method identity
  std::string measure;      // measure JSON for --method images
  std::string grid = "0:1:100";
  double alpha = 1.0, beta = 0.0, k = 0.0;
  double horizon = 1.0, dt = 1e-3;
  std::size_t paths = 100000, bins = 200;
  double a_coef = 1.0, b_coef = 1.0;
  std::size_t n_terms = 50;
};

int cmd_fpt(const FptOpts& o, const CommonOpts& common, std::ostream& out) {
  Metadata meta{{"command", "fpt"},        {"method", o.method},
                {"k", format_double(o.k)}, {"seed", std::to_string(common.seed)},
                {"version", kVersion}};

  if (o.method == "mc") {
    if (o.boundary.empty())
      throw CLI::RequiredError("--boundary (required for --method mc)");
    const ParsedBoundary pb = parse_boundary(o.boundary, o.k);
    MCConfig cfg;
    cfg.n_paths = o.paths;
    cfg.dt = o.dt;
    cfg.horizon = o.horizon;
    cfg.bins = o.bins;
    cfg.threads = common.threads;
    meta["boundary"] = pb.description;
    meta["horizon"] = format_double(o.horizon);
    meta["dt"] = format_double(o.dt);
    meta["paths"] = std::to_string(o.paths);
    DensityGrid grid;
    if (pb.f_minus) {
      grid = fpt_two_sided_sample(OUParams{o.k, common.seed}, pb.f, *pb.f_minus, cfg);
    } else if (!o.boundary_lower.empty()) {
      const ParsedBoundary lower = parse_boundary(o.boundary_lower, o.k);
      meta["boundary_lower"] = lower.description;
      grid = fpt_two_sided_sample(OUParams{o.k, common.seed}, pb.f, lower.f, cfg);
    } else {
      grid = fpt_sample(OUParams{o.k, common.seed}, pb.f, cfg);
    }
    write_output(common.format == "csv" ? grid_to_csv(grid, meta)
                                        : grid_to_json(grid, meta),
                 common.out_path, out);
    return kOk;
  }

  if (o.method == "identity") {
    if (o.boundary.empty())
      throw CLI::RequiredError("--boundary (the base curve of the identity)");
    if (o.source.empty())
      throw CLI::RequiredError("--source (density grid file for --method identity)");
    const ParsedBoundary pb = parse_boundary(o.boundary, o.k);
    std::ifstream in(o.source);
    if (!in) throw CLI::ValidationError("--source", "cannot open '" + o.source + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const ParsedGrid parsed = text.find_first_not_of(" \t\r\n") != std::string::npos &&
                                      text[text.find_first_not_of(" \t\r\n")] == '{'
                                  ? grid_from_json(text)
                                  : grid_from_csv(text);
    const DensityFn src = DensityFn::from_grid(parsed.grid);
    const DensityFn transformed =
        transform_density(src, pb.f, {o.alpha, o.beta, o.k});
    meta["boundary"] = pb.description;
    meta["alpha"] = format_double(o.alpha);
    meta["beta"] = format_double(o.beta);
    meta["source"] = o.source;
    const GridSpec grid = parse_grid(o.grid);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < grid.n; ++i) {
      const double t = grid.t0 + (grid.t1 - grid.t0) * i / (grid.n - 1);
      if (t <= 0.0) continue;
      const auto v = transformed(t);
      const auto hw = transformed.half_width(t);
      if (!v) break;  // out of the mapped support from here on
      rows.push_back({t, *v, hw ? *hw : 0.0});
    }
    write_output(common.format == "csv"
                     ? table_csv(meta, {"t", "density", "half_width"}, rows)
                     : table_json(meta, {"t", "density", "half_width"}, rows),
                 common.out_path, out);
    return kOk;
  }

  if (o.method == "images") {
    if (o.measure.empty())
      throw CLI::RequiredError("--measure (JSON file for --method images)");
    std::ifstream in(o.measure);
    if (!in) throw CLI::ValidationError("--measure", "cannot open '" + o.measure + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const ImageMeasure m = ImageMeasure::from_json(buf.str());
    meta["measure"] = o.measure;
    const GridSpec grid = parse_grid(o.grid);
    std::vector<std::vector<double>> rows;
    Boundary f, fm;
    bool two = m.two_sided();
    if (two) {
      auto pair = boundary_from_measure_two_sided(m, o.k);
      f = pair.first;
      fm = pair.second;
    } else {
      f = boundary_from_measure(m, o.k);
    }
    for (std::size_t i = 0; i < grid.n; ++i) {
      const double t = grid.t0 + (grid.t1 - grid.t0) * i / (grid.n - 1);
      if (t <= 0.0 || t >= f.domain_end()) continue;
      if (two) {
        rows.push_back({t, f(t), fm(t), images_density(m, o.k, f, t)});
      } else {
        rows.push_back({t, f(t), images_density(m, o.k, f, t)});
      }
    }
    const std::vector<std::string> header =
        two ? std::vector<std::string>{"t", "f_plus", "f_minus", "density"}
            : std::vector<std::string>{"t", "f", "density"};
    write_output(common.format == "csv" ? table_csv(meta, header, rows)
                                        : table_json(meta, header, rows),
                 common.out_path, out);
    return kOk;
  }

  if (o.method == "airy") {
    const auto p = AirySeriesParams::make(o.a_coef, o.b_coef, o.n_terms);
    meta["a"] = format_double(o.a_coef);
    meta["b"] = format_double(o.b_coef);
    meta["n_terms"] = std::to_string(o.n_terms);
    const GridSpec grid = parse_grid(o.grid);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < grid.n; ++i) {
      const double t = grid.t0 + (grid.t1 - grid.t0) * i / (grid.n - 1);
      if (t <= 0.0) continue;
      const SeriesEval v = o.k == 0.0 ? parabola_bm_density(p, t)
                                      : parabola_ou_density(p, o.k, t);
      rows.push_back({t, v.value, v.converged ? 1.0 : 0.0});
    }
    write_output(common.format == "csv"
                     ? table_csv(meta, {"t", "density", "converged"}, rows)
                     : table_json(meta, {"t", "density", "converged"}, rows),
                 common.out_path, out);
    return kOk;
  }

  throw CLI::ValidationError("--method", "unknown method '" + o.method + "'");
}

int cmd_verify(const std::string& suite, bool full, const CommonOpts& common,
               std::ostream& out) {
  SuiteOptions opt;
  opt.full = full;
  opt.seed = common.seed;
  opt.threads = common.threads;
  SuiteReport rep;
  if (suite == "algebra") {
    rep = suite_algebra(opt);
  } else if (suite == "identity") {
    rep = suite_identity(opt);
  } else if (suite == "symmetry") {
    rep = suite_symmetry(opt);
  } else if (suite == "bridge") {
    rep = suite_bridge(opt);
  } else if (suite == "images") {
    rep = suite_images(opt);
  } else if (suite == "asymptotics") {
    rep = suite_asymptotics(opt);
  } else {
    throw CLI::ValidationError("--suite", "unknown suite '" + suite + "'");
  }
  write_output(rep.to_json(), common.out_path, out);
  return rep.pass ? kOk : kSuiteFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"First-passage times of the Ornstein-Uhlenbeck process to moving "
               "boundaries: transforms, Monte Carlo, method of images"};
  app.require_subcommand(1);

  // transform
  auto* transform = app.add_subcommand(
      "transform", "Evaluate the two-parameter boundary transform on a grid");
  std::string boundary_spec, grid_spec = "0:3:50";
  double alpha = 1.0, beta = 0.0, k = 0.0;
  CommonOpts common_t;
  transform->add_option("--boundary", boundary_spec,
                        "const:a | affine:a:b | parabola:a:b | hyperbolic:A:B | images:FILE")
      ->required();
  transform->add_option("--alpha", alpha, "transform alpha (nonzero)")->required();
  transform->add_option("--beta", beta, "transform beta")->required();
  transform->add_option("--k", k, "mean-reversion rate");
  transform->add_option("--grid", grid_spec, "T0:T1:N evaluation grid");
  add_common(transform, common_t);

  // fpt
  auto* fpt = app.add_subcommand("fpt", "First-passage density estimates");
  FptOpts fo;
  CommonOpts common_f;
  fpt->add_option("--method", fo.method, "mc | identity | images | airy")->required();
  fpt->add_option("--boundary", fo.boundary, "boundary spec");
  fpt->add_option("--boundary-lower", fo.boundary_lower,
                  "lower boundary spec (two-sided mc)");
  fpt->add_option("--source", fo.source, "source density grid file (identity)");
  fpt->add_option("--measure", fo.measure, "measure JSON file (images)");
  fpt->add_option("--grid", fo.grid, "T0:T1:N output grid (identity/images/airy)");
  fpt->add_option("--alpha", fo.alpha, "transform alpha (identity)");
  fpt->add_option("--beta", fo.beta, "transform beta (identity)");
  fpt->add_option("--k", fo.k, "mean-reversion rate");
  fpt->add_option("--horizon", fo.horizon, "mc horizon");
  fpt->add_option("--dt", fo.dt, "mc grid step");
  fpt->add_option("--paths", fo.paths, "mc path count");
  fpt->add_option("--bins", fo.bins, "mc histogram bins");
  fpt->add_option("--a", fo.a_coef, "parabola a (airy)");
  fpt->add_option("--b", fo.b_coef, "parabola b (airy)");
  fpt->add_option("--terms", fo.n_terms, "airy series terms (<= 50)");
  add_common(fpt, common_f);

  // verify
  auto* verify = app.add_subcommand("verify", "Run an invariant suite");
  std::string suite;
  bool full = false;
  CommonOpts common_v;
  verify->add_option("--suite", suite,
                     "algebra | identity | symmetry | bridge | images | asymptotics")
      ->required();
  verify->add_flag("--full", full, "acceptance-strength Monte Carlo sizes");
  add_common(verify, common_v);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (transform->parsed())
      return cmd_transform(boundary_spec, alpha, beta, k, grid_spec, common_t, out);
    if (fpt->parsed()) return cmd_fpt(fo, common_f, out);
    if (verify->parsed()) return cmd_verify(suite, full, common_v, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace oufpt::cli
