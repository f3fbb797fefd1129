#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace oufpt::cli {

struct CheckRow {
  std::string name;
  double value = 0.0;      // measured residual / fraction / statistic
  double threshold = 0.0;  // pass bound on value (direction per check)
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckRow> checks;
  bool pass = true;

  void add(std::string name, double value, double threshold, bool ok);
  std::string to_json() const;
};

/// full=false trims Monte Carlo sizes for the CLI verify command; full=true
/// runs the acceptance-strength versions.
struct SuiteOptions {
  bool full = false;
  std::uint64_t seed = 1;
  int threads = 0;
};

SuiteReport suite_algebra(const SuiteOptions& opt);      // operator identities
SuiteReport suite_identity(const SuiteOptions& opt);     // crossing identity vs MC
SuiteReport suite_symmetry(const SuiteOptions& opt);     // FP residuals + composite map
SuiteReport suite_bridge(const SuiteOptions& opt);       // bridge representations
SuiteReport suite_images(const SuiteOptions& opt);       // method of images
SuiteReport suite_asymptotics(const SuiteOptions& opt);  // transience machinery
SuiteReport suite_bm_limit(const SuiteOptions& opt);     // k -> 0 regressions
SuiteReport suite_parabola(const SuiteOptions& opt);     // Airy series family

}  // namespace oufpt::cli
