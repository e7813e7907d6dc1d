#pragma once

// The property and acceptance battery, criteria 1-9. Each suite counts its
// checks and records a witness for every failure.

#include <string>
#include <vector>

namespace pbcalc {

struct SuiteOptions {
  std::string source_dir;  // audited for approximate numeric types (criterion 8)
  std::string data_dir;    // shipped *.structure files (criterion 9)
  unsigned seed = 7;
};

struct SuiteResult {
  int criterion = 0;
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> witnesses;  // first few failures
  std::vector<std::string> notes;
  long elapsed_ms = 0;

  bool passed() const { return checks > 0 && failures == 0; }
  void check(bool ok, const std::string& witness);
  /// Without timing, so two runs can be compared byte for byte.
  std::string to_text(bool with_timing = true) const;
};

SuiteResult suite_transform_fixtures();
SuiteResult suite_natural(unsigned seed);
SuiteResult suite_negando(unsigned seed);
SuiteResult suite_branches(unsigned seed);
SuiteResult suite_almost();
SuiteResult suite_uniform_index();
SuiteResult suite_krivine();
/// Source audit plus the caller's comparison of two runs.
SuiteResult suite_exactness(const std::string& source_dir, const std::string& first_run,
                            const std::string& second_run);
SuiteResult suite_parser(unsigned seed, const std::string& data_dir);

/// Runs the selected criteria (all when empty). Criterion 8 reruns the others
/// once more and compares the reports.
std::vector<SuiteResult> run_suite(const SuiteOptions& options, const std::vector<int>& criteria = {});
std::string report(const std::vector<SuiteResult>& results, bool with_timing = true);

}  // namespace pbcalc
