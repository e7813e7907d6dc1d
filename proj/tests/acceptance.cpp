// Acceptance battery: one PASS/FAIL line per criterion, with runtime limits.

#include <iostream>
#include <map>

#include "pbcalc/suite.hpp"

int main() {
  pbcalc::SuiteOptions options;
  options.source_dir = PBCALC_SOURCE_DIR;
  options.data_dir = PBCALC_DATA_DIR;

  const std::map<int, long> limit_ms{{1, 1000},   {2, 120000}, {3, 120000}, {4, 180000},
                                     {5, 1000},   {6, 300000}, {7, 120000}, {9, 30000}};

  const auto results = pbcalc::run_suite(options);
  int failed = 0;
  for (const auto& r : results) {
    auto it = limit_ms.find(r.criterion);
    const bool in_time = it == limit_ms.end() || r.elapsed_ms < it->second;
    const bool ok = r.passed() && in_time;
    if (!ok) ++failed;
    std::cout << "criterion " << r.criterion << ": " << (ok ? "PASS" : "FAIL") << "  " << r.name << " ("
              << r.checks << " checks, " << r.failures << " failures, " << r.elapsed_ms << " ms";
    if (it != limit_ms.end()) std::cout << " of " << it->second << " ms";
    std::cout << ")\n";
    if (!ok) std::cout << r.to_text();
  }
  std::cout << "\n" << pbcalc::report(results);
  return failed == 0 ? 0 : 1;
}
