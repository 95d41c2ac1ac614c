#include "virasoro/verify.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <map>

using namespace vir;

int main() {
  // seconds; criteria without an entry have no runtime bound
  const std::map<int, double> limits{{1, 10}, {7, 5}, {9, 60}, {12, 300}};
  RunConfig cfg;
  cfg.parallel = false;
  int failed = 0;
  for (int crit = 1; crit <= 14; ++crit) {
    auto start = std::chrono::steady_clock::now();
    std::vector<CheckResult> results;
    std::string error;
    try {
      for (const CheckSpec& s : all_checks())
        if (s.criterion == crit)
          for (CheckResult& r : s.run(cfg)) results.push_back(std::move(r));
    } catch (const std::exception& e) {
      error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = error.empty() && !results.empty();
    std::string bad;
    for (const CheckResult& r : results)
      if (!r.passed) ok = false, bad += " " + r.name;
    auto lim = limits.find(crit);
    bool slow = lim != limits.end() && secs >= lim->second;
    if (slow) ok = false;
    std::printf("%s criterion %d (%zu checks, %.2f s", ok ? "PASS" : "FAIL", crit, results.size(), secs);
    if (lim != limits.end()) std::printf(", limit %.0f s", lim->second);
    std::printf(")");
    if (!bad.empty()) std::printf(" failing:%s", bad.c_str());
    if (slow) std::printf(" too slow");
    if (!error.empty()) std::printf(" error: %s", error.c_str());
    std::printf("\n");
    std::fflush(stdout);
    failed += !ok;
  }
  return failed == 0 ? 0 : 1;
}
