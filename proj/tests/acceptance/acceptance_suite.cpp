// Prints one PASS/FAIL line per acceptance criterion with default settings.
#include <cstdio>
#include <exception>

#include "sburgers/apps/checks.hpp"

int main() {
  try {
    const sburgers::ScenarioConfig config;
    int failures = 0;
    for (const sburgers::CheckResult& r : sburgers::run_acceptance(config)) {
      std::printf("%s\n", sburgers::format_check_line(r).c_str());
      std::fflush(stdout);
      if (!r.passed || !r.within_budget()) ++failures;
    }
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance suite aborted: %s\n", e.what());
    return 2;
  }
}
