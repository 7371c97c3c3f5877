#include <cstdio>
#include <cstring>

#include "chartlab/acceptance.hpp"

using namespace chartlab::acceptance;

int main(int argc, char** argv) {
  Level level = Level::kFull;
  bool verbose = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) level = Level::kQuick;
    if (std::strcmp(argv[i], "-v") == 0) verbose = true;
  }
  int failed = 0;
  for (const auto& r : run_all(level)) {
    const bool ok = r.passed();
    failed += !ok;
    std::printf("[%s] criterion %d: %s (%zu checks, %.2fs", ok ? "PASS" : "FAIL", r.id,
                r.title.c_str(), r.checks.size(), r.seconds);
    if (r.limit_seconds > 0) std::printf(", limit %.0fs", r.limit_seconds);
    std::printf(")\n");
    if (r.resource_error) std::printf("    resource cap: %s\n", r.resource_error->c_str());
    if (!r.within_time()) std::printf("    exceeded time limit\n");
    for (const auto& c : r.checks)
      if (verbose || !c.passed)
        std::printf("    %s %s%s%s\n", c.passed ? "ok  " : "FAIL", c.name.c_str(),
                    c.witness.empty() ? "" : ": ", c.witness.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria().size()) - failed,
              criteria().size());
  return failed == 0 ? 0 : 1;
}
