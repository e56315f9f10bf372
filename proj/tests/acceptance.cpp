#include <cstdio>
#include <cstdlib>
#include <string>

#include "cycint/acceptance.hpp"

// Usage: acceptance [criterion ...]
int main(int argc, char** argv) {
  cycint::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) opts.only.push_back(std::atoi(argv[i]));
  if (const char* w = std::getenv("CYCINT_WORKERS")) opts.workers = std::atoi(w);
  int failed = 0;
  const auto results = cycint::run_acceptance(opts, [&](const cycint::CriterionResult& r) {
    std::printf("%s\n", cycint::format_result(r).c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  });
  std::printf("%zu criteria, %zu passed, %d failed\n", results.size(), results.size() - failed, failed);
  return failed == 0 ? 0 : 1;
}
