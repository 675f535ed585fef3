// Acceptance gate: runs every verification criterion with the default seed
// and prints one line per criterion.  Exits 0 only if all of them pass.
#include <cstdio>

#include "finitegap/verify.hpp"

int main() {
  const auto results =
      finitegap::run_suite("full", finitegap::kDefaultSeed, 1);
  std::fputs(finitegap::format_verify_table(results).c_str(), stdout);
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
