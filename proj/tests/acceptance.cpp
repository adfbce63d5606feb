// Acceptance suite driver: runs every criterion at full level and prints one
// pass/fail line per criterion.  Exit code 0 iff nothing failed.

#include <cstdio>

#include "stw/suite.hpp"

int main() {
  using namespace stw;
  // per-criterion wall-time budgets (milliseconds)
  const std::map<std::string, double> budget = {
      {"C1-catalog-validate", 10'000},  {"C2-restriction-reports", 60'000},
      {"C3-syzygy-periodicity", 60'000}, {"C4-dihedral-spherical", 60'000},
      {"C5-semidihedral-square", 120'000}, {"C6-klein-p1", 60'000},
      {"C7-extraspecial-pn", 300'000},  {"C8-properties", 300'000},
  };
  auto rep = run_suite("full", 0, 1);
  bool ok = true;
  for (const auto& r : rep.results) {
    bool in_budget = true;
    auto it = budget.find(r.id);
    if (it != budget.end() && r.wall_ms > it->second) in_budget = false;
    const char* tag = r.verdict == Verdict::Fail       ? "FAIL"
                      : !in_budget                     ? "FAIL"
                      : r.verdict == Verdict::Inconclusive ? "INCONCLUSIVE"
                                                           : "PASS";
    std::printf("[%s] %s (%.0f ms%s)\n", tag, r.id.c_str(), r.wall_ms,
                in_budget ? "" : ", over budget");
    if (r.verdict == Verdict::Fail) {
      for (const auto& item : r.details)
        if (item.contains("ok") && !item["ok"].get<bool>())
          std::printf("    failed: %s: %s\n", item["check"].get<std::string>().c_str(),
                      item.value("witness", std::string("(no witness)")).c_str());
    }
    if (r.verdict == Verdict::Fail || !in_budget) ok = false;
  }
  std::size_t checks = 0;
  for (const auto& r : rep.results) checks += r.details.size();
  std::printf("%s: %zu criteria, %zu checks\n", ok ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
              rep.results.size(), checks);
  return ok ? 0 : 1;
}
