// Acceptance runner: one PASS/FAIL line per criterion. With --criterion N only
// that criterion runs. Exit status is nonzero if any criterion fails.

#include <cstdlib>
#include <cstring>
#include <iostream>

#include "geovec/acceptance.hpp"

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  const int count = static_cast<int>(geovec::criteria().size());
  if (only < 0 || only > count) {
    std::cerr << "criterion must be in 1.." << count << "\n";
    return 2;
  }
  bool ok = true;
  for (int id = 1; id <= count; ++id) {
    if (only != 0 && id != only) continue;
    const geovec::CriterionResult r = geovec::run_criterion(id);
    std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.title << " ("
              << geovec::acceptance::fmt(r.seconds) << " s)\n";
    for (const auto& line : r.lines) std::cout << "    " << line << "\n";
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}
