#pragma once

// Quick invariant suite behind `splitproj selfcheck`.

#include <string>
#include <vector>

namespace splitproj {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CheckResult> run_selfcheck();

}  // namespace splitproj
