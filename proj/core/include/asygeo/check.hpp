#pragma once

#include <string>

namespace asygeo {

/// A named pass/fail assertion with a human-readable detail line.
struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

}  // namespace asygeo
