#pragma once

#include <string>

namespace acceptance {

struct Outcome {
  bool pass = false;
  std::string name;
  std::string detail;
};

Outcome run_criterion(int number);

}  // namespace acceptance
