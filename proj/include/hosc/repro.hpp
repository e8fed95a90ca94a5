#pragma once

// Reproduces the worked examples that motivate the toolkit: subtyping of
// coffee-shop protocols, the parametrisation pathologies of B, the failures
// of standard duality and of the complement, and the endpoint side condition.

#include <string>
#include <vector>

namespace hosc {

struct ReproCase {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<ReproCase> run_repro();

}  // namespace hosc
