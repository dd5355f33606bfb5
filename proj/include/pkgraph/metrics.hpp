#pragma once

#include <vector>

namespace pkgraph::harness {

// Percentages. F1 is the positive-class F1 and is 0 when precision + recall is 0.
struct Metrics {
  double accuracy = 0.0;
  double f1 = 0.0;
};

// Throws ContractError on empty or mismatched inputs.
Metrics metrics(const std::vector<int>& predictions, const std::vector<int>& labels);

}  // namespace pkgraph::harness
