#pragma once

#include <string>
#include <vector>

#include "itl/reflect.hpp"

namespace itl {

// One reversal identity, checked two ways over a finite domain:
//  - structurally, the rewriter maps each instance to the expected shape;
//  - semantically, instance and expected shape agree under time reversal
//    on every interval of the domain.
struct LawResult {
  std::string id;
  std::string statement;
  std::size_t instances = 0;
  bool passed = true;
  std::string failure;  // description of the first failing instance
};

// Runs the whole reversal law catalogue: the kernel rules, the expression
// rules, the derived-operator duals, the programming-construct rules, and
// the length-forced variable identities.
std::vector<LawResult> run_law_suite(const Domain& d, const EvalConfig& cfg);

bool all_passed(const std::vector<LawResult>& results);

}  // namespace itl
