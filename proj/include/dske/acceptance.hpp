// Copyright 2026 The dske-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DSKE_ACCEPTANCE_HPP_
#define DSKE_ACCEPTANCE_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace dske::acceptance {

struct CriterionResult {
  int number = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

// Runs the full verification suite, printing one pass/fail line per
// criterion as it completes.
std::vector<CriterionResult> run_all(std::ostream& out);

// Convenience wrapper: returns the number of failed criteria.
int run_and_report(std::ostream& out);

}  // namespace dske::acceptance

#endif  // DSKE_ACCEPTANCE_HPP_
