// Copyright 2026 The Semfrag Authors
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

#ifndef SEMFRAG_AUDIT_HPP_
#define SEMFRAG_AUDIT_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "semfrag/types.hpp"

namespace semfrag {

// Result of one bag-of-tokens probe (averaged perceptron, deterministic:
// fixed epoch count, rows in file order, ties broken by label order).
// Accuracies are diagnostic artifact alarms, not model benchmarks.
struct ProbeReport {
  double accuracy = 0.0;  // on the test split
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
  std::size_t feature_count = 0;
};

struct PmiEntry {
  std::string token;
  Label label = Label::kNeutral;
  double pmi = 0.0;     // log2 lift of the token/label co-occurrence
  std::size_t count = 0;  // rows whose hypothesis contains the token
};

struct AuditReport {
  Label majority_label = Label::kNeutral;  // most frequent train label
  double majority_accuracy = 0.0;          // that constant guess, on test
  ProbeReport hypothesis_only;
  ProbeReport premise_only;
  // Strongest hypothesis-token/label associations across the whole dataset,
  // strongest first. Planted giveaways surface at the top.
  std::vector<PmiEntry> top_associations;
};

// Computes the report over one fragment's rows. Tokens with fewer than
// min_count occurrences are left out of the PMI ranking. Throws DataError
// when the train or test split is empty.
AuditReport audit_dataset(const std::vector<NLIPair>& pairs,
                          std::size_t top_k = 10, std::size_t min_count = 5);

std::string format_audit(const AuditReport& report);

}  // namespace semfrag

#endif  // SEMFRAG_AUDIT_HPP_
