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

#include "semfrag/audit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "semfrag/errors.hpp"
#include "semfrag/text.hpp"

namespace semfrag {

namespace {

constexpr std::array<Label, 3> kLabels = {Label::kEntailment, Label::kNeutral,
                                          Label::kContradiction};

size_t label_index(Label label) {
  for (size_t i = 0; i < kLabels.size(); ++i) {
    if (kLabels[i] == label) return i;
  }
  throw DataError("unknown label");
}

// Deduplicated token-presence features for one sentence.
std::vector<std::string> features_of(const std::string& text) {
  std::vector<std::string> tokens = tokenize(canonicalize(text));
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  return tokens;
}

// Averaged perceptron over binary bag-of-tokens features. Deterministic:
// a fixed number of epochs, examples in the order given, argmax ties going
// to the earlier label.
class Perceptron {
 public:
  void train(const std::vector<std::pair<std::vector<std::string>, Label>>&
                 examples) {
    for (const auto& [features, label] : examples) {
      (void)label;
      for (const std::string& f : features) {
        if (index_.emplace(f, index_.size()).second) {
          for (auto& w : weights_) w.push_back(0.0);
          for (auto& u : sums_) u.push_back(0.0);
        }
      }
    }
    constexpr int kEpochs = 8;
    double step = 1.0;
    for (int epoch = 0; epoch < kEpochs; ++epoch) {
      for (const auto& [features, label] : examples) {
        size_t gold = label_index(label);
        size_t guess = predict_raw(features);
        if (guess != gold) {
          for (const std::string& f : features) {
            size_t i = index_.at(f);
            weights_[gold][i] += 1.0;
            sums_[gold][i] += step;
            weights_[guess][i] -= 1.0;
            sums_[guess][i] -= step;
          }
          bias_[gold] += 1.0;
          bias_sums_[gold] += step;
          bias_[guess] -= 1.0;
          bias_sums_[guess] -= step;
        }
        step += 1.0;
      }
    }
    // Finalize the running average: w_avg = w - u / steps.
    for (size_t l = 0; l < kLabels.size(); ++l) {
      for (size_t i = 0; i < weights_[l].size(); ++i) {
        weights_[l][i] -= sums_[l][i] / step;
      }
      bias_[l] -= bias_sums_[l] / step;
    }
  }

  Label predict(const std::vector<std::string>& features) const {
    return kLabels[predict_raw(features)];
  }

  size_t feature_count() const { return index_.size(); }

 private:
  size_t predict_raw(const std::vector<std::string>& features) const {
    std::array<double, 3> scores = bias_;
    for (const std::string& f : features) {
      auto it = index_.find(f);
      if (it == index_.end()) continue;
      for (size_t l = 0; l < kLabels.size(); ++l) {
        scores[l] += weights_[l][it->second];
      }
    }
    size_t best = 0;
    for (size_t l = 1; l < kLabels.size(); ++l) {
      if (scores[l] > scores[best]) best = l;
    }
    return best;
  }

  std::map<std::string, size_t> index_;
  std::array<std::vector<double>, 3> weights_;
  std::array<std::vector<double>, 3> sums_;
  std::array<double, 3> bias_ = {0.0, 0.0, 0.0};
  std::array<double, 3> bias_sums_ = {0.0, 0.0, 0.0};
};

ProbeReport run_probe(const std::vector<const NLIPair*>& train,
                      const std::vector<const NLIPair*>& test,
                      bool hypothesis_side) {
  std::vector<std::pair<std::vector<std::string>, Label>> examples;
  examples.reserve(train.size());
  for (const NLIPair* p : train) {
    examples.emplace_back(
        features_of(hypothesis_side ? p->hypothesis : p->premise), p->label);
  }
  Perceptron model;
  model.train(examples);

  size_t correct = 0;
  for (const NLIPair* p : test) {
    Label guess =
        model.predict(features_of(hypothesis_side ? p->hypothesis : p->premise));
    if (guess == p->label) ++correct;
  }
  ProbeReport report;
  report.train_rows = train.size();
  report.test_rows = test.size();
  report.feature_count = model.feature_count();
  report.accuracy =
      static_cast<double>(correct) / static_cast<double>(test.size());
  return report;
}

}  // namespace

AuditReport audit_dataset(const std::vector<NLIPair>& pairs, std::size_t top_k,
                          std::size_t min_count) {
  std::vector<const NLIPair*> train;
  std::vector<const NLIPair*> test;
  for (const NLIPair& p : pairs) {
    if (p.split == Split::kTrain) train.push_back(&p);
    if (p.split == Split::kTest) test.push_back(&p);
  }
  if (train.empty()) throw DataError("audit: train split is empty");
  if (test.empty()) throw DataError("audit: test split is empty");

  AuditReport report;

  // Majority baseline: the most frequent train label, applied to test.
  std::array<size_t, 3> train_counts = {0, 0, 0};
  for (const NLIPair* p : train) ++train_counts[label_index(p->label)];
  size_t majority = 0;
  for (size_t l = 1; l < kLabels.size(); ++l) {
    if (train_counts[l] > train_counts[majority]) majority = l;
  }
  report.majority_label = kLabels[majority];
  size_t hits = 0;
  for (const NLIPair* p : test) {
    if (p->label == report.majority_label) ++hits;
  }
  report.majority_accuracy =
      static_cast<double>(hits) / static_cast<double>(test.size());

  report.hypothesis_only = run_probe(train, test, /*hypothesis_side=*/true);
  report.premise_only = run_probe(train, test, /*hypothesis_side=*/false);

  // PMI over hypothesis tokens, whole dataset: log2 of observed-vs-expected
  // co-occurrence of token presence and label.
  std::map<std::string, std::array<size_t, 3>> token_label;
  std::array<size_t, 3> label_rows = {0, 0, 0};
  for (const NLIPair& p : pairs) {
    size_t l = label_index(p.label);
    ++label_rows[l];
    for (const std::string& t : features_of(p.hypothesis)) {
      auto [it, fresh] =
          token_label.emplace(t, std::array<size_t, 3>{0, 0, 0});
      (void)fresh;
      ++it->second[l];
    }
  }
  double n = static_cast<double>(pairs.size());
  for (const auto& [token, counts] : token_label) {
    size_t total = counts[0] + counts[1] + counts[2];
    if (total < min_count) continue;
    for (size_t l = 0; l < kLabels.size(); ++l) {
      if (counts[l] == 0 || label_rows[l] == 0) continue;
      double pmi = std::log2((static_cast<double>(counts[l]) * n) /
                             (static_cast<double>(total) *
                              static_cast<double>(label_rows[l])));
      report.top_associations.push_back(
          PmiEntry{token, kLabels[l], pmi, total});
    }
  }
  std::sort(report.top_associations.begin(), report.top_associations.end(),
            [](const PmiEntry& a, const PmiEntry& b) {
              if (a.pmi != b.pmi) return a.pmi > b.pmi;
              if (a.count != b.count) return a.count > b.count;
              if (a.token != b.token) return a.token < b.token;
              return label_index(a.label) < label_index(b.label);
            });
  if (report.top_associations.size() > top_k) {
    report.top_associations.resize(top_k);
  }
  return report;
}

std::string format_audit(const AuditReport& report) {
  std::ostringstream os;
  char buf[32];
  auto pct = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.1f%%", 100.0 * v);
    return std::string(buf);
  };
  os << "rows: train " << report.hypothesis_only.train_rows << ", test "
     << report.hypothesis_only.test_rows << "\n";
  os << "majority baseline: " << to_string(report.majority_label) << " -> "
     << pct(report.majority_accuracy) << "\n";
  os << "hypothesis-only probe: " << pct(report.hypothesis_only.accuracy)
     << " (" << report.hypothesis_only.feature_count << " features)\n";
  os << "premise-only probe: " << pct(report.premise_only.accuracy) << " ("
     << report.premise_only.feature_count << " features)\n";
  os << "top hypothesis token/label associations (PMI):\n";
  for (const PmiEntry& e : report.top_associations) {
    std::snprintf(buf, sizeof(buf), "%.3f", e.pmi);
    os << "  " << e.token << "\t" << to_string(e.label) << "\t" << buf
       << "\t(rows " << e.count << ")\n";
  }
  return os.str();
}

}  // namespace semfrag
