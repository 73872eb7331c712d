// Copyright 2026 The autoscale Authors
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

#ifndef AUTOSCALE_ARCHIVE_HPP
#define AUTOSCALE_ARCHIVE_HPP

#include <autoscale/domain.hpp>

#include <cstddef>
#include <unordered_map>
#include <vector>

namespace autoscale {

/// A decision with its predicted objective vector (aligned with the
/// region's objectives) and the number of requirements it breaks.
struct ScoredDecision {
  Decision decision;
  std::vector<double> objective_values;
  std::size_t violation_count = 0;
};

/// Deduplicated set of every decision an optimizer produced.
class DecisionArchive {
 public:
  /// Returns false when the decision is already present.
  bool insert(ScoredDecision entry);
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<ScoredDecision>& entries() const { return entries_; }
  bool contains(const Decision& d) const { return index_.count(d) != 0; }

 private:
  std::vector<ScoredDecision> entries_;
  std::unordered_map<Decision, std::size_t, DecisionHash> index_;
};

}  // namespace autoscale

#endif  // AUTOSCALE_ARCHIVE_HPP
