// Copyright 2026 The Duelbias Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "duelbias/bootstrap.h"

#include <algorithm>
#include <string>

namespace duelbias {

Interval BootstrapDistribution::Summarize(std::size_t k,
                                          double confidence) const {
  if (k >= point.size()) throw DomainError("bootstrap coordinate out of range");
  std::vector<double> values;
  values.reserve(draws.size());
  for (const std::vector<double>& draw : draws) {
    if (!draw.empty()) values.push_back(draw[k]);
  }
  if (values.empty()) throw NumericalError("no usable bootstrap replicates");
  const double tail = 0.5 * (1.0 - confidence);
  Interval out;
  out.point = point[k];
  out.low = Quantile(values, tail);
  out.high = Quantile(values, 1.0 - tail);
  return out;
}

namespace bootstrap_internal {

void CheckOptions(const BootstrapOptions& options) {
  if (options.replicates < 100) {
    throw DomainError("bootstrap needs at least 100 replicates");
  }
  if (!(options.confidence > 0.0 && options.confidence < 1.0)) {
    throw DomainError("confidence level must lie in (0, 1)");
  }
}

void CheckDiscards(const BootstrapDistribution& dist,
                   const BootstrapOptions& options) {
  const double fraction =
      static_cast<double>(dist.discarded) / static_cast<double>(dist.draws.size());
  if (fraction > options.max_discard_fraction) {
    throw NumericalError("unstable bootstrap: " +
                         std::to_string(dist.discarded) + " of " +
                         std::to_string(dist.draws.size()) +
                         " replicates failed");
  }
}

}  // namespace bootstrap_internal
}  // namespace duelbias
