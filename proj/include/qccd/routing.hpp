// Copyright 2026 The QCCD Toolkit Authors
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

#ifndef QCCD_ROUTING_HPP
#define QCCD_ROUTING_HPP

#include <cstddef>
#include <vector>

namespace qccd {

/** One parallel round of adjacent transpositions; `positions` holds i for each swap (i, i+1). */
struct SwapRound {
  int parity = 0;
  std::vector<std::size_t> positions;

  bool operator==(const SwapRound &) const = default;
};

/**
 * Odd-even transposition sort from `current` to `target`. Round r of the
 * underlying sort compares positions of parity r mod 2, starting with even;
 * rounds without swaps are omitted. At most N rounds are returned.
 */
std::vector<SwapRound> route_permutation(const std::vector<std::size_t> &current,
                                         const std::vector<std::size_t> &target);

std::vector<std::size_t> apply_rounds(std::vector<std::size_t> order, const std::vector<SwapRound> &rounds);

std::size_t count_transpositions(const std::vector<SwapRound> &rounds);

}  // namespace qccd

#endif
