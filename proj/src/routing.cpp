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

#include "qccd/routing.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace qccd {

std::vector<SwapRound> route_permutation(const std::vector<std::size_t> &current,
                                         const std::vector<std::size_t> &target) {
  std::size_t n = current.size();
  if (target.size() != n) {
    throw std::invalid_argument("route_permutation: orderings have different lengths");
  }
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < n; i++) {
    if (!pos.emplace(target[i], i).second) {
      throw std::invalid_argument("route_permutation: target has repeated elements");
    }
  }
  std::vector<std::size_t> keys(n);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; i++) {
    auto it = pos.find(current[i]);
    if (it == pos.end() || seen[it->second]) {
      throw std::invalid_argument("route_permutation: orderings are not permutations of the same set");
    }
    seen[it->second] = true;
    keys[i] = it->second;
  }
  std::vector<SwapRound> rounds;
  for (std::size_t r = 0; r < n; r++) {
    if (std::is_sorted(keys.begin(), keys.end())) {
      break;
    }
    SwapRound round;
    round.parity = static_cast<int>(r % 2);
    for (std::size_t i = r % 2; i + 1 < n; i += 2) {
      if (keys[i] > keys[i + 1]) {
        std::swap(keys[i], keys[i + 1]);
        round.positions.push_back(i);
      }
    }
    if (!round.positions.empty()) {
      rounds.push_back(round);
    }
  }
  return rounds;
}

std::vector<std::size_t> apply_rounds(std::vector<std::size_t> order, const std::vector<SwapRound> &rounds) {
  for (const auto &r : rounds) {
    for (std::size_t i : r.positions) {
      if (i + 1 >= order.size()) {
        throw std::out_of_range("apply_rounds: swap position out of range");
      }
      std::swap(order[i], order[i + 1]);
    }
  }
  return order;
}

std::size_t count_transpositions(const std::vector<SwapRound> &rounds) {
  std::size_t n = 0;
  for (const auto &r : rounds) {
    n += r.positions.size();
  }
  return n;
}

}  // namespace qccd
