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

#ifndef QCCD_RANDOM_HPP
#define QCCD_RANDOM_HPP

#include <cstdint>
#include <random>
#include <string_view>

#include "qccd/linalg.hpp"

namespace qccd {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/**
 * Per-task seed derivation. Every random stream in the toolkit is
 * derive_seed(root, tag, index) for a fixed string tag.
 */
std::uint64_t derive_seed(std::uint64_t root, std::string_view tag, std::uint64_t index = 0);

/** Haar-random d x d unitary (QR of a complex Ginibre matrix, R diagonal made positive). */
MatX haar_unitary(std::size_t d, Rng &rng);

/** Haar-random element of SU(2)/SU(4), deterministic per seed. */
Mat2 haar_su2(std::uint64_t seed);
Mat4 haar_su4(std::uint64_t seed);

}  // namespace qccd

#endif
