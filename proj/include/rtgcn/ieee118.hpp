// Copyright 2026 The Resilient TGCN Authors
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

#ifndef RTGCN_IEEE118_HPP_
#define RTGCN_IEEE118_HPP_

#include <vector>

#include "rtgcn/datagen.hpp"

namespace rtgcn {

struct BranchRecord {
  int from_bus;  // 1-based, as published
  int to_bus;
  double reactance;  // per unit
};

// The 186 published branches (7 bus pairs carry two circuits).
const std::vector<BranchRecord>& ieee118_branches();

// 118 buses, 179 unique lines with summed 1/x susceptances, slack at index
// 68 (bus 69), and the bundled layout coordinates.
PowerNetwork ieee118_network();

// Seed, iteration count and extent that produced the bundled layout.
inline constexpr std::uint64_t kIeee118LayoutSeed = 118;
inline constexpr int kIeee118LayoutIterations = 500;
inline constexpr double kIeee118LayoutExtent = 1000.0;

}  // namespace rtgcn

#endif  // RTGCN_IEEE118_HPP_
