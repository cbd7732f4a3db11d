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

#ifndef RTGCN_CHECKPOINT_HPP_
#define RTGCN_CHECKPOINT_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rtgcn/autodiff.hpp"

namespace rtgcn {

// Named parameter matrices plus provenance. Stored as two text files:
//   <prefix>.manifest  "key value" metadata lines, then one
//                      "param <name> <rows> <cols>" line per matrix
//   <prefix>.params    the matrices in manifest order, one row per line
struct Checkpoint {
  std::uint64_t seed = 0;
  long step_count = 0;
  std::map<std::string, std::string> meta;
  std::vector<std::pair<std::string, Matrix>> tensors;
};

Checkpoint make_checkpoint(const std::vector<Parameter*>& params, std::uint64_t seed,
                           long step_count);
// Copies matrices into `params` by name; throws InputError on missing
// names or shape mismatches.
void restore_checkpoint(const Checkpoint& ckpt, const std::vector<Parameter*>& params);

void save_checkpoint(const std::filesystem::path& prefix, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& prefix);
bool checkpoint_exists(const std::filesystem::path& prefix);

}  // namespace rtgcn

#endif  // RTGCN_CHECKPOINT_HPP_
