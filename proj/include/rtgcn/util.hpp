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

#ifndef RTGCN_UTIL_HPP_
#define RTGCN_UTIL_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace rtgcn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Malformed or inconsistent user input (files, arguments, specs).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Incompatible matrix shapes handed to a numeric routine.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Training produced a non-finite loss or activation.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string shape_string(const Matrix& m);

// 64-bit FNV-1a. Stable across platforms, used for ids, seeds and
// provenance hashes.
std::uint64_t fnv1a(std::string_view bytes,
                    std::uint64_t seed = 0xcbf29ce484222325ULL);
std::uint64_t hash_matrix(const Matrix& m);
std::string hex64(std::uint64_t v);

// Mixes a master seed with a textual key (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t master, std::string_view key);

// Shortest round-trippable decimal representation of a double.
std::string format_double(double v);

std::vector<std::string> split_ws(std::string_view line);
std::string_view trim(std::string_view s);

bool all_finite(const Matrix& m);

// Diagnostics go to stderr unless silenced (tests silence them).
void log_warning(const std::string& message);
void set_warnings_enabled(bool on);

}  // namespace rtgcn

#endif  // RTGCN_UTIL_HPP_
