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

#include "rtgcn/util.hpp"

#include <atomic>
#include <charconv>
#include <iostream>
#include <mutex>
#include <cmath>
#include <cstring>
#include <sstream>

namespace rtgcn {

std::string shape_string(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t hash_matrix(const Matrix& m) {
  std::uint64_t h = fnv1a(shape_string(m));
  // Column-major traversal; the bit pattern of each entry is hashed.
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      double v = m(r, c);
      char buf[sizeof(double)];
      std::memcpy(buf, &v, sizeof(double));
      h = fnv1a(std::string_view(buf, sizeof(double)), h);
    }
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view key) {
  std::uint64_t z = fnv1a(key) ^ (master + 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

namespace {
std::atomic<bool> g_warnings{true};
std::mutex g_log_mutex;
}  // namespace

void set_warnings_enabled(bool on) { g_warnings = on; }

void log_warning(const std::string& message) {
  if (!g_warnings) return;
  std::lock_guard lock(g_log_mutex);
  std::cerr << "warning: " << message << "\n";
}

}  // namespace rtgcn
