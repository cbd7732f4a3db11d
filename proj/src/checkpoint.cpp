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

#include "rtgcn/checkpoint.hpp"

#include <fstream>
#include <sstream>

namespace rtgcn {

namespace {

std::filesystem::path with_suffix(const std::filesystem::path& prefix, const char* suffix) {
  return std::filesystem::path(prefix.string() + suffix);
}

}  // namespace

Checkpoint make_checkpoint(const std::vector<Parameter*>& params, std::uint64_t seed,
                           long step_count) {
  Checkpoint c;
  c.seed = seed;
  c.step_count = step_count;
  for (const Parameter* p : params) c.tensors.emplace_back(p->name, p->value);
  return c;
}

void restore_checkpoint(const Checkpoint& ckpt, const std::vector<Parameter*>& params) {
  std::map<std::string, const Matrix*> by_name;
  for (const auto& [name, m] : ckpt.tensors) by_name[name] = &m;
  for (Parameter* p : params) {
    auto it = by_name.find(p->name);
    if (it == by_name.end()) throw InputError("checkpoint lacks parameter '" + p->name + "'");
    if (it->second->rows() != p->value.rows() || it->second->cols() != p->value.cols()) {
      throw InputError("checkpoint parameter '" + p->name + "' has shape " +
                       shape_string(*it->second) + ", model expects " + shape_string(p->value));
    }
    p->value = *it->second;
    p->zero_grad();
  }
}

bool checkpoint_exists(const std::filesystem::path& prefix) {
  return std::filesystem::exists(with_suffix(prefix, ".manifest")) &&
         std::filesystem::exists(with_suffix(prefix, ".params"));
}

void save_checkpoint(const std::filesystem::path& prefix, const Checkpoint& ckpt) {
  std::ofstream man(with_suffix(prefix, ".manifest"));
  std::ofstream dat(with_suffix(prefix, ".params"));
  if (!man || !dat) throw InputError("cannot write checkpoint " + prefix.string());
  man << "# rtgcn checkpoint\n";
  man << "seed " << ckpt.seed << "\n";
  man << "step_count " << ckpt.step_count << "\n";
  for (const auto& [k, v] : ckpt.meta) man << "meta " << k << " " << v << "\n";
  for (const auto& [name, m] : ckpt.tensors) {
    man << "param " << name << " " << m.rows() << " " << m.cols() << "\n";
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        dat << (c ? " " : "") << format_double(m(r, c));
      }
      dat << "\n";
    }
  }
}

Checkpoint load_checkpoint(const std::filesystem::path& prefix) {
  std::ifstream man(with_suffix(prefix, ".manifest"));
  std::ifstream dat(with_suffix(prefix, ".params"));
  if (!man || !dat) throw InputError("cannot open checkpoint " + prefix.string());
  Checkpoint c;
  std::string line;
  while (std::getline(man, line)) {
    auto tok = split_ws(line);
    if (tok.empty() || tok[0].front() == '#') continue;
    if (tok[0] == "seed" && tok.size() == 2) {
      c.seed = std::stoull(tok[1]);
    } else if (tok[0] == "step_count" && tok.size() == 2) {
      c.step_count = std::stol(tok[1]);
    } else if (tok[0] == "meta" && tok.size() >= 3) {
      c.meta[tok[1]] = tok[2];
    } else if (tok[0] == "param" && tok.size() == 4) {
      const long rows = std::stol(tok[2]);
      const long cols = std::stol(tok[3]);
      Matrix m(rows, cols);
      for (long r = 0; r < rows; ++r)
        for (long col = 0; col < cols; ++col) {
          if (!(dat >> m(r, col))) {
            throw InputError("checkpoint data truncated in parameter '" + tok[1] + "'");
          }
        }
      c.tensors.emplace_back(tok[1], std::move(m));
    } else {
      throw InputError("malformed checkpoint manifest line: " + line);
    }
  }
  return c;
}

}  // namespace rtgcn
