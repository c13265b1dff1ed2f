// Copyright 2026 The TAT Authors
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

#include "tat/trie.h"

#include <algorithm>

namespace tat {

Trie::Trie() : nodes_(1) {}

int32_t Trie::child(int32_t node, unsigned char c) const {
  const auto& kids = nodes_[node].children;
  auto it = std::lower_bound(kids.begin(), kids.end(), c,
                             [](const auto& p, unsigned char v) { return p.first < v; });
  if (it == kids.end() || it->first != c) return -1;
  return it->second;
}

bool Trie::insert(std::string_view key, int32_t value) {
  int32_t node = 0;
  for (unsigned char c : key) {
    int32_t next = child(node, c);
    if (next < 0) {
      next = static_cast<int32_t>(nodes_.size());
      nodes_.emplace_back();
      auto& kids = nodes_[node].children;
      auto it = std::lower_bound(kids.begin(), kids.end(), c,
                                 [](const auto& p, unsigned char v) { return p.first < v; });
      kids.insert(it, {c, next});
    }
    node = next;
  }
  if (nodes_[node].value >= 0) return false;
  nodes_[node].value = value;
  ++size_;
  return true;
}

std::optional<int32_t> Trie::find(std::string_view key) const {
  int32_t node = 0;
  for (unsigned char c : key) {
    node = child(node, c);
    if (node < 0) return std::nullopt;
  }
  if (nodes_[node].value < 0) return std::nullopt;
  return nodes_[node].value;
}

}  // namespace tat
