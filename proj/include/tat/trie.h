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

#ifndef TAT_TRIE_H_
#define TAT_TRIE_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace tat {

// Byte-level prefix tree mapping token strings to ids.
class Trie {
 public:
  Trie();

  // Returns false (and keeps the existing value) if `key` is already present.
  bool insert(std::string_view key, int32_t value);
  std::optional<int32_t> find(std::string_view key) const;
  size_t size() const { return size_; }

  // Calls fn(byte_length, value) for every stored key that is a prefix of
  // `text`, shortest first.
  template <typename Fn>
  void for_each_prefix(std::string_view text, Fn&& fn) const {
    int32_t node = 0;
    for (size_t i = 0; i < text.size(); ++i) {
      node = child(node, static_cast<unsigned char>(text[i]));
      if (node < 0) return;
      if (nodes_[node].value >= 0) fn(i + 1, nodes_[node].value);
    }
  }

 private:
  struct Node {
    std::vector<std::pair<unsigned char, int32_t>> children;  // sorted
    int32_t value = -1;
  };

  int32_t child(int32_t node, unsigned char c) const;

  std::vector<Node> nodes_;
  size_t size_ = 0;
};

}  // namespace tat

#endif  // TAT_TRIE_H_
