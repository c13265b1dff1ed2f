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

#ifndef TAT_UTF8_H_
#define TAT_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tat::utf8 {

bool is_valid(std::string_view s);

// Byte length of the code point starting with lead byte `c`, or 0 for a
// byte that cannot start a code point.
size_t sequence_length(unsigned char c);

// Number of code points. `s` must be valid UTF-8.
size_t length(std::string_view s);

// Byte offset of every code point boundary, including 0 and s.size().
std::vector<size_t> boundaries(std::string_view s);

std::vector<std::string> split_chars(std::string_view s);

char32_t decode(std::string_view s, size_t* pos);
void append(char32_t cp, std::string* out);
std::string encode(char32_t cp);

}  // namespace tat::utf8

#endif  // TAT_UTF8_H_
