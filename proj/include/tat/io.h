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

#ifndef TAT_IO_H_
#define TAT_IO_H_

#include <string>
#include <string_view>
#include <vector>

namespace tat {

// Reads a whole file; throws Error(kIo) when it cannot be opened.
std::string read_file(const std::string& path);

// Splits on '\n', dropping a trailing '\r' from each line. A final empty
// line caused by a terminating newline is not reported.
std::vector<std::string> split_lines(std::string_view content);

// Writes to `path.tmp.<pid>` and renames over `path`, so readers never
// observe a partially written file.
void atomic_write(const std::string& path, std::string_view content);

// Shortest decimal form that round-trips to the same double/float.
std::string format_double(double v);
std::string format_float(float v);

}  // namespace tat

#endif  // TAT_IO_H_
