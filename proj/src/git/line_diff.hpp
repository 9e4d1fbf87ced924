/*
 * Copyright (c) 2026 The stmine Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace stmine::git {

/// A changed region in unified-diff numbering: 1-based starts, and for an
/// empty side the start is the line after which the change sits.
struct Hunk {
  std::uint32_t old_start = 0;
  std::uint32_t old_len = 0;
  std::uint32_t new_start = 0;
  std::uint32_t new_len = 0;

  friend bool operator==(const Hunk&, const Hunk&) = default;
};

/// Splits text into lines, each keeping its terminating '\n' (the last line
/// may lack one).
std::vector<std::string_view> split_lines(std::string_view text);

/// Git's binary heuristic: a NUL byte among the first 8000 bytes.
bool looks_binary(std::string_view content);

/// Minimal line edit script between two sequences.
class LineDiff {
 public:
  LineDiff(std::span<const std::string_view> old_lines, std::span<const std::string_view> new_lines);

  std::vector<Hunk> hunks() const;
  /// For each new line, the 0-based old line it was carried over from, or -1
  /// when the line was introduced by the change.
  std::vector<std::int64_t> new_to_old() const;

 private:
  void compare(std::size_t a_lo, std::size_t a_hi, std::size_t b_lo, std::size_t b_hi);
  bool bisect(std::size_t a_lo, std::size_t a_hi, std::size_t b_lo, std::size_t b_hi);

  std::vector<std::uint32_t> a_;
  std::vector<std::uint32_t> b_;
  std::vector<bool> a_changed_;
  std::vector<bool> b_changed_;
};

std::vector<Hunk> diff_hunks(std::string_view old_text, std::string_view new_text);

}  // namespace stmine::git
