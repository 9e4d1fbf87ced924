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


#include "git/line_diff.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace stmine::git {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, eol - pos + 1));
    pos = eol + 1;
  }
  return lines;
}

bool looks_binary(std::string_view content) {
  return content.substr(0, 8000).find('\0') != std::string_view::npos;
}

LineDiff::LineDiff(std::span<const std::string_view> old_lines, std::span<const std::string_view> new_lines) {
  std::unordered_map<std::string_view, std::uint32_t> ids;
  auto intern = [&](std::string_view line) {
    return ids.try_emplace(line, static_cast<std::uint32_t>(ids.size())).first->second;
  };
  a_.reserve(old_lines.size());
  b_.reserve(new_lines.size());
  for (auto l : old_lines) a_.push_back(intern(l));
  for (auto l : new_lines) b_.push_back(intern(l));
  a_changed_.assign(a_.size(), false);
  b_changed_.assign(b_.size(), false);
  compare(0, a_.size(), 0, b_.size());
}

void LineDiff::compare(std::size_t a_lo, std::size_t a_hi, std::size_t b_lo, std::size_t b_hi) {
  while (a_lo < a_hi && b_lo < b_hi && a_[a_lo] == b_[b_lo]) ++a_lo, ++b_lo;
  while (a_lo < a_hi && b_lo < b_hi && a_[a_hi - 1] == b_[b_hi - 1]) --a_hi, --b_hi;
  if (a_lo == a_hi) {
    for (auto j = b_lo; j < b_hi; ++j) b_changed_[j] = true;
    return;
  }
  if (b_lo == b_hi) {
    for (auto i = a_lo; i < a_hi; ++i) a_changed_[i] = true;
    return;
  }
  if (!bisect(a_lo, a_hi, b_lo, b_hi)) {
    for (auto i = a_lo; i < a_hi; ++i) a_changed_[i] = true;
    for (auto j = b_lo; j < b_hi; ++j) b_changed_[j] = true;
  }
}

// Finds the middle snake of the shortest edit script and recurses on both
// halves. Returns false when the ranges share no line at all.
bool LineDiff::bisect(std::size_t a_lo, std::size_t a_hi, std::size_t b_lo, std::size_t b_hi) {
  const auto n = static_cast<std::int64_t>(a_hi - a_lo);
  const auto m = static_cast<std::int64_t>(b_hi - b_lo);
  const std::int64_t max_d = (n + m + 1) / 2;
  const std::int64_t offset = max_d;
  const std::int64_t length = 2 * max_d + 2;
  std::vector<std::int64_t> fwd(length, -1), rev(length, -1);
  fwd[offset + 1] = 0;
  rev[offset + 1] = 0;
  const std::int64_t delta = n - m;
  const bool front = (delta % 2) != 0;
  std::int64_t k1_start = 0, k1_end = 0, k2_start = 0, k2_end = 0;
  const auto* a = a_.data() + a_lo;
  const auto* b = b_.data() + b_lo;

  auto split = [&](std::int64_t x, std::int64_t y) {
    compare(a_lo, a_lo + x, b_lo, b_lo + y);
    compare(a_lo + x, a_hi, b_lo + y, b_hi);
    return true;
  };

  for (std::int64_t d = 0; d < max_d; ++d) {
    for (std::int64_t k1 = -d + k1_start; k1 <= d - k1_end; k1 += 2) {
      const std::int64_t k1_off = offset + k1;
      std::int64_t x1 = (k1 == -d || (k1 != d && fwd[k1_off - 1] < fwd[k1_off + 1])) ? fwd[k1_off + 1]
                                                                                     : fwd[k1_off - 1] + 1;
      std::int64_t y1 = x1 - k1;
      while (x1 < n && y1 < m && a[x1] == b[y1]) ++x1, ++y1;
      fwd[k1_off] = x1;
      if (x1 > n) {
        k1_end += 2;
      } else if (y1 > m) {
        k1_start += 2;
      } else if (front) {
        const std::int64_t k2_off = offset + delta - k1;
        if (k2_off >= 0 && k2_off < length && rev[k2_off] != -1) {
          if (x1 >= n - rev[k2_off]) return split(x1, y1);
        }
      }
    }
    for (std::int64_t k2 = -d + k2_start; k2 <= d - k2_end; k2 += 2) {
      const std::int64_t k2_off = offset + k2;
      std::int64_t x2 = (k2 == -d || (k2 != d && rev[k2_off - 1] < rev[k2_off + 1])) ? rev[k2_off + 1]
                                                                                     : rev[k2_off - 1] + 1;
      std::int64_t y2 = x2 - k2;
      while (x2 < n && y2 < m && a[n - x2 - 1] == b[m - y2 - 1]) ++x2, ++y2;
      rev[k2_off] = x2;
      if (x2 > n) {
        k2_end += 2;
      } else if (y2 > m) {
        k2_start += 2;
      } else if (!front) {
        const std::int64_t k1_off = offset + delta - k2;
        if (k1_off >= 0 && k1_off < length && fwd[k1_off] != -1) {
          const std::int64_t x1 = fwd[k1_off];
          const std::int64_t y1 = offset + x1 - k1_off;
          if (x1 >= n - x2) return split(x1, y1);
        }
      }
    }
  }
  return false;
}

std::vector<Hunk> LineDiff::hunks() const {
  std::vector<Hunk> out;
  std::size_t i = 0, j = 0;
  const std::size_t n = a_.size(), m = b_.size();
  while (i < n || j < m) {
    if (i < n && j < m && !a_changed_[i] && !b_changed_[j]) {
      ++i, ++j;
      continue;
    }
    std::size_t si = i, sj = j;
    while (i < n && a_changed_[i]) ++i;
    while (j < m && b_changed_[j]) ++j;
    Hunk h;
    h.old_len = static_cast<std::uint32_t>(i - si);
    h.new_len = static_cast<std::uint32_t>(j - sj);
    h.old_start = static_cast<std::uint32_t>(h.old_len ? si + 1 : si);
    h.new_start = static_cast<std::uint32_t>(h.new_len ? sj + 1 : sj);
    out.push_back(h);
  }
  return out;
}

std::vector<std::int64_t> LineDiff::new_to_old() const {
  std::vector<std::int64_t> map(b_.size(), -1);
  std::size_t i = 0;
  for (std::size_t j = 0; j < b_.size(); ++j) {
    if (b_changed_[j]) continue;
    while (i < a_.size() && a_changed_[i]) ++i;
    map[j] = static_cast<std::int64_t>(i++);
  }
  return map;
}

std::vector<Hunk> diff_hunks(std::string_view old_text, std::string_view new_text) {
  auto a = split_lines(old_text);
  auto b = split_lines(new_text);
  return LineDiff(a, b).hunks();
}

}  // namespace stmine::git
