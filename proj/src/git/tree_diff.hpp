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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "git/line_diff.hpp"
#include "git/repository.hpp"

namespace stmine::git {

enum class ChangeKind { Add, Modify, Delete, Rename };

const char* to_string(ChangeKind kind) noexcept;

/// One file-level change between a commit and its parent. `old_path` is
/// empty for ADD, `new_path` is empty for DELETE.
struct FileChange {
  ChangeKind kind = ChangeKind::Modify;
  std::string old_path;
  std::string new_path;
  ObjectId old_id;
  ObjectId new_id;
  std::uint32_t old_mode = 0;
  std::uint32_t new_mode = 0;
  bool binary = false;  // only computed together with hunks
  int similarity = 0;  // percent, renames only
  std::vector<Hunk> hunks;

  /// The path this change is counted under: new path unless deleted.
  const std::string& path() const noexcept { return kind == ChangeKind::Delete ? old_path : new_path; }
};

struct DiffOptions {
  bool detect_renames = true;
  int rename_threshold = 50;  // percent, 0-100
  bool with_hunks = true;
  /// Inexact rename detection is skipped when sources x destinations exceeds
  /// the square of this limit.
  int rename_limit = 1000;
};

/// Tree delta between `pair.parent` (or the empty tree) and `pair.current`.
std::vector<FileChange> compute_diff(const Repository& repo, const CommitPair& pair, const DiffOptions& options = {});

std::vector<FileChange> diff_trees(const Repository& repo, const std::optional<ObjectId>& old_tree,
                                   const ObjectId& new_tree, const DiffOptions& options = {});

/// Git's content similarity estimate on a 0-60000 scale. Returns 0 early
/// when the size difference alone rules out reaching `minimum_score`.
int similarity_score(std::string_view src, std::string_view dst, int minimum_score = 0);

inline constexpr int kMaxSimilarityScore = 60000;

}  // namespace stmine::git
