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
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "git/object_id.hpp"
#include "git/object_store.hpp"

namespace stmine::git {

struct CommitMeta {
  ObjectId sha;
  ObjectId tree;
  std::string author_name;
  std::string author_email;
  std::int64_t author_time = 0;  // epoch seconds, UTC
  int tz_offset = 0;             // minutes east of UTC
  std::vector<ObjectId> parent_shas;
  std::string message;

  bool is_root() const noexcept { return parent_shas.empty(); }
};

/// A commit paired with the parent it is diffed against. An absent parent is
/// the empty tree (root commits).
struct CommitPair {
  std::shared_ptr<const CommitMeta> current;
  std::shared_ptr<const CommitMeta> parent;

  bool parent_is_empty_tree() const noexcept { return parent == nullptr; }
};

struct TreeEntry {
  std::uint32_t mode = 0;
  std::string name;
  ObjectId id;

  bool is_tree() const noexcept { return (mode & 0170000) == 0040000; }
  bool is_gitlink() const noexcept { return (mode & 0170000) == 0160000; }
  bool is_regular() const noexcept { return (mode & 0170000) == 0100000; }
};

struct Branch {
  std::string name;
  ObjectId tip;

  friend bool operator==(const Branch&, const Branch&) = default;
};

/// Selects every local branch.
struct AllBranches {};
using BranchSelector = std::variant<AllBranches, std::vector<std::string>>;

struct WalkOptions {
  /// Also pair merge commits with their second and later parents.
  bool all_parents = false;
};

/// Read-only handle over an on-disk repository (bare or with a work tree).
/// Every method is const and safe to call from several threads.
class Repository {
 public:
  /// Throws NotARepository when `path` holds no object database.
  static std::shared_ptr<const Repository> open(const std::filesystem::path& path);

  const std::filesystem::path& git_dir() const noexcept { return git_dir_; }
  const ObjectStore& objects() const noexcept { return *objects_; }

  std::vector<Branch> local_branches() const;
  /// Lexicographic by name; throws UnknownBranch naming every missing branch.
  std::vector<Branch> resolve_branches(const BranchSelector& selector) const;

  std::shared_ptr<const CommitMeta> commit(const ObjectId& id) const;
  std::vector<TreeEntry> tree(const ObjectId& id) const;
  std::string blob(const ObjectId& id) const;

  /// Looks up a slash-separated path inside a tree.
  std::optional<TreeEntry> find_path(const ObjectId& root_tree, std::string_view path) const;

  /// Every non-tree, non-submodule entry below `root_tree`, keyed by full
  /// path, sorted bytewise.
  std::vector<std::pair<std::string, TreeEntry>> list_files(const ObjectId& root_tree) const;

  /// First-parent walk from each tip with a shared visited set.
  std::vector<CommitPair> walk_commit_pairs(const std::vector<Branch>& branches,
                                            const WalkOptions& options = {}) const;

 private:
  explicit Repository(std::filesystem::path git_dir);

  std::filesystem::path git_dir_;
  std::unique_ptr<ObjectStore> objects_;
};

using RepositoryPtr = std::shared_ptr<const Repository>;

CommitMeta parse_commit(const ObjectId& id, std::string_view data);
std::vector<TreeEntry> parse_tree(std::string_view data);

}  // namespace stmine::git
