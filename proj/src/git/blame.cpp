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


#include "git/blame.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace stmine::git {

namespace {

struct Pending {
  std::uint32_t final_line;  // 0-based index in the blamed revision
  std::int64_t current_line;  // 0-based index in the revision being examined
};

// Locates the path the file had in `parent` when it is absent there under
// its current name.
std::optional<std::string> renamed_from(const Repository& repo, const CommitMeta& child, const CommitMeta& parent,
                                        const std::string& path, const DiffOptions& options) {
  DiffOptions rename_only = options;
  rename_only.with_hunks = false;
  rename_only.detect_renames = true;
  for (const auto& fc : diff_trees(repo, parent.tree, child.tree, rename_only))
    if (fc.kind == ChangeKind::Rename && fc.new_path == path) return fc.old_path;
  return std::nullopt;
}

}  // namespace

std::vector<LineAttribution> blame_file(const Repository& repo, const ObjectId& commit, std::string_view path,
                                        const DiffOptions& options) {
  auto meta = repo.commit(commit);
  auto entry = repo.find_path(meta->tree, path);
  if (!entry || entry->is_tree() || entry->is_gitlink())
    fail(ErrorCode::FileNotInTree, std::string(path) + " not in tree of " + commit.hex());

  std::string content = repo.blob(entry->id);
  auto lines = split_lines(content);
  std::vector<LineAttribution> out(lines.size());
  std::vector<Pending> pending(lines.size());
  for (std::uint32_t i = 0; i < lines.size(); ++i) {
    out[i].line_no = i + 1;
    pending[i] = Pending{i, i};
  }

  std::string current_path(path);
  ObjectId current_blob = entry->id;
  auto attribute = [&](const CommitMeta& who, const Pending& p) {
    out[p.final_line].introducing_sha = who.sha;
    out[p.final_line].author_email = who.author_email;
    out[p.final_line].author_name = who.author_name;
  };

  while (!pending.empty()) {
    if (meta->is_root()) {
      for (const auto& p : pending) attribute(*meta, p);
      break;
    }
    auto parent = repo.commit(meta->parent_shas.front());
    auto parent_entry = repo.find_path(parent->tree, current_path);
    std::string parent_path = current_path;
    if (!parent_entry || parent_entry->is_tree() || parent_entry->is_gitlink()) {
      parent_entry.reset();
      if (auto origin = renamed_from(repo, *meta, *parent, current_path, options)) {
        parent_entry = repo.find_path(parent->tree, *origin);
        parent_path = *origin;
      }
    }
    if (!parent_entry) {
      for (const auto& p : pending) attribute(*meta, p);
      break;
    }
    if (parent_entry->id != current_blob) {
      std::string old_text = repo.blob(parent_entry->id);
      std::string new_text = repo.blob(current_blob);
      auto old_lines = split_lines(old_text);
      auto new_lines = split_lines(new_text);
      auto carried = LineDiff(old_lines, new_lines).new_to_old();
      std::vector<Pending> still;
      still.reserve(pending.size());
      for (const auto& p : pending) {
        auto from = carried[static_cast<std::size_t>(p.current_line)];
        if (from < 0) attribute(*meta, p);
        else still.push_back(Pending{p.final_line, from});
      }
      pending = std::move(still);
    }
    meta = parent;
    current_path = parent_path;
    current_blob = parent_entry->id;
  }
  return out;
}

}  // namespace stmine::git
