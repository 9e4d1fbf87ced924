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


#include "git/repository.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "core/error.hpp"

namespace stmine::git {

namespace fs = std::filesystem;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

bool looks_like_git_dir(const fs::path& dir) {
  std::error_code ec;
  return fs::is_directory(dir / "objects", ec) && fs::exists(dir / "HEAD", ec);
}

void parse_ident(std::string_view line, CommitMeta& meta, const ObjectId& id) {
  auto gt = line.rfind('>');
  auto lt = gt == std::string_view::npos ? gt : line.rfind('<', gt);
  if (gt == std::string_view::npos || lt == std::string_view::npos)
    fail(ErrorCode::CorruptObject, "malformed author line in commit " + id.hex());
  meta.author_name = std::string(trim(line.substr(0, lt)));
  meta.author_email = std::string(line.substr(lt + 1, gt - lt - 1));
  std::istringstream rest{std::string(line.substr(gt + 1))};
  std::int64_t when = 0;
  std::string tz;
  rest >> when >> tz;
  meta.author_time = when;
  if (tz.size() == 5 && (tz[0] == '+' || tz[0] == '-')) {
    int hours = std::stoi(tz.substr(1, 2));
    int minutes = std::stoi(tz.substr(3, 2));
    meta.tz_offset = (tz[0] == '-' ? -1 : 1) * (hours * 60 + minutes);
    meta.tz_offset = std::clamp(meta.tz_offset, -1440, 1440);
  }
}

}  // namespace

CommitMeta parse_commit(const ObjectId& id, std::string_view data) {
  CommitMeta meta;
  meta.sha = id;
  bool have_tree = false;
  bool have_author = false;
  std::size_t pos = 0;
  while (pos < data.size()) {
    auto eol = data.find('\n', pos);
    if (eol == std::string_view::npos) eol = data.size();
    std::string_view line = data.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) {
      meta.message = std::string(pos <= data.size() ? data.substr(pos) : std::string_view{});
      break;
    }
    if (line.starts_with("tree ")) {
      auto tree = ObjectId::from_hex(line.substr(5));
      if (!tree) fail(ErrorCode::CorruptObject, "bad tree id in commit " + id.hex());
      meta.tree = *tree;
      have_tree = true;
    } else if (line.starts_with("parent ")) {
      auto parent = ObjectId::from_hex(line.substr(7));
      if (!parent) fail(ErrorCode::CorruptObject, "bad parent id in commit " + id.hex());
      meta.parent_shas.push_back(*parent);
    } else if (line.starts_with("author ")) {
      parse_ident(line.substr(7), meta, id);
      have_author = true;
    }
  }
  if (!have_tree || !have_author) fail(ErrorCode::CorruptObject, "incomplete commit " + id.hex());
  return meta;
}

std::vector<TreeEntry> parse_tree(std::string_view data) {
  std::vector<TreeEntry> entries;
  std::size_t pos = 0;
  while (pos < data.size()) {
    auto space = data.find(' ', pos);
    auto nul = space == std::string_view::npos ? space : data.find('\0', space);
    if (nul == std::string_view::npos || nul + 1 + ObjectId::kRawSize > data.size())
      fail(ErrorCode::CorruptObject, "malformed tree entry");
    TreeEntry e;
    for (std::size_t i = pos; i < space; ++i) {
      char c = data[i];
      if (c < '0' || c > '7') fail(ErrorCode::CorruptObject, "bad tree mode");
      e.mode = e.mode * 8 + static_cast<std::uint32_t>(c - '0');
    }
    e.name = std::string(data.substr(space + 1, nul - space - 1));
    e.id = ObjectId::from_raw(reinterpret_cast<const std::uint8_t*>(data.data() + nul + 1));
    entries.push_back(std::move(e));
    pos = nul + 1 + ObjectId::kRawSize;
  }
  return entries;
}

Repository::Repository(fs::path git_dir) : git_dir_(std::move(git_dir)) {
  fs::path common = git_dir_;
  std::string commondir = read_text(git_dir_ / "commondir");
  if (auto text = trim(commondir); !text.empty()) {
    fs::path c(text);
    common = c.is_relative() ? git_dir_ / c : c;
  }
  git_dir_ = common;
  objects_ = std::make_unique<ObjectStore>(git_dir_ / "objects");
}

std::shared_ptr<const Repository> Repository::open(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_directory(path, ec)) fail(ErrorCode::NotARepository, "not a directory: " + path.string());
  fs::path dot_git = path / ".git";
  fs::path git_dir;
  if (fs::is_directory(dot_git, ec) && looks_like_git_dir(dot_git)) {
    git_dir = dot_git;
  } else if (fs::is_regular_file(dot_git, ec)) {
    std::string text = read_text(dot_git);
    std::string_view body = trim(text);
    if (!body.starts_with("gitdir:")) fail(ErrorCode::NotARepository, "malformed .git file in " + path.string());
    fs::path target(std::string(trim(body.substr(7))));
    git_dir = target.is_relative() ? path / target : target;
    if (!looks_like_git_dir(git_dir) && !fs::exists(git_dir / "commondir"))
      fail(ErrorCode::NotARepository, "dangling gitdir in " + path.string());
  } else if (looks_like_git_dir(path)) {
    git_dir = path;
  } else {
    fail(ErrorCode::NotARepository, "no git object database at " + path.string());
  }
  auto canonical = fs::canonical(git_dir, ec);
  return std::shared_ptr<const Repository>(new Repository(ec ? git_dir : canonical));
}

std::vector<Branch> Repository::local_branches() const {
  std::map<std::string, ObjectId> refs;
  std::string packed = read_text(git_dir_ / "packed-refs");
  std::istringstream lines(packed);
  for (std::string line; std::getline(lines, line);) {
    if (line.empty() || line[0] == '#' || line[0] == '^') continue;
    auto space = line.find(' ');
    if (space == std::string::npos) continue;
    std::string name = std::string(trim(std::string_view(line).substr(space + 1)));
    if (!name.starts_with("refs/heads/")) continue;
    if (auto id = ObjectId::from_hex(line.substr(0, space))) refs[name.substr(11)] = *id;
  }
  fs::path heads = git_dir_ / "refs" / "heads";
  std::error_code ec;
  if (fs::is_directory(heads, ec)) {
    for (auto it = fs::recursive_directory_iterator(heads, ec); it != fs::recursive_directory_iterator(); it.increment(ec)) {
      if (ec) fail(ErrorCode::Io, "cannot list refs: " + ec.message());
      if (!it->is_regular_file()) continue;
      std::string name = fs::relative(it->path(), heads).generic_string();
      std::string text = read_text(it->path());
      if (auto id = ObjectId::from_hex(trim(text))) refs[name] = *id;
    }
  }
  std::vector<Branch> out;
  for (auto& [name, id] : refs) out.push_back(Branch{name, id});
  return out;
}

std::vector<Branch> Repository::resolve_branches(const BranchSelector& selector) const {
  auto all = local_branches();
  if (std::holds_alternative<AllBranches>(selector)) return all;
  const auto& wanted = std::get<std::vector<std::string>>(selector);
  std::vector<Branch> out;
  std::vector<std::string> missing;
  for (const auto& name : wanted) {
    auto it = std::find_if(all.begin(), all.end(), [&](const Branch& b) { return b.name == name; });
    if (it == all.end()) {
      if (std::find(missing.begin(), missing.end(), name) == missing.end()) missing.push_back(name);
    } else if (std::find(out.begin(), out.end(), *it) == out.end()) {
      out.push_back(*it);
    }
  }
  if (!missing.empty()) {
    std::string msg = "unknown branch";
    msg += missing.size() > 1 ? "es: " : ": ";
    for (std::size_t i = 0; i < missing.size(); ++i) msg += (i ? ", " : "") + missing[i];
    fail(ErrorCode::UnknownBranch, msg);
  }
  std::sort(out.begin(), out.end(), [](const Branch& a, const Branch& b) { return a.name < b.name; });
  return out;
}

std::shared_ptr<const CommitMeta> Repository::commit(const ObjectId& id) const {
  auto obj = objects_->read(id);
  if (obj->type != ObjectType::Commit) fail(ErrorCode::CorruptObject, id.hex() + " is not a commit");
  return std::make_shared<const CommitMeta>(parse_commit(id, obj->data));
}

std::vector<TreeEntry> Repository::tree(const ObjectId& id) const {
  auto obj = objects_->read(id);
  if (obj->type != ObjectType::Tree) fail(ErrorCode::CorruptObject, id.hex() + " is not a tree");
  return parse_tree(obj->data);
}

std::string Repository::blob(const ObjectId& id) const {
  auto obj = objects_->read(id);
  if (obj->type != ObjectType::Blob) fail(ErrorCode::CorruptObject, id.hex() + " is not a blob");
  return obj->data;
}

std::optional<TreeEntry> Repository::find_path(const ObjectId& root_tree, std::string_view path) const {
  ObjectId current = root_tree;
  while (true) {
    auto slash = path.find('/');
    std::string_view head = path.substr(0, slash);
    auto obj = objects_->read(current);
    if (obj->type != ObjectType::Tree) return std::nullopt;
    // Scan the raw tree without materializing every entry.
    std::string_view data = obj->data;
    std::optional<TreeEntry> match;
    std::size_t pos = 0;
    while (pos < data.size()) {
      auto space = data.find(' ', pos);
      auto nul = data.find('\0', space);
      if (space == std::string_view::npos || nul == std::string_view::npos) break;
      if (data.substr(space + 1, nul - space - 1) == head) {
        TreeEntry e;
        for (std::size_t i = pos; i < space; ++i) e.mode = e.mode * 8 + static_cast<std::uint32_t>(data[i] - '0');
        e.name = std::string(head);
        e.id = ObjectId::from_raw(reinterpret_cast<const std::uint8_t*>(data.data() + nul + 1));
        match = std::move(e);
        if (slash == std::string_view::npos ? !match->is_tree() : match->is_tree()) break;
        match.reset();
      }
      pos = nul + 1 + ObjectId::kRawSize;
    }
    if (!match) return std::nullopt;
    if (slash == std::string_view::npos) return match;
    current = match->id;
    path = path.substr(slash + 1);
  }
}

std::vector<std::pair<std::string, TreeEntry>> Repository::list_files(const ObjectId& root_tree) const {
  std::vector<std::pair<std::string, TreeEntry>> out;
  std::vector<std::pair<std::string, ObjectId>> stack{{"", root_tree}};
  while (!stack.empty()) {
    auto [prefix, id] = stack.back();
    stack.pop_back();
    auto entries = tree(id);
    // Push subtrees in reverse so they pop in tree order.
    for (auto it = entries.rbegin(); it != entries.rend(); ++it)
      if (it->is_tree()) stack.emplace_back(prefix + it->name + "/", it->id);
    for (auto& e : entries)
      if (!e.is_tree() && !e.is_gitlink()) out.emplace_back(prefix + e.name, e);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::vector<CommitPair> Repository::walk_commit_pairs(const std::vector<Branch>& branches,
                                                      const WalkOptions& options) const {
  std::vector<CommitPair> pairs;
  std::unordered_set<ObjectId, ObjectIdHash> visited;
  for (const auto& branch : branches) {
    std::optional<ObjectId> cursor = branch.tip;
    while (cursor && visited.insert(*cursor).second) {
      auto meta = commit(*cursor);
      if (meta->is_root()) {
        pairs.push_back(CommitPair{meta, nullptr});
        cursor.reset();
        continue;
      }
      pairs.push_back(CommitPair{meta, commit(meta->parent_shas.front())});
      if (options.all_parents)
        for (std::size_t i = 1; i < meta->parent_shas.size(); ++i)
          pairs.push_back(CommitPair{meta, commit(meta->parent_shas[i])});
      cursor = meta->parent_shas.front();
    }
  }
  return pairs;
}

}  // namespace stmine::git
