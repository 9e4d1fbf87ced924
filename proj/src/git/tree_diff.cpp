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


#include "git/tree_diff.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <unordered_map>

#include "core/error.hpp"

namespace stmine::git {

const char* to_string(ChangeKind kind) noexcept {
  switch (kind) {
    case ChangeKind::Add: return "ADD";
    case ChangeKind::Modify: return "MODIFY";
    case ChangeKind::Delete: return "DELETE";
    case ChangeKind::Rename: return "RENAME";
  }
  return "?";
}

namespace {

struct Side {
  std::string path;
  ObjectId id;
  std::uint32_t mode = 0;
};

struct RawDelta {
  std::vector<Side> added;
  std::vector<Side> deleted;
  std::vector<std::pair<Side, Side>> modified;
};

// Orders entries the way Git sorts trees: directories compare as "name/".
int entry_compare(const TreeEntry& a, const TreeEntry& b) {
  std::size_t n = std::min(a.name.size(), b.name.size());
  int c = a.name.compare(0, n, b.name, 0, n);
  if (c != 0) return c;
  auto tail = [n](const TreeEntry& e) -> unsigned char {
    if (n < e.name.size()) return static_cast<unsigned char>(e.name[n]);
    return e.is_tree() ? '/' : '\0';
  };
  return int{tail(a)} - int{tail(b)};
}

class TreeWalker {
 public:
  TreeWalker(const Repository& repo, RawDelta& out) : repo_(repo), out_(out) {}

  void diff(const std::string& prefix, const std::vector<TreeEntry>& old_entries,
            const std::vector<TreeEntry>& new_entries) {
    std::size_t i = 0, j = 0;
    while (i < old_entries.size() || j < new_entries.size()) {
      int c;
      if (i == old_entries.size()) c = 1;
      else if (j == new_entries.size()) c = -1;
      else c = entry_compare(old_entries[i], new_entries[j]);
      if (c < 0) {
        removed(prefix, old_entries[i++]);
      } else if (c > 0) {
        added(prefix, new_entries[j++]);
      } else {
        const auto& o = old_entries[i++];
        const auto& n = new_entries[j++];
        if (o.id == n.id && o.mode == n.mode) continue;
        if (o.is_tree()) {
          diff(prefix + o.name + "/", repo_.tree(o.id), repo_.tree(n.id));
        } else if (o.is_gitlink() || n.is_gitlink()) {
          continue;
        } else {
          std::string path = prefix + o.name;
          out_.modified.emplace_back(Side{path, o.id, o.mode}, Side{path, n.id, n.mode});
        }
      }
    }
  }

 private:
  void removed(const std::string& prefix, const TreeEntry& e) {
    if (e.is_gitlink()) return;
    if (e.is_tree()) {
      diff(prefix + e.name + "/", repo_.tree(e.id), {});
      return;
    }
    out_.deleted.push_back(Side{prefix + e.name, e.id, e.mode});
  }

  void added(const std::string& prefix, const TreeEntry& e) {
    if (e.is_gitlink()) return;
    if (e.is_tree()) {
      diff(prefix + e.name + "/", {}, repo_.tree(e.id));
      return;
    }
    out_.added.push_back(Side{prefix + e.name, e.id, e.mode});
  }

  const Repository& repo_;
  RawDelta& out_;
};

bool is_regular(std::uint32_t mode) { return (mode & 0170000) == 0100000; }

std::string_view basename_of(std::string_view path) {
  auto slash = path.rfind('/');
  return slash == std::string_view::npos ? path : path.substr(slash + 1);
}

// Chunk fingerprint used by the similarity estimate: content is cut into
// spans ending at '\n' or after 64 bytes, each hashed into a bucket that
// accumulates span lengths.
using SpanCounts = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

SpanCounts span_counts(std::string_view data) {
  constexpr std::uint32_t kHashBase = 107927;
  const bool is_text = !looks_binary(data);
  std::unordered_map<std::uint32_t, std::uint32_t> counts;
  std::uint32_t accum1 = 0, accum2 = 0, n = 0;
  const auto* buf = reinterpret_cast<const unsigned char*>(data.data());
  std::size_t sz = data.size();
  while (sz) {
    std::uint32_t c = *buf++;
    std::uint32_t old_1 = accum1;
    --sz;
    if (is_text && c == '\r' && sz && *buf == '\n') continue;
    accum1 = (accum1 << 7) ^ (accum2 >> 25);
    accum2 = (accum2 << 7) ^ (old_1 >> 25);
    accum1 += c;
    if (++n < 64 && c != '\n') continue;
    std::uint32_t hashval = (accum1 + accum2 * 0x61) % kHashBase;
    counts[hashval] += n;
    n = 0;
    accum1 = accum2 = 0;
  }
  if (n > 0) {
    std::uint32_t hashval = (accum1 + accum2 * 0x61) % kHashBase;
    counts[hashval] += n;
  }
  SpanCounts out(counts.begin(), counts.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t copied_bytes(const SpanCounts& src, const SpanCounts& dst) {
  std::uint64_t copied = 0;
  std::size_t i = 0, j = 0;
  while (i < src.size() && j < dst.size()) {
    if (src[i].first < dst[j].first) {
      ++i;
    } else if (src[i].first > dst[j].first) {
      ++j;
    } else {
      copied += std::min(src[i].second, dst[j].second);
      ++i, ++j;
    }
  }
  return copied;
}

bool size_rules_out(std::size_t src_size, std::size_t dst_size, int minimum_score) {
  std::uint64_t max_size = std::max(src_size, dst_size);
  std::uint64_t delta = max_size - std::min(src_size, dst_size);
  return max_size * static_cast<std::uint64_t>(kMaxSimilarityScore - minimum_score) <
         delta * static_cast<std::uint64_t>(kMaxSimilarityScore);
}

class RenameDetector {
 public:
  RenameDetector(const Repository& repo, RawDelta& delta, const DiffOptions& options)
      : repo_(repo), delta_(delta), options_(options) {
    minimum_score_ = std::clamp(options.rename_threshold, 0, 100) * kMaxSimilarityScore / 100;
  }

  std::vector<FileChange> run() {
    src_used_.assign(delta_.deleted.size(), false);
    dst_source_.assign(delta_.added.size(), -1);
    dst_score_.assign(delta_.added.size(), 0);
    if (!delta_.deleted.empty() && !delta_.added.empty()) {
      exact_matches();
      if (minimum_score_ < kMaxSimilarityScore) {
        basename_matches();
        inexact_matches();
      }
    }
    std::vector<FileChange> out;
    for (std::size_t d = 0; d < delta_.added.size(); ++d) {
      const Side& dst = delta_.added[d];
      FileChange fc;
      if (dst_source_[d] >= 0) {
        const Side& src = delta_.deleted[dst_source_[d]];
        fc.kind = ChangeKind::Rename;
        fc.old_path = src.path;
        fc.old_id = src.id;
        fc.old_mode = src.mode;
        fc.similarity = dst_score_[d] * 100 / kMaxSimilarityScore;
      } else {
        fc.kind = ChangeKind::Add;
      }
      fc.new_path = dst.path;
      fc.new_id = dst.id;
      fc.new_mode = dst.mode;
      out.push_back(std::move(fc));
    }
    for (std::size_t s = 0; s < delta_.deleted.size(); ++s) {
      if (src_used_[s]) continue;
      const Side& src = delta_.deleted[s];
      FileChange fc;
      fc.kind = ChangeKind::Delete;
      fc.old_path = src.path;
      fc.old_id = src.id;
      fc.old_mode = src.mode;
      out.push_back(std::move(fc));
    }
    return out;
  }

 private:
  void record(std::size_t dst, std::size_t src, int score) {
    dst_source_[dst] = static_cast<long>(src);
    dst_score_[dst] = score;
    src_used_[src] = true;
  }

  void exact_matches() {
    std::unordered_map<ObjectId, std::vector<std::size_t>, ObjectIdHash> by_id;
    for (std::size_t s = 0; s < delta_.deleted.size(); ++s) by_id[delta_.deleted[s].id].push_back(s);
    for (std::size_t d = 0; d < delta_.added.size(); ++d) {
      const Side& dst = delta_.added[d];
      auto it = by_id.find(dst.id);
      if (it == by_id.end()) continue;
      long best = -1;
      int best_score = -1;
      for (auto s : it->second) {
        const Side& src = delta_.deleted[s];
        if ((!is_regular(src.mode) || !is_regular(dst.mode)) && src.mode != dst.mode) continue;
        if (src_used_[s]) continue;
        int score = 1 + (basename_of(src.path) == basename_of(dst.path) ? 1 : 0);
        if (score > best_score) {
          best = static_cast<long>(s);
          best_score = score;
          if (score == 2) break;
        }
      }
      if (best >= 0) record(d, static_cast<std::size_t>(best), kMaxSimilarityScore);
    }
  }

  // Pairs a leftover source and destination that share a basename unique on
  // both sides, under a stricter threshold halfway to an exact match.
  void basename_matches() {
    const int min_basename_score = minimum_score_ + (kMaxSimilarityScore - minimum_score_) / 2;
    std::map<std::string_view, long> src_by_name, dst_by_name;
    for (std::size_t s = 0; s < delta_.deleted.size(); ++s) {
      if (src_used_[s]) continue;
      auto [it, inserted] = src_by_name.emplace(basename_of(delta_.deleted[s].path), static_cast<long>(s));
      if (!inserted) it->second = -1;
    }
    for (std::size_t d = 0; d < delta_.added.size(); ++d) {
      if (dst_source_[d] >= 0) continue;
      auto [it, inserted] = dst_by_name.emplace(basename_of(delta_.added[d].path), static_cast<long>(d));
      if (!inserted) it->second = -1;
    }
    for (std::size_t s = 0; s < delta_.deleted.size(); ++s) {
      if (src_used_[s]) continue;
      auto name = basename_of(delta_.deleted[s].path);
      if (src_by_name[name] < 0) continue;
      auto it = dst_by_name.find(name);
      if (it == dst_by_name.end() || it->second < 0) continue;
      auto d = static_cast<std::size_t>(it->second);
      if (dst_source_[d] >= 0) continue;
      int score = estimate(s, d, min_basename_score);
      if (score < min_basename_score) continue;
      record(d, s, score);
    }
  }

  void inexact_matches() {
    std::vector<std::size_t> srcs, dsts;
    for (std::size_t s = 0; s < delta_.deleted.size(); ++s)
      if (!src_used_[s]) srcs.push_back(s);
    for (std::size_t d = 0; d < delta_.added.size(); ++d)
      if (dst_source_[d] < 0) dsts.push_back(d);
    if (srcs.empty() || dsts.empty()) return;
    const auto limit = static_cast<std::uint64_t>(options_.rename_limit);
    if (static_cast<std::uint64_t>(srcs.size()) * dsts.size() > limit * limit) return;

    struct Candidate {
      long dst = -1;
      long src = -1;
      int score = 0;
      int name_score = 0;
    };
    // Higher score first, then same-basename pairs; unused slots sink.
    auto better = [](const Candidate& a, const Candidate& b) {
      if (a.dst < 0) return false;
      if (b.dst < 0) return true;
      if (a.score != b.score) return a.score > b.score;
      return a.name_score > b.name_score;
    };
    constexpr std::size_t kPerDst = 4;
    std::vector<Candidate> matrix;
    matrix.reserve(dsts.size() * kPerDst);
    for (auto d : dsts) {
      std::array<Candidate, kPerDst> best{};
      for (auto s : srcs) {
        Candidate c{static_cast<long>(d), static_cast<long>(s), estimate(s, d, minimum_score_),
                    basename_of(delta_.deleted[s].path) == basename_of(delta_.added[d].path) ? 1 : 0};
        std::size_t worst = 0;
        for (std::size_t k = 1; k < kPerDst; ++k)
          if (better(best[worst], best[k])) worst = k;
        if (better(c, best[worst])) best[worst] = c;
      }
      matrix.insert(matrix.end(), best.begin(), best.end());
    }
    std::stable_sort(matrix.begin(), matrix.end(), better);
    for (const auto& c : matrix) {
      if (c.dst < 0 || c.score < minimum_score_) break;
      auto d = static_cast<std::size_t>(c.dst);
      auto s = static_cast<std::size_t>(c.src);
      if (dst_source_[d] >= 0 || src_used_[s]) continue;
      record(d, s, c.score);
    }
  }

  int estimate(std::size_t s, std::size_t d, int minimum_score) {
    const Side& src = delta_.deleted[s];
    const Side& dst = delta_.added[d];
    if (!is_regular(src.mode) || !is_regular(dst.mode)) return 0;
    const std::string& a = content(src.id);
    const std::string& b = content(dst.id);
    if (size_rules_out(a.size(), b.size(), minimum_score)) return 0;
    if (b.empty()) return 0;
    std::uint64_t max_size = std::max(a.size(), b.size());
    return static_cast<int>(copied_bytes(spans(src.id, a), spans(dst.id, b)) * kMaxSimilarityScore / max_size);
  }

  const std::string& content(const ObjectId& id) {
    auto it = blobs_.find(id);
    if (it == blobs_.end()) it = blobs_.emplace(id, repo_.blob(id)).first;
    return it->second;
  }

  const SpanCounts& spans(const ObjectId& id, const std::string& data) {
    auto it = spans_.find(id);
    if (it == spans_.end()) it = spans_.emplace(id, span_counts(data)).first;
    return it->second;
  }

  const Repository& repo_;
  RawDelta& delta_;
  const DiffOptions& options_;
  int minimum_score_ = 0;
  std::vector<bool> src_used_;
  std::vector<long> dst_source_;
  std::vector<int> dst_score_;
  std::unordered_map<ObjectId, std::string, ObjectIdHash> blobs_;
  std::unordered_map<ObjectId, SpanCounts, ObjectIdHash> spans_;
};

void attach_hunks(const Repository& repo, FileChange& fc) {
  std::string old_text, new_text;
  bool old_side = fc.kind != ChangeKind::Add;
  bool new_side = fc.kind != ChangeKind::Delete;
  if (old_side) old_text = repo.blob(fc.old_id);
  if (new_side) new_text = repo.blob(fc.new_id);
  fc.binary = looks_binary(old_text) || looks_binary(new_text);
  if (fc.binary) return;
  if (old_side && new_side && fc.old_id == fc.new_id) return;
  fc.hunks = diff_hunks(old_text, new_text);
}

}  // namespace

int similarity_score(std::string_view src, std::string_view dst, int minimum_score) {
  if (size_rules_out(src.size(), dst.size(), minimum_score) || dst.empty()) return 0;
  std::uint64_t max_size = std::max(src.size(), dst.size());
  return static_cast<int>(copied_bytes(span_counts(src), span_counts(dst)) * kMaxSimilarityScore / max_size);
}

std::vector<FileChange> diff_trees(const Repository& repo, const std::optional<ObjectId>& old_tree,
                                   const ObjectId& new_tree, const DiffOptions& options) {
  RawDelta delta;
  TreeWalker walker(repo, delta);
  if (old_tree == new_tree) return {};
  walker.diff("", old_tree ? repo.tree(*old_tree) : std::vector<TreeEntry>{}, repo.tree(new_tree));

  std::vector<FileChange> out;
  for (auto& [o, n] : delta.modified) {
    FileChange fc;
    fc.kind = ChangeKind::Modify;
    fc.old_path = o.path;
    fc.new_path = n.path;
    fc.old_id = o.id;
    fc.new_id = n.id;
    fc.old_mode = o.mode;
    fc.new_mode = n.mode;
    out.push_back(std::move(fc));
  }
  if (options.detect_renames) {
    auto rest = RenameDetector(repo, delta, options).run();
    std::move(rest.begin(), rest.end(), std::back_inserter(out));
  } else {
    for (auto& a : delta.added) {
      FileChange fc;
      fc.kind = ChangeKind::Add;
      fc.new_path = a.path;
      fc.new_id = a.id;
      fc.new_mode = a.mode;
      out.push_back(std::move(fc));
    }
    for (auto& d : delta.deleted) {
      FileChange fc;
      fc.kind = ChangeKind::Delete;
      fc.old_path = d.path;
      fc.old_id = d.id;
      fc.old_mode = d.mode;
      out.push_back(std::move(fc));
    }
  }
  std::sort(out.begin(), out.end(), [](const FileChange& a, const FileChange& b) {
    if (a.path() != b.path()) return a.path() < b.path();
    return a.old_path < b.old_path;
  });
  if (options.with_hunks)
    for (auto& fc : out) attach_hunks(repo, fc);
  return out;
}

std::vector<FileChange> compute_diff(const Repository& repo, const CommitPair& pair, const DiffOptions& options) {
  std::optional<ObjectId> old_tree;
  if (pair.parent) old_tree = pair.parent->tree;
  return diff_trees(repo, old_tree, pair.current->tree, options);
}

}  // namespace stmine::git
