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


#include <algorithm>
#include <cctype>

#include "core/error.hpp"
#include "git/blame.hpp"
#include "miners/miners.hpp"

namespace stmine::miners {

FixMatcher::FixMatcher(const std::string& pattern) : pattern_(pattern) {
  try {
    regex_ = std::make_shared<const std::regex>(pattern, std::regex::ECMAScript | std::regex::icase);
  } catch (const std::regex_error& e) {
    fail(ErrorCode::InvalidConfig, "bad fix pattern '" + pattern + "': " + e.what());
  }
}

bool FixMatcher::operator()(std::string_view message) const {
  if (regex_) return std::regex_search(message.begin(), message.end(), *regex_);
  auto lower = [](char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); };
  auto hit = std::search(message.begin(), message.end(), pattern_.begin(), pattern_.end(),
                         [&](char a, char b) { return lower(a) == lower(b); });
  return hit != message.end();
}

void CommitInfluenceMiner::process(const CommitRecord& record, const MiningContext& ctx) {
  if (!matcher_(record.meta->message)) return;
  auto& introducers = graph_[record.commit];
  if (record.meta->is_root()) return;
  const auto& parent = record.meta->parent_shas.front();

  std::set<Id> found;
  for (const auto& fc : record.changes) {
    if (fc.kind != git::ChangeKind::Modify && fc.kind != git::ChangeKind::Delete) continue;
    if (fc.binary) continue;
    std::vector<std::uint32_t> old_lines;
    for (const auto& h : fc.hunks)
      for (std::uint32_t i = 0; i < h.old_len; ++i) old_lines.push_back(h.old_start + i);
    if (old_lines.empty()) continue;
    auto blame = git::blame_file(*ctx.repo, parent, fc.old_path, ctx.diff);
    for (auto line : old_lines) {
      if (line == 0 || line > blame.size()) continue;
      auto id = ctx.registries->commits.find(blame[line - 1].introducing_sha.hex());
      if (id && *id != record.commit) found.insert(*id);
    }
  }
  introducers.assign(found.begin(), found.end());
}

void CommitInfluenceMiner::merge(Miner&& other) {
  auto& o = dynamic_cast<CommitInfluenceMiner&>(other);
  for (auto& [fix, ids] : o.graph_) {
    auto& mine = graph_[fix];
    std::vector<Id> merged;
    std::set_union(mine.begin(), mine.end(), ids.begin(), ids.end(), std::back_inserter(merged));
    mine = std::move(merged);
  }
}

Json CommitInfluenceMiner::to_json() const {
  Json doc = Json::object();
  for (const auto& [fix, ids] : graph_) doc[std::to_string(fix)] = Json(ids);
  return doc;
}

}  // namespace stmine::miners
