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
#include <cmath>

#include "core/thread_pool.hpp"
#include "git/blame.hpp"
#include "miners/miners.hpp"

namespace stmine::miners {

double raw_doa(bool first_author, std::uint64_t deliveries, std::uint64_t acceptances, const DoaWeights& w) {
  return w.intercept + w.first_authorship * (first_author ? 1.0 : 0.0) +
         w.deliveries * static_cast<double>(deliveries) -
         w.acceptances * std::log(1.0 + static_cast<double>(acceptances));
}

void FilesOwnershipMiner::process(const CommitRecord& record, const MiningContext& ctx) {
  for (Id f : record.counted_files) deliveries_[f][record.user] += 1;
  auto note = [&](const git::FileChange& fc) {
    if (fc.kind == git::ChangeKind::Add) {
      adders_[ctx.registries->files.at(fc.new_path)].insert(record.user);
    } else if (fc.kind == git::ChangeKind::Rename) {
      renamed_from_[ctx.registries->files.at(fc.new_path)].insert(ctx.registries->files.at(fc.old_path));
    }
  };
  for (const auto& fc : record.changes) note(fc);
  for (const auto& fc : record.extra_changes) note(fc);
}

void FilesOwnershipMiner::merge(Miner&& other) {
  auto& o = dynamic_cast<FilesOwnershipMiner&>(other);
  for (const auto& [f, users] : o.deliveries_)
    for (const auto& [u, n] : users) deliveries_[f][u] += n;
  for (auto& [f, users] : o.adders_) adders_[f].merge(users);
  for (auto& [f, olds] : o.renamed_from_) renamed_from_[f].merge(olds);
}

void FilesOwnershipMiner::finish(const MiningContext& ctx) {
  // First authorship follows renames: whoever created any ancestor path.
  std::map<Id, std::set<Id>> creators = adders_;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [target, sources] : renamed_from_)
      for (Id source : sources) {
        auto it = creators.find(source);
        if (it == creators.end()) continue;
        std::set<Id> inherited = it->second;
        for (Id u : inherited) changed |= creators[target].insert(u).second;
      }
  }

  result_.doa.clear();
  std::set<Id> files;
  for (const auto& [f, _] : deliveries_) files.insert(f);
  for (const auto& [f, _] : creators) files.insert(f);
  for (Id f : files) {
    std::map<Id, std::uint64_t> dl;
    if (auto it = deliveries_.find(f); it != deliveries_.end()) dl = it->second;
    std::set<Id> fa;
    if (auto it = creators.find(f); it != creators.end()) fa = it->second;
    std::uint64_t total = 0;
    for (const auto& [u, n] : dl) total += n;
    std::set<Id> contributors = fa;
    for (const auto& [u, n] : dl) contributors.insert(u);

    std::map<Id, double> raw;
    double best = -INFINITY;
    for (Id u : contributors) {
      std::uint64_t mine = dl.count(u) ? dl.at(u) : 0;
      double value = raw_doa(fa.count(u) > 0, mine, total - mine, weights_);
      raw[u] = value;
      best = std::max(best, value);
    }
    for (const auto& [u, value] : raw) {
      double score = best > 0 ? std::clamp(value / best, 0.0, 1.0) : (value == best ? 1.0 : 0.0);
      result_.doa[u][f] = score;
    }
  }

  result_.lines.clear();
  if (!ctx.head || !ctx.repo) return;
  auto head = ctx.repo->commit(*ctx.head);
  auto entries = ctx.repo->list_files(head->tree);
  std::vector<std::map<Id, std::uint64_t>> per_file(entries.size());
  std::vector<std::optional<Id>> file_ids(entries.size());
  auto blame_one = [&](std::size_t, std::size_t i) {
    const auto& [path, entry] = entries[i];
    auto id = ctx.registries->files.find(path);
    if (!id) return;
    if (git::looks_binary(ctx.repo->blob(entry.id))) return;
    file_ids[i] = id;
    for (const auto& line : git::blame_file(*ctx.repo, *ctx.head, path, ctx.diff)) {
      git::CommitMeta who;
      who.author_email = line.author_email;
      who.author_name = line.author_name;
      per_file[i][ctx.registries->user_of(who)] += 1;
    }
  };
  if (ctx.pool) {
    ctx.pool->parallel_for(entries.size(), blame_one);
  } else {
    for (std::size_t i = 0; i < entries.size(); ++i) blame_one(0, i);
  }
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (file_ids[i]) result_.lines[*file_ids[i]] = std::move(per_file[i]);
}

Json FilesOwnershipMiner::to_json() const {
  Json doa = Json::object();
  for (const auto& [u, files] : result_.doa) {
    Json row = Json::object();
    for (const auto& [f, score] : files) row[std::to_string(f)] = score;
    doa[std::to_string(u)] = std::move(row);
  }
  Json lines = Json::object();
  for (const auto& [f, users] : result_.lines) {
    Json row = Json::object();
    for (const auto& [u, n] : users) row[std::to_string(u)] = n;
    lines[std::to_string(f)] = std::move(row);
  }
  Json doc = Json::object();
  doc["doa"] = std::move(doa);
  doc["lines"] = std::move(lines);
  return doc;
}

}  // namespace stmine::miners
