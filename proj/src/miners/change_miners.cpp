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


#include "miners/miners.hpp"

namespace stmine::miners {

namespace {

template <class Derived>
Derived& as(Miner& other) {
  return dynamic_cast<Derived&>(other);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

void ChangedFilesMiner::process(const CommitRecord& record, const MiningContext&) {
  if (record.touched_files.empty()) return;
  sets_[record.user].insert(record.touched_files.begin(), record.touched_files.end());
}

void ChangedFilesMiner::merge(Miner&& other) {
  for (auto& [user, files] : as<ChangedFilesMiner>(other).sets_) sets_[user].merge(files);
}

Json ChangedFilesMiner::to_json() const {
  Json doc = Json::object();
  for (const auto& [user, files] : sets_) doc[std::to_string(user)] = Json(std::vector<Id>(files.begin(), files.end()));
  return doc;
}

void AssignmentMatrixMiner::process(const CommitRecord& record, const MiningContext&) {
  for (Id f : record.counted_files) matrix_.add(record.user, f, 1);
}

void AssignmentMatrixMiner::merge(Miner&& other) { matrix_.merge(as<AssignmentMatrixMiner>(other).matrix_); }

Json AssignmentMatrixMiner::to_json() const { return matrix_.to_json(); }

void FileDependencyMiner::process(const CommitRecord& record, const MiningContext&) {
  const auto& files = record.counted_files;
  if (files.size() > max_files_) {
    ++skipped_;
    return;
  }
  for (std::size_t i = 0; i < files.size(); ++i)
    for (std::size_t j = i + 1; j < files.size(); ++j) {
      matrix_.add(files[i], files[j], 1);
      matrix_.add(files[j], files[i], 1);
    }
}

void FileDependencyMiner::merge(Miner&& other) {
  auto& o = as<FileDependencyMiner>(other);
  matrix_.merge(o.matrix_);
  skipped_ += o.skipped_;
}

Json FileDependencyMiner::to_json() const { return matrix_.to_json(/*upper_only=*/true); }

std::pair<int, int> local_week_slot(std::int64_t epoch_seconds, int tz_offset_minutes) {
  constexpr std::int64_t kDay = 86400;
  std::int64_t local = epoch_seconds + std::int64_t{tz_offset_minutes} * 60;
  std::int64_t days = floor_div(local, kDay);
  std::int64_t seconds = local - days * kDay;
  // 1970-01-01 was a Thursday, day 3 when Monday is day 0.
  int weekday = static_cast<int>(((days + 3) % 7 + 7) % 7);
  return {weekday, static_cast<int>(seconds / 3600)};
}

void WorkTimeMiner::process(const CommitRecord& record, const MiningContext&) {
  auto [day, hour] = local_week_slot(record.meta->author_time, record.meta->tz_offset);
  auto [it, inserted] = buckets_.try_emplace(record.user);
  if (inserted)
    for (auto& row : it->second) row.fill(0);
  it->second[day][hour] += 1;
}

void WorkTimeMiner::merge(Miner&& other) {
  for (const auto& [user, grid] : as<WorkTimeMiner>(other).buckets_) {
    auto [it, inserted] = buckets_.try_emplace(user);
    if (inserted) {
      it->second = grid;
      continue;
    }
    for (int d = 0; d < 7; ++d)
      for (int h = 0; h < 24; ++h) it->second[d][h] += grid[d][h];
  }
}

Json WorkTimeMiner::to_json() const {
  Json doc = Json::object();
  for (const auto& [user, grid] : buckets_) {
    Json days = Json::array();
    for (const auto& row : grid) days.push_back(Json(std::vector<std::uint64_t>(row.begin(), row.end())));
    doc[std::to_string(user)] = std::move(days);
  }
  return doc;
}

}  // namespace stmine::miners
