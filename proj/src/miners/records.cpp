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

#include "core/thread_pool.hpp"
#include "miners/miners.hpp"

namespace stmine::miners {

namespace {

void sort_unique(std::vector<Id>& ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

void resolve_change(const git::FileChange& fc, mappers::IdRegistry& files, CommitRecord& record) {
  if (!fc.old_path.empty()) {
    Id old_id = files.add(fc.old_path);
    if (fc.kind == git::ChangeKind::Rename) record.touched_files.push_back(old_id);
  }
  Id counted = files.add(fc.path());
  record.counted_files.push_back(counted);
  record.touched_files.push_back(counted);
}

template <class M, class... Args>
M run_sequential(const std::vector<CommitRecord>& records, const MiningContext& ctx, Args&&... args) {
  M miner(std::forward<Args>(args)...);
  for (const auto& r : records) miner.process(r, ctx);
  miner.finish(ctx);
  return miner;
}

}  // namespace

void resolve_files(CommitRecord& record, mappers::IdRegistry& files) {
  record.counted_files.clear();
  record.touched_files.clear();
  for (const auto& fc : record.changes) resolve_change(fc, files, record);
  for (const auto& fc : record.extra_changes) resolve_change(fc, files, record);
  sort_unique(record.counted_files);
  sort_unique(record.touched_files);
}

ChangedFiles mine_changed_files(const std::vector<CommitRecord>& records) {
  return run_sequential<ChangedFilesMiner>(records, MiningContext{}).result();
}

AssignmentMatrix mine_assignment_matrix(const std::vector<CommitRecord>& records) {
  return run_sequential<AssignmentMatrixMiner>(records, MiningContext{}).result();
}

FileDependencyMatrix mine_file_dependency_matrix(const std::vector<CommitRecord>& records,
                                                 std::size_t max_files_per_commit) {
  return run_sequential<FileDependencyMiner>(records, MiningContext{}, max_files_per_commit).result();
}

WorkTimeHistogram mine_work_time(const std::vector<CommitRecord>& records) {
  return run_sequential<WorkTimeMiner>(records, MiningContext{}).result();
}

CommitInfluenceGraph mine_commit_influence_graph(const std::vector<CommitRecord>& records, const MiningContext& ctx,
                                                 const FixMatcher& matcher) {
  return run_sequential<CommitInfluenceMiner>(records, ctx, matcher).result();
}

OwnershipResult mine_files_ownership(const std::vector<CommitRecord>& records, const MiningContext& ctx,
                                     const DoaWeights& weights) {
  return run_sequential<FilesOwnershipMiner>(records, ctx, weights).result();
}

}  // namespace stmine::miners
