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

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "core/json_io.hpp"
#include "git/repository.hpp"
#include "git/tree_diff.hpp"
#include "mappers/registry.hpp"
#include "miners/sparse_matrix.hpp"

namespace stmine {
class ThreadPool;
}

namespace stmine::miners {

using mappers::Id;

/// One mined commit with its change set and resolved ids. `changes` is the
/// first-parent delta; `extra_changes` holds deltas against further parents
/// when those are requested.
struct CommitRecord {
  std::shared_ptr<const git::CommitMeta> meta;
  Id commit = 0;
  Id user = 0;
  std::vector<git::FileChange> changes;
  std::vector<git::FileChange> extra_changes;
  /// Sorted, unique ids of the paths each change counts under (new path for
  /// renames).
  std::vector<Id> counted_files;
  /// counted_files plus the old side of every rename.
  std::vector<Id> touched_files;
};

/// Registers every path mentioned by `changes` and fills the id sets.
void resolve_files(CommitRecord& record, mappers::IdRegistry& files);

/// Read-only inputs shared by all miners during a run.
struct MiningContext {
  const git::Repository* repo = nullptr;
  const mappers::Registries* registries = nullptr;
  git::DiffOptions diff;
  /// Tip of the first mined branch; absent for an empty selection.
  std::optional<git::ObjectId> head;
  ThreadPool* pool = nullptr;
};

/// Common shape of all miners. Work is split across forks that each see a
/// subset of commits; merge() must be commutative and associative so the
/// result does not depend on how commits were distributed.
class Miner {
 public:
  virtual ~Miner() = default;

  /// Output file stem, e.g. "AssignmentMatrix".
  virtual std::string_view name() const = 0;
  virtual std::unique_ptr<Miner> fork() const = 0;
  virtual void process(const CommitRecord& record, const MiningContext& ctx) = 0;
  virtual void merge(Miner&& other) = 0;
  /// Runs once after all commits are merged.
  virtual void finish(const MiningContext&) {}
  virtual Json to_json() const = 0;
  /// Whether process() reads line hunks.
  virtual bool needs_hunks() const { return false; }
};

// ---------------------------------------------------------------------------

using ChangedFiles = std::map<Id, std::set<Id>>;

class ChangedFilesMiner final : public Miner {
 public:
  std::string_view name() const override { return "ChangedFiles"; }
  std::unique_ptr<Miner> fork() const override { return std::make_unique<ChangedFilesMiner>(); }
  void process(const CommitRecord& record, const MiningContext& ctx) override;
  void merge(Miner&& other) override;
  Json to_json() const override;

  const ChangedFiles& result() const noexcept { return sets_; }

 private:
  ChangedFiles sets_;
};

using AssignmentMatrix = SparseMatrix<std::uint64_t>;

class AssignmentMatrixMiner final : public Miner {
 public:
  std::string_view name() const override { return "AssignmentMatrix"; }
  std::unique_ptr<Miner> fork() const override { return std::make_unique<AssignmentMatrixMiner>(); }
  void process(const CommitRecord& record, const MiningContext& ctx) override;
  void merge(Miner&& other) override;
  Json to_json() const override;

  const AssignmentMatrix& result() const noexcept { return matrix_; }

 private:
  AssignmentMatrix matrix_;
};

/// Symmetric co-change counts; both (i,j) and (j,i) are stored.
using FileDependencyMatrix = SparseMatrix<std::uint64_t>;

class FileDependencyMiner final : public Miner {
 public:
  explicit FileDependencyMiner(std::size_t max_files_per_commit = 500) : max_files_(max_files_per_commit) {}

  std::string_view name() const override { return "FileDependencyMatrix"; }
  std::unique_ptr<Miner> fork() const override { return std::make_unique<FileDependencyMiner>(max_files_); }
  void process(const CommitRecord& record, const MiningContext& ctx) override;
  void merge(Miner&& other) override;
  Json to_json() const override;

  const FileDependencyMatrix& result() const noexcept { return matrix_; }
  std::uint64_t skipped_commits() const noexcept { return skipped_; }

 private:
  std::size_t max_files_;
  FileDependencyMatrix matrix_;
  std::uint64_t skipped_ = 0;
};

using WeekGrid = std::array<std::array<std::uint64_t, 24>, 7>;
using WorkTimeHistogram = std::map<Id, WeekGrid>;

/// Local (day-of-week, hour) of a commit; Monday is day 0.
std::pair<int, int> local_week_slot(std::int64_t epoch_seconds, int tz_offset_minutes);

class WorkTimeMiner final : public Miner {
 public:
  std::string_view name() const override { return "WorkTime"; }
  std::unique_ptr<Miner> fork() const override { return std::make_unique<WorkTimeMiner>(); }
  void process(const CommitRecord& record, const MiningContext& ctx) override;
  void merge(Miner&& other) override;
  Json to_json() const override;

  const WorkTimeHistogram& result() const noexcept { return buckets_; }

 private:
  WorkTimeHistogram buckets_;
};

/// fix commit id -> sorted ids of the commits that introduced the lines it
/// changed.
using CommitInfluenceGraph = std::map<Id, std::vector<Id>>;

/// Decides whether a commit message marks a bug fix. The default is a
/// case-insensitive substring match on "fix".
class FixMatcher {
 public:
  FixMatcher() = default;
  /// ECMAScript regex, matched case-insensitively anywhere in the message.
  explicit FixMatcher(const std::string& pattern);
  bool operator()(std::string_view message) const;
  const std::string& pattern() const noexcept { return pattern_; }

 private:
  std::string pattern_ = "fix";
  std::shared_ptr<const std::regex> regex_;
};

class CommitInfluenceMiner final : public Miner {
 public:
  explicit CommitInfluenceMiner(FixMatcher matcher = {}) : matcher_(std::move(matcher)) {}

  std::string_view name() const override { return "CommitInfluenceGraph"; }
  std::unique_ptr<Miner> fork() const override { return std::make_unique<CommitInfluenceMiner>(matcher_); }
  void process(const CommitRecord& record, const MiningContext& ctx) override;
  void merge(Miner&& other) override;
  Json to_json() const override;
  bool needs_hunks() const override { return true; }

  const CommitInfluenceGraph& result() const noexcept { return graph_; }

 private:
  FixMatcher matcher_;
  CommitInfluenceGraph graph_;
};

/// Weights of the degree-of-authorship model.
struct DoaWeights {
  double intercept = 3.293;
  double first_authorship = 1.098;
  double deliveries = 0.164;
  double acceptances = 0.321;
};

/// Raw degree of authorship: intercept + FA·w1 + DL·w2 − ln(1 + AC)·w3.
double raw_doa(bool first_author, std::uint64_t deliveries, std::uint64_t acceptances,
               const DoaWeights& weights = {});

struct OwnershipResult {
  /// user -> file -> normalized DOA in [0, 1]
  std::map<Id, std::map<Id, double>> doa;
  /// file -> user -> surviving lines at head
  std::map<Id, std::map<Id, std::uint64_t>> lines;
};

class FilesOwnershipMiner final : public Miner {
 public:
  explicit FilesOwnershipMiner(DoaWeights weights = {}) : weights_(weights) {}

  std::string_view name() const override { return "FilesOwnership"; }
  std::unique_ptr<Miner> fork() const override { return std::make_unique<FilesOwnershipMiner>(weights_); }
  void process(const CommitRecord& record, const MiningContext& ctx) override;
  void merge(Miner&& other) override;
  void finish(const MiningContext& ctx) override;
  Json to_json() const override;

  const OwnershipResult& result() const noexcept { return result_; }

 private:
  DoaWeights weights_;
  // file -> user -> commits changing the file
  std::map<Id, std::map<Id, std::uint64_t>> deliveries_;
  // file -> users who added it
  std::map<Id, std::set<Id>> adders_;
  // new path -> old paths it was renamed from
  std::map<Id, std::set<Id>> renamed_from_;
  OwnershipResult result_;
};

// Convenience runners over a fixed record list (single-threaded).
ChangedFiles mine_changed_files(const std::vector<CommitRecord>& records);
AssignmentMatrix mine_assignment_matrix(const std::vector<CommitRecord>& records);
FileDependencyMatrix mine_file_dependency_matrix(const std::vector<CommitRecord>& records,
                                                 std::size_t max_files_per_commit = 500);
WorkTimeHistogram mine_work_time(const std::vector<CommitRecord>& records);
CommitInfluenceGraph mine_commit_influence_graph(const std::vector<CommitRecord>& records, const MiningContext& ctx,
                                                 const FixMatcher& matcher = {});
OwnershipResult mine_files_ownership(const std::vector<CommitRecord>& records, const MiningContext& ctx,
                                     const DoaWeights& weights = {});

}  // namespace stmine::miners
