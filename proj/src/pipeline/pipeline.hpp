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
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "calc/calculations.hpp"
#include "core/thread_pool.hpp"
#include "git/repository.hpp"
#include "mappers/registry.hpp"
#include "miners/miners.hpp"

namespace stmine::pipeline {

enum class MinerKind { ChangedFiles, AssignmentMatrix, FileDependency, WorkTime, CommitInfluence, FilesOwnership };
enum class CalcKind { CoordinationNeeds, Congruence, PageRank };

std::string_view to_string(MinerKind kind) noexcept;
std::string_view to_string(CalcKind kind) noexcept;
std::optional<MinerKind> miner_from_string(std::string_view name) noexcept;
std::optional<CalcKind> calculation_from_string(std::string_view name) noexcept;

const std::vector<MinerKind>& all_miners();
const std::vector<CalcKind>& all_calculations();

struct RunConfig {
  std::filesystem::path repo_path;
  git::BranchSelector branches = git::AllBranches{};
  std::set<MinerKind> miners;
  std::set<CalcKind> calculations;
  std::size_t threads = 1;
  std::filesystem::path output_dir = "out";
  bool detect_renames = true;
  int rename_threshold = 50;
  bool all_parents = false;
  std::size_t max_files_per_commit = 500;
  /// Regex for fix commits; empty means the plain "fix" substring rule.
  std::string fix_pattern;
  calc::PageRankOptions pagerank;
  double need_threshold = 0.0;
  std::optional<std::filesystem::path> aliases_path;
  std::optional<std::filesystem::path> communication_path;
  int proxy_window_days = 30;

  /// Throws Error(InvalidConfig) describing the first violated constraint.
  void validate() const;
  /// Selected miners plus those the selected calculations consume.
  std::set<MinerKind> effective_miners() const;
  /// Selected calculations plus their prerequisites.
  std::set<CalcKind> effective_calculations() const;
};

/// Everything the miners consume: the walked history with ids fixed.
struct PreparedHistory {
  git::RepositoryPtr repo;
  std::vector<git::Branch> branches;
  mappers::Registries registries;
  std::vector<miners::CommitRecord> records;
  std::optional<git::ObjectId> head;
  std::size_t pair_count = 0;
};

/// Pass 1 registers commits and users in traversal order; the per-pair diffs
/// then run on `pool`; file ids are registered afterwards in traversal order.
PreparedHistory prepare_history(const RunConfig& config, const ThreadPool& pool, bool with_hunks);

/// Runs `miners` over the history on `pool` and finishes them.
void run_miners(const PreparedHistory& history, const RunConfig& config, ThreadPool& pool,
                std::vector<std::unique_ptr<miners::Miner>>& miners);

struct RunReport {
  std::size_t commits = 0;
  std::size_t pairs = 0;
  std::size_t files = 0;
  std::size_t users = 0;
  std::uint64_t skipped_commits = 0;
  double wall_seconds = 0.0;
  std::vector<std::string> outputs;
};

/// Full run: mining, calculations and all output files including
/// run_meta.json. Throws stmine::Error.
RunReport run(const RunConfig& config);

/// Reads a communication graph file: a JSON array (or {"edges": [...]}) of
/// ["a@x", "b@y"] pairs or {"from", "to", "weight"} objects. Identities are
/// canonicalized; unknown developers are skipped and counted.
calc::CommunicationGraph load_communication(const std::filesystem::path& path, const mappers::Registries& registries,
                                            std::size_t* unknown = nullptr);

}  // namespace stmine::pipeline
