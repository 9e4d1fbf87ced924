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


#include "stmine/stmine.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "git/repository.hpp"
#include "pipeline/pipeline.hpp"
#include "synth/synthetic.hpp"

struct stm_config {
  stmine::pipeline::RunConfig config;
  std::vector<std::string> branches;
};

struct stm_repo {
  stmine::git::RepositoryPtr repo;
  std::vector<std::string> branch_names;
};

namespace {

thread_local std::string last_error;

stm_status status_of(stmine::ErrorCode code) {
  using stmine::ErrorCode;
  switch (code) {
    case ErrorCode::NotARepository: return STM_ERR_NOT_A_REPOSITORY;
    case ErrorCode::UnknownBranch: return STM_ERR_UNKNOWN_BRANCH;
    case ErrorCode::CorruptObject: return STM_ERR_CORRUPT_OBJECT;
    case ErrorCode::FileNotInTree: return STM_ERR_FILE_NOT_IN_TREE;
    case ErrorCode::Io: return STM_ERR_IO;
    case ErrorCode::EmptyEntity: return STM_ERR_EMPTY_ENTITY;
    case ErrorCode::DimensionMismatch: return STM_ERR_DIMENSION_MISMATCH;
    case ErrorCode::EmptyGraph: return STM_ERR_EMPTY_GRAPH;
    case ErrorCode::InvalidConfig: return STM_ERR_INVALID_CONFIG;
    case ErrorCode::Schema: return STM_ERR_SCHEMA;
  }
  return STM_ERR_INTERNAL;
}

stm_status set_error(stm_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <class F>
stm_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return STM_OK;
  } catch (const stmine::Error& e) {
    return set_error(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(STM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(STM_ERR_INTERNAL, e.what());
  }
}

#define STM_REQUIRE(cond, what) \
  if (!(cond)) return set_error(STM_ERR_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* stm_version(void) { return "0.1.0"; }

const char* stm_status_name(stm_status status) {
  switch (status) {
    case STM_OK: return "OK";
    case STM_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case STM_ERR_INTERNAL: return "InternalError";
    default:
      if (status >= STM_ERR_NOT_A_REPOSITORY && status <= STM_ERR_SCHEMA)
        return stmine::to_string(static_cast<stmine::ErrorCode>(status));
      return "Unknown";
  }
}

const char* stm_last_error(void) { return last_error.c_str(); }

stm_config* stm_config_new(void) { return new (std::nothrow) stm_config(); }

void stm_config_free(stm_config* config) { delete config; }

stm_status stm_config_set_repo(stm_config* config, const char* path) {
  STM_REQUIRE(config && path, "null argument");
  config->config.repo_path = path;
  return STM_OK;
}

stm_status stm_config_set_output(stm_config* config, const char* dir) {
  STM_REQUIRE(config && dir, "null argument");
  config->config.output_dir = dir;
  return STM_OK;
}

stm_status stm_config_add_branch(stm_config* config, const char* name) {
  STM_REQUIRE(config && name, "null argument");
  config->branches.emplace_back(name);
  config->config.branches = config->branches;
  return STM_OK;
}

stm_status stm_config_enable_miner(stm_config* config, const char* name) {
  STM_REQUIRE(config && name, "null argument");
  auto kind = stmine::pipeline::miner_from_string(name);
  if (!kind) return set_error(STM_ERR_INVALID_CONFIG, std::string("unknown miner: ") + name);
  config->config.miners.insert(*kind);
  return STM_OK;
}

stm_status stm_config_enable_calculation(stm_config* config, const char* name) {
  STM_REQUIRE(config && name, "null argument");
  auto kind = stmine::pipeline::calculation_from_string(name);
  if (!kind) return set_error(STM_ERR_INVALID_CONFIG, std::string("unknown calculation: ") + name);
  config->config.calculations.insert(*kind);
  return STM_OK;
}

stm_status stm_config_enable_all(stm_config* config) {
  STM_REQUIRE(config, "null argument");
  for (auto m : stmine::pipeline::all_miners()) config->config.miners.insert(m);
  for (auto c : stmine::pipeline::all_calculations()) config->config.calculations.insert(c);
  return STM_OK;
}

stm_status stm_config_set_threads(stm_config* config, int64_t threads) {
  STM_REQUIRE(config, "null argument");
  if (threads < 1) return set_error(STM_ERR_INVALID_CONFIG, "--threads must be at least 1");
  config->config.threads = static_cast<std::size_t>(threads);
  return STM_OK;
}

stm_status stm_config_set_rename_detection(stm_config* config, int enabled) {
  STM_REQUIRE(config, "null argument");
  config->config.detect_renames = enabled != 0;
  return STM_OK;
}

stm_status stm_config_set_rename_threshold(stm_config* config, int64_t percent) {
  STM_REQUIRE(config, "null argument");
  if (percent < 0 || percent > 100) return set_error(STM_ERR_INVALID_CONFIG, "--rename-threshold must lie in [0, 100]");
  config->config.rename_threshold = static_cast<int>(percent);
  return STM_OK;
}

stm_status stm_config_set_all_parents(stm_config* config, int enabled) {
  STM_REQUIRE(config, "null argument");
  config->config.all_parents = enabled != 0;
  return STM_OK;
}

stm_status stm_config_set_max_files_per_commit(stm_config* config, int64_t n) {
  STM_REQUIRE(config, "null argument");
  if (n < 1) return set_error(STM_ERR_INVALID_CONFIG, "--max-files-per-commit must be at least 1");
  config->config.max_files_per_commit = static_cast<std::size_t>(n);
  return STM_OK;
}

stm_status stm_config_set_fix_pattern(stm_config* config, const char* regex) {
  STM_REQUIRE(config && regex, "null argument");
  config->config.fix_pattern = regex;
  return STM_OK;
}

stm_status stm_config_set_pagerank(stm_config* config, double damping, double tol, int64_t max_iter) {
  STM_REQUIRE(config, "null argument");
  if (max_iter < 1 || max_iter > 1000000000) return set_error(STM_ERR_INVALID_CONFIG, "--max-iter must be at least 1");
  config->config.pagerank.damping = damping;
  config->config.pagerank.tolerance = tol;
  config->config.pagerank.max_iterations = static_cast<int>(max_iter);
  return STM_OK;
}

stm_status stm_config_set_need_threshold(stm_config* config, double threshold) {
  STM_REQUIRE(config, "null argument");
  config->config.need_threshold = threshold;
  return STM_OK;
}

stm_status stm_config_set_aliases(stm_config* config, const char* path) {
  STM_REQUIRE(config && path, "null argument");
  config->config.aliases_path = path;
  return STM_OK;
}

stm_status stm_config_set_communication(stm_config* config, const char* path) {
  STM_REQUIRE(config && path, "null argument");
  config->config.communication_path = path;
  return STM_OK;
}

stm_status stm_config_set_proxy_window_days(stm_config* config, int64_t days) {
  STM_REQUIRE(config, "null argument");
  if (days < 0 || days > 1000000) return set_error(STM_ERR_INVALID_CONFIG, "--proxy-window-days out of range");
  config->config.proxy_window_days = static_cast<int>(days);
  return STM_OK;
}

stm_status stm_config_validate(const stm_config* config) {
  STM_REQUIRE(config, "null argument");
  return guarded([&] { config->config.validate(); });
}

stm_status stm_run(const stm_config* config, stm_report* report) {
  STM_REQUIRE(config, "null argument");
  return guarded([&] {
    auto r = stmine::pipeline::run(config->config);
    if (report) {
      report->commits = r.commits;
      report->commit_pairs = r.pairs;
      report->files = r.files;
      report->users = r.users;
      report->skipped_commits = r.skipped_commits;
      report->wall_seconds = r.wall_seconds;
    }
  });
}

stm_status stm_repo_open(const char* path, stm_repo** out) {
  STM_REQUIRE(path && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto handle = std::make_unique<stm_repo>();
    handle->repo = stmine::git::Repository::open(path);
    for (const auto& b : handle->repo->local_branches()) handle->branch_names.push_back(b.name);
    *out = handle.release();
  });
}

void stm_repo_close(stm_repo* repo) { delete repo; }

size_t stm_repo_branch_count(const stm_repo* repo) { return repo ? repo->branch_names.size() : 0; }

const char* stm_repo_branch_name(const stm_repo* repo, size_t index) {
  if (!repo || index >= repo->branch_names.size()) return nullptr;
  return repo->branch_names[index].c_str();
}

stm_status stm_repo_count_pairs(const stm_repo* repo, const char* branch, uint64_t* out) {
  STM_REQUIRE(repo && out, "null argument");
  return guarded([&] {
    stmine::git::BranchSelector selector = stmine::git::AllBranches{};
    if (branch) selector = std::vector<std::string>{branch};
    *out = repo->repo->walk_commit_pairs(repo->repo->resolve_branches(selector)).size();
  });
}

stm_status stm_generate_synthetic_repo(uint64_t commits, uint64_t authors, uint64_t files, uint64_t seed,
                                       const char* path) {
  STM_REQUIRE(path, "null argument");
  return guarded([&] { stmine::synth::generate_synthetic_repo({commits, authors, files, seed}, path); });
}

}  // extern "C"
