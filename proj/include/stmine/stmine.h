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


#ifndef STMINE_STMINE_H
#define STMINE_STMINE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define STM_API __declspec(dllexport)
#else
#define STM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum stm_status {
  STM_OK = 0,
  STM_ERR_NOT_A_REPOSITORY = 1,
  STM_ERR_UNKNOWN_BRANCH = 2,
  STM_ERR_CORRUPT_OBJECT = 3,
  STM_ERR_FILE_NOT_IN_TREE = 4,
  STM_ERR_IO = 5,
  STM_ERR_EMPTY_ENTITY = 6,
  STM_ERR_DIMENSION_MISMATCH = 7,
  STM_ERR_EMPTY_GRAPH = 8,
  STM_ERR_INVALID_CONFIG = 9,
  STM_ERR_SCHEMA = 10,
  STM_ERR_INVALID_ARGUMENT = 11,
  STM_ERR_INTERNAL = 12
} stm_status;

/* Opaque handles. */
typedef struct stm_config stm_config;
typedef struct stm_repo stm_repo;

typedef struct stm_report {
  uint64_t commits;
  uint64_t commit_pairs;
  uint64_t files;
  uint64_t users;
  uint64_t skipped_commits;
  double wall_seconds;
} stm_report;

STM_API const char* stm_version(void);
STM_API const char* stm_status_name(stm_status status);

/* Message of the last failing call on this thread; "" when none. */
STM_API const char* stm_last_error(void);

/* ---- run configuration -------------------------------------------------- */

STM_API stm_config* stm_config_new(void);
STM_API void stm_config_free(stm_config* config);

STM_API stm_status stm_config_set_repo(stm_config* config, const char* path);
STM_API stm_status stm_config_set_output(stm_config* config, const char* dir);
/* Restricts mining to named branches; without calls all local branches are used. */
STM_API stm_status stm_config_add_branch(stm_config* config, const char* name);
/* Names: changed-files, assignment-matrix, file-dependency, work-time,
   commit-influence, files-ownership. */
STM_API stm_status stm_config_enable_miner(stm_config* config, const char* name);
/* Names: coordination-needs, congruence, pagerank. */
STM_API stm_status stm_config_enable_calculation(stm_config* config, const char* name);
STM_API stm_status stm_config_enable_all(stm_config* config);

STM_API stm_status stm_config_set_threads(stm_config* config, int64_t threads);
STM_API stm_status stm_config_set_rename_detection(stm_config* config, int enabled);
STM_API stm_status stm_config_set_rename_threshold(stm_config* config, int64_t percent);
STM_API stm_status stm_config_set_all_parents(stm_config* config, int enabled);
STM_API stm_status stm_config_set_max_files_per_commit(stm_config* config, int64_t n);
STM_API stm_status stm_config_set_fix_pattern(stm_config* config, const char* regex);
STM_API stm_status stm_config_set_pagerank(stm_config* config, double damping, double tol, int64_t max_iter);
STM_API stm_status stm_config_set_need_threshold(stm_config* config, double threshold);
STM_API stm_status stm_config_set_aliases(stm_config* config, const char* path);
STM_API stm_status stm_config_set_communication(stm_config* config, const char* path);
STM_API stm_status stm_config_set_proxy_window_days(stm_config* config, int64_t days);

/* Checks the configuration without touching the repository. */
STM_API stm_status stm_config_validate(const stm_config* config);

/* Mines, calculates and writes every output file. `report` may be NULL. */
STM_API stm_status stm_run(const stm_config* config, stm_report* report);

/* ---- repository queries ------------------------------------------------- */

STM_API stm_status stm_repo_open(const char* path, stm_repo** out);
STM_API void stm_repo_close(stm_repo* repo);
STM_API size_t stm_repo_branch_count(const stm_repo* repo);
/* Branch name by index in lexicographic order; NULL when out of range. */
STM_API const char* stm_repo_branch_name(const stm_repo* repo, size_t index);
/* Number of (commit, parent) pairs a first-parent walk of `branch` yields;
   branch NULL walks every local branch. */
STM_API stm_status stm_repo_count_pairs(const stm_repo* repo, const char* branch, uint64_t* out);

/* ---- fixtures ----------------------------------------------------------- */

/* Creates a seeded repository at `path`; see the README for the manifest. */
STM_API stm_status stm_generate_synthetic_repo(uint64_t commits, uint64_t authors, uint64_t files, uint64_t seed,
                                               const char* path);

#ifdef __cplusplus
}
#endif

#endif /* STMINE_STMINE_H */
