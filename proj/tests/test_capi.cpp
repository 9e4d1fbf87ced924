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


#include <doctest.h>

#include <string>

#include "stmine/stmine.h"
#include "support/fixture.hpp"

using namespace stmine::testing;

TEST_SUITE("capi") {

TEST_CASE("repository handles") {
  TempDir tmp;
  FixtureRepo repo(tmp / "r");
  repo.write("a", "1\n");
  repo.commit("C1");
  repo.git("branch dev");
  repo.write("a", "2\n");
  repo.commit("C2");

  stm_repo* handle = nullptr;
  REQUIRE(stm_repo_open(repo.path().c_str(), &handle) == STM_OK);
  CHECK(stm_repo_branch_count(handle) == 2);
  CHECK(std::string(stm_repo_branch_name(handle, 0)) == "dev");
  CHECK(stm_repo_branch_name(handle, 2) == nullptr);
  uint64_t pairs = 0;
  CHECK(stm_repo_count_pairs(handle, "main", &pairs) == STM_OK);
  CHECK(pairs == 2);
  CHECK(stm_repo_count_pairs(handle, nullptr, &pairs) == STM_OK);
  CHECK(pairs == 2);
  CHECK(stm_repo_count_pairs(handle, "gone", &pairs) == STM_ERR_UNKNOWN_BRANCH);
  CHECK(std::string(stm_last_error()).find("gone") != std::string::npos);
  stm_repo_close(handle);

  CHECK(stm_repo_open((tmp / "nowhere").c_str(), &handle) == STM_ERR_NOT_A_REPOSITORY);
  CHECK(handle == nullptr);
  CHECK(std::string(stm_status_name(STM_ERR_NOT_A_REPOSITORY)) == "NotARepository");
}

TEST_CASE("configured runs") {
  TempDir tmp;
  REQUIRE(stm_generate_synthetic_repo(20, 2, 5, 1, (tmp / "s").c_str()) == STM_OK);
  stm_config* config = stm_config_new();
  REQUIRE(config);
  CHECK(stm_config_set_repo(config, (tmp / "s").c_str()) == STM_OK);
  CHECK(stm_config_set_output(config, (tmp / "out").c_str()) == STM_OK);
  CHECK(stm_config_enable_miner(config, "work-time") == STM_OK);
  CHECK(stm_config_enable_miner(config, "nonsense") == STM_ERR_INVALID_CONFIG);
  CHECK(stm_config_enable_calculation(config, "pagerank") == STM_OK);
  CHECK(stm_config_set_threads(config, 0) == STM_ERR_INVALID_CONFIG);
  CHECK(stm_config_set_repo(config, nullptr) == STM_ERR_INVALID_ARGUMENT);
  CHECK(stm_config_validate(config) == STM_OK);

  stm_report report{};
  CHECK(stm_run(config, &report) == STM_OK);
  CHECK(report.commits == 20);
  CHECK(std::filesystem::exists(tmp / "out" / "WorkTime.json"));
  CHECK(std::filesystem::exists(tmp / "out" / "CommitInfluenceGraph.json"));
  CHECK_FALSE(std::filesystem::exists(tmp / "out" / "ChangedFiles.json"));

  CHECK(stm_config_set_pagerank(config, 2.0, 1e-9, 10) == STM_OK);
  CHECK(stm_run(config, &report) == STM_ERR_INVALID_CONFIG);
  stm_config_free(config);
}

}  // TEST_SUITE
