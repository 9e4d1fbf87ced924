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

#include "core/thread_pool.hpp"
#include "miners/miners.hpp"
#include "pipeline/pipeline.hpp"
#include "support/fixture.hpp"
#include "support/oracle.hpp"

using namespace stmine;
using namespace stmine::miners;
using namespace stmine::testing;

namespace {

CommitRecord record(Id commit, Id user, std::vector<Id> files, std::int64_t time = 0, int tz = 0) {
  auto meta = std::make_shared<git::CommitMeta>();
  meta->author_time = time;
  meta->tz_offset = tz;
  CommitRecord r;
  r.meta = meta;
  r.commit = commit;
  r.user = user;
  r.counted_files = files;
  r.touched_files = files;
  return r;
}

// Mines a fixture with the full pipeline and returns both views.
std::pair<MinedView, MinedView> mine_and_oracle(const FixtureRepo& repo, const TempDir& tmp) {
  pipeline::RunConfig config;
  config.repo_path = repo.path();
  config.output_dir = tmp / "out";
  config.miners = {pipeline::all_miners().begin(), pipeline::all_miners().end()};
  pipeline::run(config);
  return {git_oracle(repo.path()), load_mined(config.output_dir)};
}

void check_equal(const MinedView& expected, const MinedView& actual) {
  auto diffs = compare(expected, actual);
  for (const auto& d : diffs) MESSAGE(d);
  CHECK(diffs.empty());
}

}  // namespace

TEST_SUITE("miners") {

TEST_CASE("changed files") {
  SUBCASE("single commit") {
    auto result = mine_changed_files({record(0, 0, {0, 1})});
    CHECK(result == ChangedFiles{{0, {0, 1}}});
  }
  SUBCASE("set semantics across commits") {
    auto result = mine_changed_files({record(0, 0, {0}), record(1, 0, {0}), record(2, 0, {0})});
    CHECK(result == ChangedFiles{{0, {0}}});
  }
  SUBCASE("fixture with two authors matches git log") {
    TempDir tmp;
    FixtureRepo repo(tmp / "r");
    repo.write("a", "1\n");
    repo.commit("u0 edits a", {"U0", "u0@x"});
    repo.write("a", "2\n");
    repo.write("b", "1\n");
    repo.commit("u1 edits a and b", {"U1", "u1@x"});
    auto [expected, actual] = mine_and_oracle(repo, tmp);
    CHECK(actual.changed_files == std::map<std::string, std::set<std::string>>{{"u0@x", {"a"}}, {"u1@x", {"a", "b"}}});
    check_equal(expected, actual);
  }
}

TEST_CASE("assignment matrix") {
  auto m = mine_assignment_matrix({record(0, 0, {0}), record(1, 0, {0}), record(2, 0, {0})});
  CHECK(m.get(0, 0) == 3);
  CHECK(mine_assignment_matrix({}).empty());
}

TEST_CASE("file dependency matrix") {
  auto m = mine_file_dependency_matrix({record(0, 0, {0, 1, 2})});
  CHECK(m.get(0, 1) == 1);
  CHECK(m.get(0, 2) == 1);
  CHECK(m.get(1, 2) == 1);
  CHECK(m.get(2, 1) == 1);
  CHECK(m.get(0, 0) == 0);
  CHECK(mine_file_dependency_matrix({record(0, 0, {0})}).empty());
  CHECK(mine_file_dependency_matrix({record(0, 0, {0, 1}), record(1, 1, {0, 1})}).get(0, 1) == 2);

  SUBCASE("large commits are skipped and counted") {
    FileDependencyMiner miner(2);
    MiningContext ctx;
    miner.process(record(0, 0, {0, 1, 2}), ctx);
    miner.process(record(1, 0, {0, 1}), ctx);
    CHECK(miner.skipped_commits() == 1);
    CHECK(miner.result().get(0, 1) == 1);
    CHECK(miner.result().get(0, 2) == 0);
  }
  SUBCASE("json keeps the upper triangle") {
    CHECK(m.to_json(true).dump() == R"({"0":{"1":1,"2":1},"1":{"2":1}})");
  }
}

TEST_CASE("work time buckets by local weekday and hour") {
  // 2024-01-08 was a Monday.
  const std::int64_t monday_1015_utc = 1704708900;
  CHECK(local_week_slot(monday_1015_utc, 0) == std::pair{0, 10});
  // Sunday 2024-01-07 23:30 UTC at +02:00 is Monday 01:30 local.
  const std::int64_t sunday_2330_utc = 1704670200;
  CHECK(local_week_slot(sunday_2330_utc, 120) == std::pair{0, 1});
  CHECK(local_week_slot(sunday_2330_utc, 0) == std::pair{6, 23});
  CHECK(local_week_slot(-1, 0) == std::pair{2, 23});  // 1969-12-31 was a Wednesday

  auto h = mine_work_time({record(0, 3, {}, monday_1015_utc)});
  CHECK(h.at(3)[0][10] == 1);
  CHECK(mine_work_time({}).empty());
}

TEST_CASE("fix matcher") {
  FixMatcher plain;
  CHECK(plain("Fix bug"));
  CHECK(plain("bugFIX"));
  CHECK_FALSE(plain("Add feature"));
  FixMatcher regex("^(fix|hotfix):");
  CHECK(regex("HotFix: crash"));
  CHECK_FALSE(regex("a fix: crash"));
  CHECK_THROWS_AS(FixMatcher("("), Error);
}

TEST_CASE("commit influence graph") {
  TempDir tmp;
  FixtureRepo repo(tmp / "r");

  SUBCASE("fix rewriting a line points at its introducer") {
    repo.write("f.txt", lines({"a", "b", "c"}));
    auto c1 = repo.commit("C1");
    repo.write("f.txt", lines({"a", "B", "c"}));
    auto c2 = repo.commit("Fix bug");
    auto [expected, actual] = mine_and_oracle(repo, tmp);
    CHECK(actual.influence == std::map<std::string, std::set<std::string>>{{c2, {c1}}});
    check_equal(expected, actual);
  }
  SUBCASE("no fix commits give an empty graph") {
    repo.write("f.txt", "a\n");
    repo.commit("C1");
    repo.write("f.txt", "b\n");
    repo.commit("C2");
    auto [expected, actual] = mine_and_oracle(repo, tmp);
    CHECK(actual.influence.empty());
  }
  SUBCASE("fix that only adds a file has no introducers") {
    repo.write("f.txt", "a\n");
    repo.commit("C1");
    repo.write("g.txt", "new\n");
    auto f = repo.commit("fix: add missing file");
    auto [expected, actual] = mine_and_oracle(repo, tmp);
    CHECK(actual.influence == std::map<std::string, std::set<std::string>>{{f, {}}});
    check_equal(expected, actual);
  }
  SUBCASE("fix deleting lines of several commits") {
    repo.write("f.txt", lines({"a", "b"}));
    auto c1 = repo.commit("C1");
    repo.write("f.txt", lines({"a", "b", "c", "d"}));
    auto c2 = repo.commit("C2");
    repo.write("g.txt", lines({"g"}));
    auto c3 = repo.commit("C3");
    repo.write("f.txt", lines({"a", "d"}));
    repo.remove("g.txt");
    auto fix = repo.commit("Bugfix");
    auto [expected, actual] = mine_and_oracle(repo, tmp);
    CHECK(actual.influence.at(fix) == std::set<std::string>{c1, c2, c3});
    check_equal(expected, actual);
  }
}

TEST_CASE("degree of authorship") {
  CHECK(raw_doa(true, 5, 0) == doctest::Approx(5.211).epsilon(1e-12));
  CHECK(std::abs(raw_doa(true, 5, 0) - 5.211) < 1e-9);
  CHECK(raw_doa(false, 0, 0) == doctest::Approx(3.293));

  TempDir tmp;
  FixtureRepo repo(tmp / "r");

  SUBCASE("single author owns everything") {
    repo.write("a.txt", "1\n");
    repo.write("b.txt", "1\n");
    repo.commit("C1");
    repo.write("a.txt", "2\n");
    repo.commit("C2");
    auto [expected, actual] = mine_and_oracle(repo, tmp);
    for (const auto& [user, files] : actual.doa)
      for (const auto& [file, score] : files) CHECK(score == 1.0);
    CHECK(actual.doa.at("alice@example.com").size() == 2);
    check_equal(expected, actual);
  }
  SUBCASE("line ownership from blame at head") {
    repo.write("f", lines({"a", "b", "c"}));
    repo.commit("C1", {"U0", "u0@x"});
    repo.write("f", lines({"a", "B", "c"}));
    repo.commit("C2", {"U1", "u1@x"});
    auto [expected, actual] = mine_and_oracle(repo, tmp);
    CHECK(actual.lines.at("f") == std::map<std::string, std::uint64_t>{{"u0@x", 2}, {"u1@x", 1}});
    // u0: FA=1, DL=1, AC=1; u1: FA=0, DL=1, AC=1.
    double u0 = raw_doa(true, 1, 1), u1 = raw_doa(false, 1, 1);
    CHECK(actual.doa.at("u0@x").at("f") == 1.0);
    CHECK(actual.doa.at("u1@x").at("f") == doctest::Approx(u1 / u0));
    check_equal(expected, actual);
  }
  SUBCASE("first authorship follows renames") {
    repo.write("old.txt", lines({"1", "2", "3", "4", "5"}));
    repo.commit("C1", {"U0", "u0@x"});
    repo.move("old.txt", "new.txt");
    repo.commit("C2", {"U1", "u1@x"});
    auto [expected, actual] = mine_and_oracle(repo, tmp);
    // u0 created the content, u1 only moved it.
    CHECK(actual.doa.at("u0@x").at("new.txt") == 1.0);
    CHECK(actual.doa.at("u1@x").at("new.txt") < 1.0);
    check_equal(expected, actual);
  }
}

TEST_CASE("miner merges are order independent") {
  std::vector<CommitRecord> records;
  for (Id c = 0; c < 30; ++c) records.push_back(record(c, c % 4, {c % 5, (c * 7) % 11, 20}, 1700000000 + c * 4000, 60));
  MiningContext ctx;
  auto whole = std::make_unique<AssignmentMatrixMiner>();
  auto a = whole->fork(), b = whole->fork();
  for (std::size_t i = 0; i < records.size(); ++i) (i % 3 ? *a : *b).process(records[i], ctx);
  auto ab = whole->fork();
  ab->merge(std::move(*a));
  ab->merge(std::move(*b));
  CHECK(dynamic_cast<AssignmentMatrixMiner&>(*ab).result() == mine_assignment_matrix(records));
}

}  // TEST_SUITE
