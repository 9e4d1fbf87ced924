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

#include <random>
#include <sstream>

#include "core/error.hpp"
#include "git/blame.hpp"
#include "git/repository.hpp"
#include "support/fixture.hpp"

using namespace stmine;
using namespace stmine::testing;

namespace {

std::vector<std::string> blame_shas(const FixtureRepo& repo, const std::string& path) {
  auto handle = git::Repository::open(repo.path());
  auto head = git::ObjectId::from_hex(repo.head());
  std::vector<std::string> out;
  for (const auto& line : git::blame_file(*handle, *head, path)) out.push_back(line.introducing_sha.hex());
  return out;
}

std::vector<std::string> git_blame(const FixtureRepo& repo, const std::string& path) {
  std::istringstream in(repo.git("blame --porcelain --first-parent HEAD -- " + shell_quote(path)));
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    if (line.size() > 41 && line[40] == ' ' && line.find_first_not_of("0123456789abcdef") == 40)
      out.push_back(line.substr(0, 40));
  return out;
}

}  // namespace

TEST_SUITE("blame") {

TEST_CASE("file created once is attributed wholly to its creator") {
  TempDir tmp;
  FixtureRepo repo(tmp / "r");
  repo.write("f.txt", lines({"a", "b", "c"}));
  auto c1 = repo.commit("C1");
  repo.write("other.txt", "x\n");
  repo.commit("C2");
  auto shas = blame_shas(repo, "f.txt");
  CHECK(shas == std::vector<std::string>(3, c1));
}

TEST_CASE("rewritten line is attributed to the rewriting commit") {
  TempDir tmp;
  FixtureRepo repo(tmp / "r");
  repo.write("f.txt", lines({"a", "b", "c"}));
  auto c1 = repo.commit("C1", {"Ann", "ann@example.com"});
  repo.write("f.txt", lines({"a", "B", "c"}));
  auto c2 = repo.commit("C2", {"Bob", "bob@example.com"});
  auto handle = git::Repository::open(repo.path());
  auto blame = git::blame_file(*handle, *git::ObjectId::from_hex(c2), "f.txt");
  REQUIRE(blame.size() == 3);
  CHECK(blame[0].introducing_sha.hex() == c1);
  CHECK(blame[1].introducing_sha.hex() == c2);
  CHECK(blame[1].author_email == "bob@example.com");
  CHECK(blame[2].introducing_sha.hex() == c1);
  for (std::uint32_t i = 0; i < 3; ++i) CHECK(blame[i].line_no == i + 1);
  CHECK(blame_shas(repo, "f.txt") == git_blame(repo, "f.txt"));
}

TEST_CASE("missing path is reported") {
  TempDir tmp;
  FixtureRepo repo(tmp / "r");
  repo.write("f.txt", "a\n");
  auto c1 = repo.commit("C1");
  auto handle = git::Repository::open(repo.path());
  try {
    git::blame_file(*handle, *git::ObjectId::from_hex(c1), "nope.txt");
    FAIL("expected FileNotInTree");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FileNotInTree);
  }
}

TEST_CASE("blame follows whole-file renames") {
  TempDir tmp;
  FixtureRepo repo(tmp / "r");
  repo.write("old/name.txt", lines({"one", "two", "three", "four"}));
  repo.commit("C1");
  repo.move("old/name.txt", "new/name.txt");
  repo.write("new/name.txt", lines({"one", "two", "THREE", "four"}));
  repo.commit("C2");
  CHECK(blame_shas(repo, "new/name.txt") == git_blame(repo, "new/name.txt"));
}

TEST_CASE("blame agrees with git on random histories") {
  TempDir tmp;
  std::mt19937_64 rng(3);
  for (int round = 0; round < 8; ++round) {
    CAPTURE(round);
    FixtureRepo repo(tmp / ("r" + std::to_string(round)));
    std::vector<std::string> content;
    int next = 0;
    for (int i = 0; i < 12; ++i) content.push_back("line " + std::to_string(next++));
    for (int rev = 0; rev < 10; ++rev) {
      for (int e = 0, edits = 1 + static_cast<int>(rng() % 4); e < edits; ++e) {
        auto at = content.empty() ? 0 : rng() % content.size();
        switch (rng() % 3) {
          case 0: content.insert(content.begin() + static_cast<long>(at), "line " + std::to_string(next++)); break;
          case 1:
            if (!content.empty()) content[at] = "line " + std::to_string(next++);
            break;
          default:
            if (content.size() > 1) content.erase(content.begin() + static_cast<long>(at));
        }
      }
      repo.write("f.txt", lines(content));
      repo.commit("rev " + std::to_string(rev), {}, 1700000000 + rev * 100);
    }
    CHECK(blame_shas(repo, "f.txt") == git_blame(repo, "f.txt"));
  }
}

}  // TEST_SUITE
