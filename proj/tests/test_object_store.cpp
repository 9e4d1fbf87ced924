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

#include <fstream>

#include "core/error.hpp"
#include "git/object_store.hpp"
#include "git/repository.hpp"
#include "support/fixture.hpp"

using namespace stmine;
using namespace stmine::testing;

namespace {

git::ObjectId oid(const std::string& hex) {
  auto id = git::ObjectId::from_hex(hex.substr(0, 40));
  REQUIRE(id.has_value());
  return *id;
}

std::string trimmed(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

// Builds a history where one file grows steadily so that `git gc` stores
// most revisions as deltas.
std::vector<std::string> grow_file(const FixtureRepo& repo, int revisions) {
  std::vector<std::string> blobs;
  std::string content;
  for (int i = 0; i < revisions; ++i) {
    for (int j = 0; j < 20; ++j) content += "line " + std::to_string(i) + "." + std::to_string(j) + " of the growing file\n";
    repo.write("big.txt", content);
    repo.commit("rev " + std::to_string(i), {}, 1700000000 + i * 60);
    blobs.push_back(trimmed(repo.git("rev-parse HEAD:big.txt")));
  }
  return blobs;
}

}  // namespace

TEST_SUITE("object_store") {

TEST_CASE("object ids round-trip through hex") {
  auto id = git::ObjectId::from_hex("0123456789abcdef0123456789abcdef01234567");
  REQUIRE(id);
  CHECK(id->hex() == "0123456789abcdef0123456789abcdef01234567");
  CHECK_FALSE(git::ObjectId::from_hex("xyz"));
  CHECK_FALSE(git::ObjectId::from_hex("0123"));
  CHECK(git::ObjectId{}.is_zero());
}

TEST_CASE("loose objects match git cat-file") {
  TempDir tmp;
  FixtureRepo repo(tmp / "r");
  repo.write("a.txt", "hello\nworld\n");
  auto sha = repo.commit("first");
  git::ObjectStore store(repo.path() / ".git" / "objects");

  auto commit = store.read(oid(sha));
  CHECK(commit->type == git::ObjectType::Commit);
  CHECK(commit->data == repo.git("cat-file commit " + sha));

  auto blob_id = trimmed(repo.git("rev-parse HEAD:a.txt"));
  auto blob = store.read(oid(blob_id));
  CHECK(blob->type == git::ObjectType::Blob);
  CHECK(blob->data == "hello\nworld\n");
  CHECK(store.try_read(oid("1111111111111111111111111111111111111111")) == nullptr);
  CHECK_THROWS_AS(store.read(oid("1111111111111111111111111111111111111111")), Error);
}

TEST_CASE("packed objects and delta chains match git cat-file") {
  TempDir tmp;
  FixtureRepo repo(tmp / "r");
  auto blobs = grow_file(repo, 12);
  repo.git("gc -q --aggressive");
  REQUIRE(repo.git("count-objects -v").find("count: 0") != std::string::npos);
  REQUIRE(sh("git verify-pack -v " + shell_quote(repo.path().string()) + "/.git/objects/pack/*.idx").find("chain length") !=
          std::string::npos);

  git::ObjectStore store(repo.path() / ".git" / "objects");
  for (const auto& b : blobs) CHECK(store.read(oid(b))->data == repo.git("cat-file blob " + b));
  auto commits = repo.git("rev-list HEAD");
  std::size_t start = 0;
  while (start + 40 <= commits.size()) {
    auto sha = commits.substr(start, 40);
    CHECK(store.read(oid(sha))->data == repo.git("cat-file commit " + sha));
    start += 41;
  }
}

TEST_CASE("objects are found through alternates") {
  TempDir tmp;
  FixtureRepo origin(tmp / "origin");
  origin.write("a.txt", "shared\n");
  auto sha = origin.commit("first");
  sh("git clone -q --shared " + shell_quote(origin.path().string()) + " " + shell_quote((tmp / "clone").string()));
  git::ObjectStore store(tmp / "clone" / ".git" / "objects");
  CHECK(store.read(oid(sha))->type == git::ObjectType::Commit);
}

TEST_CASE("a truncated loose object is reported as corrupt") {
  TempDir tmp;
  FixtureRepo repo(tmp / "r");
  repo.write("a.txt", std::string(4096, 'x'));
  repo.commit("first");
  auto blob = trimmed(repo.git("rev-parse HEAD:a.txt"));
  auto file = repo.path() / ".git" / "objects" / blob.substr(0, 2) / blob.substr(2);
  std::filesystem::permissions(file, std::filesystem::perms::owner_write, std::filesystem::perm_options::add);
  std::filesystem::resize_file(file, 10);
  git::ObjectStore store(repo.path() / ".git" / "objects");
  try {
    store.read(oid(blob));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CorruptObject);
  }
}

TEST_CASE("delta application copies and inserts") {
  std::string base = "0123456789";
  // source size 10, target size 7: copy offset 2 size 3, insert "xy", copy offset 8 size 2
  std::string delta;
  delta += static_cast<char>(10);
  delta += static_cast<char>(7);
  delta += static_cast<char>(0x80 | 0x01 | 0x10);
  delta += static_cast<char>(2);
  delta += static_cast<char>(3);
  delta += static_cast<char>(2);
  delta += "xy";
  delta += static_cast<char>(0x80 | 0x01 | 0x10);
  delta += static_cast<char>(8);
  delta += static_cast<char>(2);
  CHECK(git::apply_delta(base, delta) == "234xy89");

  std::string wrong_size = delta;
  wrong_size[0] = static_cast<char>(11);
  CHECK_THROWS_AS(git::apply_delta(base, wrong_size), Error);
}

}  // TEST_SUITE
