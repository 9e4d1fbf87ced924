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
#include <string>
#include <vector>

namespace stmine::testing {

/// Directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::string shell_quote(const std::string& s);

/// Runs a shell command and returns its stdout; throws std::runtime_error on
/// a non-zero exit.
std::string sh(const std::string& command);

/// Runs a shell command and returns its exit status, stdout and stderr merged.
int sh_status(const std::string& command, std::string* output = nullptr);

struct Author {
  std::string name = "Alice";
  std::string email = "alice@example.com";
};

/// Scripted repository built through the git CLI.
class FixtureRepo {
 public:
  /// Initializes an empty repository with `branch` as the unborn HEAD.
  explicit FixtureRepo(std::filesystem::path path, const std::string& branch = "main");

  const std::filesystem::path& path() const noexcept { return path_; }

  /// `git -C <repo> <args>`; args are passed through the shell verbatim.
  std::string git(const std::string& args) const;

  void write(const std::string& file, const std::string& content) const;
  void remove(const std::string& file) const;
  void move(const std::string& from, const std::string& to) const;

  /// Stages everything and commits; returns the new sha.
  std::string commit(const std::string& message, const Author& author = {}, std::int64_t time = 1700000000,
                     const std::string& tz = "+0000") const;

  /// `git merge --no-ff <branch>` into the current branch; returns the sha.
  std::string merge(const std::string& branch, const std::string& message, const Author& author = {},
                    std::int64_t time = 1700000000, const std::string& tz = "+0000") const;

  std::string head() const;

 private:
  std::filesystem::path path_;
};

/// "a\nb\n" from {"a", "b"}.
std::string lines(const std::vector<std::string>& items);

}  // namespace stmine::testing
