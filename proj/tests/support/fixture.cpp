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


#include "support/fixture.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace stmine::testing {

namespace fs = std::filesystem;

TempDir::TempDir() {
  std::string pattern = (fs::temp_directory_path() / "stmine-test-XXXXXX").string();
  if (!::mkdtemp(pattern.data())) throw std::runtime_error("mkdtemp failed");
  path_ = pattern;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

int sh_status(const std::string& command, std::string* output) {
  FILE* pipe = ::popen((command + " 2>&1").c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed: " + command);
  std::string text;
  std::array<char, 65536> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) text.append(buf.data(), n);
  int status = ::pclose(pipe);
  if (output) *output = std::move(text);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string sh(const std::string& command) {
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed: " + command);
  std::string text;
  std::array<char, 65536> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) text.append(buf.data(), n);
  int status = ::pclose(pipe);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) throw std::runtime_error("command failed: " + command);
  return text;
}

FixtureRepo::FixtureRepo(fs::path path, const std::string& branch) : path_(std::move(path)) {
  fs::create_directories(path_);
  sh("git init -q --initial-branch=" + shell_quote(branch) + " " + shell_quote(path_.string()));
  git("config user.name fixture");
  git("config user.email fixture@example.com");
  git("config commit.gpgsign false");
}

std::string FixtureRepo::git(const std::string& args) const {
  return sh("git -C " + shell_quote(path_.string()) + " " + args);
}

void FixtureRepo::write(const std::string& file, const std::string& content) const {
  fs::path target = path_ / file;
  fs::create_directories(target.parent_path());
  std::ofstream out(target, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + target.string());
}

void FixtureRepo::remove(const std::string& file) const { git("rm -q " + shell_quote(file)); }

void FixtureRepo::move(const std::string& from, const std::string& to) const {
  fs::create_directories((path_ / to).parent_path());
  git("mv " + shell_quote(from) + " " + shell_quote(to));
}

namespace {

std::string identity_env(const Author& author, std::int64_t time, const std::string& tz) {
  std::string date = "@" + std::to_string(time) + " " + tz;
  return "GIT_AUTHOR_NAME=" + shell_quote(author.name) + " GIT_AUTHOR_EMAIL=" + shell_quote(author.email) +
         " GIT_AUTHOR_DATE=" + shell_quote(date) + " GIT_COMMITTER_NAME=" + shell_quote(author.name) +
         " GIT_COMMITTER_EMAIL=" + shell_quote(author.email) + " GIT_COMMITTER_DATE=" + shell_quote(date) + " ";
}

}  // namespace

std::string FixtureRepo::commit(const std::string& message, const Author& author, std::int64_t time,
                                const std::string& tz) const {
  git("add -A");
  sh(identity_env(author, time, tz) + "git -C " + shell_quote(path_.string()) + " commit -q --allow-empty -m " +
     shell_quote(message));
  return head();
}

std::string FixtureRepo::merge(const std::string& branch, const std::string& message, const Author& author,
                               std::int64_t time, const std::string& tz) const {
  sh(identity_env(author, time, tz) + "git -C " + shell_quote(path_.string()) + " merge -q --no-ff -m " +
     shell_quote(message) + " " + shell_quote(branch));
  return head();
}

std::string FixtureRepo::head() const {
  auto sha = git("rev-parse HEAD");
  while (!sha.empty() && (sha.back() == '\n' || sha.back() == '\r')) sha.pop_back();
  return sha;
}

std::string lines(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& i : items) out += i + "\n";
  return out;
}

}  // namespace stmine::testing
