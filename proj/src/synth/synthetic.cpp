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


#include "synth/synthetic.hpp"

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "miners/miners.hpp"

extern char** environ;

namespace stmine::synth {

namespace fs = std::filesystem;

namespace {

constexpr std::int64_t kEpochStart = 1600000000;  // 2020-09-13
constexpr std::array<int, 7> kZones{0, 60, -300, 330, 540, -480, 120};
constexpr std::array<const char*, 8> kWords{"alpha", "beta", "gamma", "delta", "omega", "sigma", "kappa", "zeta"};
constexpr std::size_t kMinLines = 8;
constexpr std::size_t kMaxLines = 40;

void run_git(const fs::path& cwd, const std::vector<std::string>& args, const fs::path* stdin_file = nullptr) {
  std::vector<std::string> full{"git", "-C", cwd.string()};
  full.insert(full.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : full) argv.push_back(a.data());
  argv.push_back(nullptr);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  if (stdin_file) posix_spawn_file_actions_addopen(&actions, 0, stdin_file->c_str(), O_RDONLY, 0);
  posix_spawn_file_actions_addopen(&actions, 1, "/dev/null", O_WRONLY, 0);
  pid_t pid = 0;
  int rc = posix_spawnp(&pid, "git", &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) fail(ErrorCode::Io, "cannot run git");
  int status = 0;
  if (waitpid(pid, &status, 0) < 0 || !WIFEXITED(status) || WEXITSTATUS(status) != 0)
    fail(ErrorCode::Io, "git " + args.front() + " failed in " + cwd.string());
}

struct Author {
  std::string name;
  std::string email;  // canonical, lowercase
};

struct Planned {
  enum Kind { Modify, Add, Delete, Rename } kind;
  std::string path;
  std::string old_path;
};

class Generator {
 public:
  explicit Generator(const SyntheticSpec& spec) : spec_(spec), rng_(spec.seed) {
    for (std::size_t a = 0; a < spec.authors; ++a)
      authors_.push_back({"Dev " + std::to_string(a), "dev" + std::to_string(a) + "@example.com"});
  }

  std::uint64_t pick(std::uint64_t n) { return rng_() % n; }

  std::string fresh_line() {
    return "L" + std::to_string(next_line_++) + " " + kWords[pick(kWords.size())] + "\n";
  }

  std::vector<std::string> fresh_file() {
    std::vector<std::string> lines;
    std::size_t n = kMinLines + pick(12);
    for (std::size_t i = 0; i < n; ++i) lines.push_back(fresh_line());
    return lines;
  }

  std::string fresh_path() {
    std::string path = "src/m" + std::to_string(next_path_ % 5) + "/file" + std::to_string(next_path_) + ".txt";
    ++next_path_;
    return path;
  }

  void edit(std::vector<std::string>& lines) {
    std::size_t edits = 1 + pick(3);
    for (std::size_t e = 0; e < edits; ++e) {
      auto roll = pick(3);
      std::size_t at = pick(lines.size());
      if (roll == 0 || lines.size() <= kMinLines) lines.insert(lines.begin() + static_cast<std::ptrdiff_t>(at), fresh_line());
      else if (roll == 1 && lines.size() < kMaxLines) lines[at] = fresh_line();
      else lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(at));
    }
  }

  std::string message(std::size_t i) {
    switch (pick(8)) {
      case 0: return "Fix crash in module " + std::to_string(i % 7);
      case 1: return "bugfix: off by one #" + std::to_string(i);
      case 2: return "Refactor helpers " + std::to_string(i);
      case 3: return "Update docs";
      default: return "Add feature " + std::to_string(i);
    }
  }

  std::vector<Planned> plan(std::size_t index) {
    std::vector<Planned> ops;
    if (index == 0) {
      std::size_t n = std::min<std::size_t>(spec_.files, 1 + pick(4));
      for (std::size_t i = 0; i < n; ++i) ops.push_back({Planned::Add, fresh_path(), {}});
      return ops;
    }
    std::set<std::string> used;
    std::size_t count = 1 + pick(3);
    for (std::size_t k = 0; k < count; ++k) {
      auto roll = pick(100);
      std::size_t live = files_.size();
      if (live == 0 || (roll < 15 && live < spec_.files)) {
        ops.push_back({Planned::Add, fresh_path(), {}});
        continue;
      }
      auto it = files_.begin();
      std::advance(it, static_cast<std::ptrdiff_t>(pick(live)));
      if (!used.insert(it->first).second) continue;
      if (roll >= 15 && roll < 23 && live > 1) ops.push_back({Planned::Delete, it->first, {}});
      else if (roll >= 23 && roll < 35) ops.push_back({Planned::Rename, fresh_path(), it->first});
      else ops.push_back({Planned::Modify, it->first, {}});
    }
    return ops;
  }

  Json run(const fs::path& path) {
    std::ostringstream stream;
    Json commits = Json::array();
    std::int64_t time = kEpochStart;

    for (std::size_t i = 0; i < spec_.commits; ++i) {
      const Author& author = authors_[pick(authors_.size())];
      std::string shown_email = author.email;
      if (pick(5) == 0) shown_email[0] = 'D';
      int zone = kZones[pick(kZones.size())];
      time += 600 + static_cast<std::int64_t>(pick(5 * 3600));
      std::string msg = message(i);

      std::set<std::string> counted, touched;
      std::ostringstream body;
      for (const auto& op : plan(i)) {
        switch (op.kind) {
          case Planned::Add:
            files_[op.path] = fresh_file();
            body << "M 100644 inline " << op.path << "\n" << data_block(files_[op.path]);
            counted.insert(op.path);
            break;
          case Planned::Modify:
            edit(files_[op.path]);
            body << "M 100644 inline " << op.path << "\n" << data_block(files_[op.path]);
            counted.insert(op.path);
            break;
          case Planned::Delete:
            files_.erase(op.path);
            body << "D " << op.path << "\n";
            counted.insert(op.path);
            break;
          case Planned::Rename: {
            auto lines = std::move(files_[op.old_path]);
            files_.erase(op.old_path);
            if (pick(2) == 0) lines[pick(lines.size())] = fresh_line();
            files_[op.path] = std::move(lines);
            body << "D " << op.old_path << "\n";
            body << "M 100644 inline " << op.path << "\n" << data_block(files_[op.path]);
            counted.insert(op.path);
            touched.insert(op.old_path);
            break;
          }
        }
      }
      touched.insert(counted.begin(), counted.end());

      char sign = zone < 0 ? '-' : '+';
      char tz[16];
      std::snprintf(tz, sizeof tz, "%c%02d%02d", sign, std::abs(zone) / 60, std::abs(zone) % 60);
      std::string ident = author.name + " <" + shown_email + "> " + std::to_string(time) + " " + tz;
      stream << "commit refs/heads/main\nmark :" << (i + 1) << "\n";
      stream << "author " << ident << "\ncommitter " << ident << "\n";
      stream << "data " << (msg.size() + 1) << "\n" << msg << "\n";
      if (i > 0) stream << "from :" << i << "\n";
      stream << body.str() << "\n";

      Json c = Json::object();
      c["email"] = author.email;
      c["time"] = time;
      c["tz"] = zone;
      c["message"] = msg;
      c["counted"] = std::vector<std::string>(counted.begin(), counted.end());
      c["touched"] = std::vector<std::string>(touched.begin(), touched.end());
      commits.push_back(std::move(c));
    }

    std::error_code ec;
    fs::create_directories(path, ec);
    if (ec) fail(ErrorCode::Io, "cannot create " + path.string() + ": " + ec.message());
    if (fs::exists(path / ".git")) fail(ErrorCode::Io, path.string() + " already holds a repository");
    run_git(path, {"init", "-q", "--initial-branch=main"});
    fs::path stream_file = path / ".git" / "synthetic.fi";
    fs::path marks_file = path / ".git" / "synthetic.marks";
    {
      std::ofstream out(stream_file, std::ios::binary);
      out << stream.str() << "done\n";
      if (!out) fail(ErrorCode::Io, "cannot write " + stream_file.string());
    }
    if (spec_.commits > 0)
      run_git(path, {"fast-import", "--quiet", "--done", "--export-marks=" + marks_file.string()}, &stream_file);

    std::ifstream marks(marks_file);
    std::string mark, sha;
    while (marks >> mark >> sha) {
      std::size_t index = std::stoul(mark.substr(1)) - 1;
      if (index < commits.size()) commits[index]["sha"] = sha;
    }
    fs::remove(stream_file, ec);
    fs::remove(marks_file, ec);
    if (spec_.commits > 0) run_git(path, {"checkout", "-q", "-f", "main"});

    Json manifest = Json::object();
    manifest["seed"] = spec_.seed;
    manifest["commits"] = commits;
    add_truth(manifest);
    write_json(path / kManifestFile, manifest);
    return manifest;
  }

 private:
  static std::string data_block(const std::vector<std::string>& lines) {
    std::string content;
    for (const auto& l : lines) content += l;
    return "data " + std::to_string(content.size()) + "\n" + content + "\n";
  }

  static void add_truth(Json& manifest) {
    std::map<std::string, std::set<std::string>> changed;
    std::map<std::string, std::map<std::string, std::uint64_t>> assignment;
    std::map<std::pair<std::string, std::string>, std::uint64_t> dependency;
    std::map<std::string, std::map<std::pair<int, int>, std::uint64_t>> work;
    for (const auto& c : manifest["commits"]) {
      auto email = c["email"].get<std::string>();
      auto counted = c["counted"].get<std::vector<std::string>>();
      for (const auto& p : c["touched"]) changed[email].insert(p.get<std::string>());
      for (const auto& p : counted) ++assignment[email][p];
      for (std::size_t i = 0; i < counted.size(); ++i)
        for (std::size_t j = i + 1; j < counted.size(); ++j) ++dependency[{counted[i], counted[j]}];
      ++work[email][miners::local_week_slot(c["time"].get<std::int64_t>(), c["tz"].get<int>())];
    }
    Json truth = Json::object();
    truth["changedFiles"] = Json::object();
    for (const auto& [email, paths] : changed) truth["changedFiles"][email] = std::vector<std::string>(paths.begin(), paths.end());
    truth["assignment"] = assignment;
    Json dep = Json::array();
    for (const auto& [pair, n] : dependency) dep.push_back({pair.first, pair.second, n});
    truth["dependency"] = std::move(dep);
    Json wt = Json::object();
    for (const auto& [email, slots] : work) {
      Json cells = Json::array();
      for (const auto& [slot, n] : slots) cells.push_back({slot.first, slot.second, n});
      wt[email] = std::move(cells);
    }
    truth["workTime"] = std::move(wt);
    manifest["truth"] = std::move(truth);
  }

  SyntheticSpec spec_;
  std::mt19937_64 rng_;
  std::vector<Author> authors_;
  std::map<std::string, std::vector<std::string>> files_;
  std::uint64_t next_line_ = 0;
  std::uint64_t next_path_ = 0;
};

}  // namespace

Json generate_synthetic_repo(const SyntheticSpec& spec, const fs::path& path) {
  if (spec.commits < 1 || spec.authors < 1 || spec.files < 1)
    fail(ErrorCode::InvalidConfig, "synthetic repository parameters must be at least 1");
  return Generator(spec).run(path);
}

}  // namespace stmine::synth
