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


#include "support/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "support/fixture.hpp"

namespace stmine::testing {

namespace fs = std::filesystem;

namespace {

struct Change {
  char status;
  std::string old_path;
  std::string new_path;
};

struct Commit {
  std::string sha;
  std::string key;  // lowercased email or name
  std::vector<std::string> parents;
  std::string message;
  int weekday = 0;
  int hour = 0;
  std::vector<Change> changes;
};

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

class Git {
 public:
  explicit Git(fs::path repo) : prefix_("git -C " + shell_quote(repo.string()) + " ") {}
  std::string operator()(const std::string& args) const { return sh(prefix_ + args); }

 private:
  std::string prefix_;
};

std::vector<Change> name_status(const Git& git, const Commit& c) {
  std::string range = c.parents.empty() ? "--root " + c.sha : c.parents.front() + " " + c.sha;
  auto tokens = split(git("diff-tree -r -z -M50% --name-status --no-commit-id " + range), '\0');
  std::vector<Change> out;
  for (std::size_t i = 0; i < tokens.size();) {
    const std::string& status = tokens[i++];
    Change ch{status[0], {}, {}};
    if (ch.status == 'R' || ch.status == 'C') {
      ch.old_path = tokens[i++];
      ch.new_path = tokens[i++];
    } else if (ch.status == 'A') {
      ch.new_path = tokens[i++];
    } else if (ch.status == 'D') {
      ch.old_path = tokens[i++];
    } else {
      ch.old_path = ch.new_path = tokens[i++];
    }
    out.push_back(ch);
  }
  return out;
}

const std::string& counted_path(const Change& ch) { return ch.status == 'D' ? ch.old_path : ch.new_path; }

std::vector<std::string> blame_shas(const Git& git, const std::string& rev, const std::string& path,
                                    const std::string& range) {
  auto text = git("blame --line-porcelain --first-parent " + range + " " + rev + " -- " + shell_quote(path));
  std::vector<std::string> shas;
  for (const auto& line : split(text, '\n')) {
    if (line.size() > 41 && line[40] == ' ' &&
        std::all_of(line.begin(), line.begin() + 40, [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); }))
      shas.push_back(line.substr(0, 40));
  }
  return shas;
}

std::vector<std::string> blame_mails(const Git& git, const std::string& rev, const std::string& path) {
  auto text = git("blame --line-porcelain --first-parent " + rev + " -- " + shell_quote(path));
  std::vector<std::string> mails;
  std::string name;
  for (const auto& line : split(text, '\n')) {
    if (line.rfind("author ", 0) == 0) name = line.substr(7);
    if (line.rfind("author-mail ", 0) == 0) {
      std::string mail = line.substr(12);
      if (mail.size() >= 2 && mail.front() == '<') mail = mail.substr(1, mail.size() - 2);
      mails.push_back(mail.empty() ? lower(name) : lower(mail));
    }
  }
  return mails;
}

double doa_formula(bool fa, std::uint64_t dl, std::uint64_t ac) {
  double raw = 3.293;
  if (fa) raw += 1.098;
  raw += 0.164 * static_cast<double>(dl);
  raw -= 0.321 * std::log(1.0 + static_cast<double>(ac));
  return raw;
}

}  // namespace

MinedView git_oracle(const fs::path& repo, const OracleOptions& options) {
  Git git(repo);
  std::vector<std::string> branches = options.branches;
  if (branches.empty()) branches = split(git("for-each-ref --sort=refname '--format=%(refname:short)' refs/heads/"), '\n');
  std::sort(branches.begin(), branches.end());

  MinedView view;
  std::vector<Commit> commits;
  std::set<std::string> seen;
  for (const auto& b : branches) {
    auto log = git("log --first-parent -z --date=format:'%u %H' --format='%H%n%ae%n%an%n%ad%n%P%n%B' refs/heads/" + b);
    auto order = split(git("rev-list --first-parent refs/heads/" + b), '\n');
    auto entries = split(log, '\0');
    if (entries.size() != order.size()) throw std::runtime_error("log and rev-list disagree");
    for (std::size_t i = 0; i < entries.size(); ++i) {
      std::istringstream in(entries[i]);
      Commit c;
      std::string email, name, date, parents;
      std::getline(in, c.sha);
      std::getline(in, email);
      std::getline(in, name);
      std::getline(in, date);
      std::getline(in, parents);
      c.message.assign(std::istreambuf_iterator<char>(in), {});
      if (c.sha != order[i]) throw std::runtime_error("log and rev-list order differ");
      if (!seen.insert(c.sha).second) break;
      c.key = email.empty() ? lower(name) : lower(email);
      c.parents = split(parents, ' ');
      int iso_day = 0;
      std::sscanf(date.c_str(), "%d %d", &iso_day, &c.hour);
      c.weekday = iso_day - 1;
      c.changes = name_status(git, c);
      commits.push_back(std::move(c));
    }
  }

  std::map<std::string, std::set<std::string>> creators;
  std::map<std::string, std::map<std::string, std::uint64_t>> deliveries;
  for (auto it = commits.rbegin(); it != commits.rend(); ++it) {
    for (const auto& ch : it->changes) {
      if (ch.status == 'A') creators[ch.new_path].insert(it->key);
      if (ch.status == 'R') {
        auto inherited = creators[ch.old_path];
        creators[ch.new_path].insert(inherited.begin(), inherited.end());
      }
    }
  }

  for (const auto& c : commits) {
    view.commit_order.push_back(c.sha);
    std::set<std::string> counted;
    for (const auto& ch : c.changes) {
      counted.insert(counted_path(ch));
      view.changed_files[c.key].insert(counted_path(ch));
      if (ch.status == 'R') view.changed_files[c.key].insert(ch.old_path);
    }
    for (const auto& p : counted) {
      view.assignment[c.key][p] += 1;
      deliveries[p][c.key] += 1;
    }
    if (counted.size() <= options.max_files_per_commit) {
      std::vector<std::string> v(counted.begin(), counted.end());
      for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) view.dependency[{v[i], v[j]}] += 1;
    }
    view.work_time[c.key][{c.weekday, c.hour}] += 1;

    if (!options.with_blame || lower(c.message).find("fix") == std::string::npos) continue;
    auto& introducers = view.influence[c.sha];
    if (c.parents.empty()) continue;
    for (const auto& ch : c.changes) {
      if (ch.status != 'M' && ch.status != 'D') continue;
      auto patch = git("diff-tree -r -U0 --no-renames " + c.parents.front() + " " + c.sha + " -- " +
                       shell_quote(ch.old_path));
      for (const auto& line : split(patch, '\n')) {
        if (line.rfind("@@ -", 0) != 0) continue;
        unsigned start = 0, len = 1;
        if (std::sscanf(line.c_str(), "@@ -%u,%u", &start, &len) < 1) continue;
        if (len == 0) continue;
        auto range = "-L " + std::to_string(start) + ",+" + std::to_string(len);
        for (const auto& sha : blame_shas(git, c.parents.front(), ch.old_path, range))
          if (sha != c.sha) introducers.insert(sha);
      }
    }
  }

  for (const auto& [path, users] : deliveries) {
    std::uint64_t total = 0;
    for (const auto& [u, n] : users) total += n;
    std::set<std::string> contributors;
    for (const auto& [u, n] : users) contributors.insert(u);
    for (const auto& u : creators[path]) contributors.insert(u);
    std::map<std::string, double> raw;
    double best = -1e300;
    for (const auto& u : contributors) {
      std::uint64_t dl = users.count(u) ? users.at(u) : 0;
      raw[u] = doa_formula(creators[path].count(u) > 0, dl, total - dl);
      best = std::max(best, raw[u]);
    }
    for (const auto& [u, value] : raw) view.doa[u][path] = std::clamp(value / best, 0.0, 1.0);
  }

  if (options.with_blame && !branches.empty() && !commits.empty()) {
    std::string head = split(git("rev-parse refs/heads/" + branches.front()), '\n').front();
    for (const auto& path : split(git("ls-tree -r -z --name-only " + head), '\0')) {
      auto& row = view.lines[path];
      for (const auto& mail : blame_mails(git, head, path)) row[mail] += 1;
    }
  }
  return view;
}

MinedView load_mined(const fs::path& out_dir) {
  auto read = [&](const std::string& name) {
    std::ifstream in(out_dir / name);
    if (!in) throw std::runtime_error("missing output " + name);
    return nlohmann::json::parse(in);
  };
  auto ids = [&](const std::string& name) {
    std::map<std::string, std::string> out;
    auto doc = read(name);
    for (const auto& [k, v] : doc.items()) out[k] = v.get<std::string>();
    return out;
  };
  auto commits = ids("idToCommit.json");
  auto files = ids("idToFile.json");
  auto users = ids("idToUser.json");

  MinedView view;
  for (std::size_t i = 0; i < commits.size(); ++i) view.commit_order.push_back(commits.at(std::to_string(i)));

  if (fs::exists(out_dir / "ChangedFiles.json")) {
    auto doc = read("ChangedFiles.json");
    for (const auto& [u, list] : doc.items())
      for (const auto& f : list) view.changed_files[users.at(u)].insert(files.at(std::to_string(f.get<int>())));
  }
  if (fs::exists(out_dir / "AssignmentMatrix.json")) {
    auto doc = read("AssignmentMatrix.json");
    for (const auto& [u, row] : doc.items())
      for (const auto& [f, n] : row.items()) view.assignment[users.at(u)][files.at(f)] = n.get<std::uint64_t>();
  }
  if (fs::exists(out_dir / "FileDependencyMatrix.json")) {
    auto doc = read("FileDependencyMatrix.json");
    for (const auto& [a, row] : doc.items())
      for (const auto& [b, n] : row.items()) {
        auto pa = files.at(a), pb = files.at(b);
        if (pb < pa) std::swap(pa, pb);
        view.dependency[{pa, pb}] += n.get<std::uint64_t>();
      }
  }
  if (fs::exists(out_dir / "WorkTime.json")) {
    auto doc = read("WorkTime.json");
    for (const auto& [u, grid] : doc.items())
      for (int d = 0; d < 7; ++d)
        for (int h = 0; h < 24; ++h)
          if (auto n = grid.at(d).at(h).get<std::uint64_t>()) view.work_time[users.at(u)][{d, h}] = n;
  }
  if (fs::exists(out_dir / "CommitInfluenceGraph.json")) {
    auto doc = read("CommitInfluenceGraph.json");
    for (const auto& [fix, list] : doc.items()) {
      auto& set = view.influence[commits.at(fix)];
      for (const auto& c : list) set.insert(commits.at(std::to_string(c.get<int>())));
    }
  }
  if (fs::exists(out_dir / "FilesOwnership.json")) {
    auto doc = read("FilesOwnership.json");
    for (const auto& [u, row] : doc["doa"].items())
      for (const auto& [f, v] : row.items()) view.doa[users.at(u)][files.at(f)] = v.get<double>();
    for (const auto& [f, row] : doc["lines"].items()) {
      auto& out = view.lines[files.at(f)];
      for (const auto& [u, n] : row.items()) out[users.at(u)] = n.get<std::uint64_t>();
    }
  }
  return view;
}

namespace {

template <class K, class V, class Fmt>
void compare_maps(const std::string& label, const std::map<K, V>& expected, const std::map<K, V>& actual, Fmt fmt,
                  std::vector<std::string>& out) {
  for (const auto& [k, v] : expected) {
    auto it = actual.find(k);
    if (it == actual.end()) out.push_back(label + ": missing " + fmt(k));
  }
  for (const auto& [k, v] : actual)
    if (!expected.count(k)) out.push_back(label + ": unexpected " + fmt(k));
}

std::string pair_str(const std::pair<std::string, std::string>& p) { return p.first + "|" + p.second; }

}  // namespace

std::vector<std::string> compare(const MinedView& e, const MinedView& a, double tolerance) {
  std::vector<std::string> out;
  if (e.commit_order != a.commit_order) out.push_back("commit order differs");
  auto id = [](const std::string& s) { return s; };

  compare_maps("changed files", e.changed_files, a.changed_files, id, out);
  for (const auto& [u, set] : e.changed_files)
    if (a.changed_files.count(u) && a.changed_files.at(u) != set) out.push_back("changed files differ for " + u);

  compare_maps("assignment", e.assignment, a.assignment, id, out);
  for (const auto& [u, row] : e.assignment)
    if (a.assignment.count(u) && a.assignment.at(u) != row) out.push_back("assignment differs for " + u);

  for (const auto& [p, n] : e.dependency) {
    auto it = a.dependency.find(p);
    if (it == a.dependency.end() || it->second != n)
      out.push_back("dependency " + pair_str(p) + " expected " + std::to_string(n));
  }
  for (const auto& [p, n] : a.dependency)
    if (!e.dependency.count(p)) out.push_back("dependency unexpected " + pair_str(p));

  if (e.work_time != a.work_time) out.push_back("work time differs");

  compare_maps("influence", e.influence, a.influence, id, out);
  for (const auto& [c, set] : e.influence)
    if (a.influence.count(c) && a.influence.at(c) != set) out.push_back("influence differs for " + c);

  compare_maps("doa users", e.doa, a.doa, id, out);
  for (const auto& [u, row] : e.doa) {
    if (!a.doa.count(u)) continue;
    const auto& other = a.doa.at(u);
    compare_maps("doa files of " + u, row, other, id, out);
    for (const auto& [f, v] : row)
      if (other.count(f) && std::abs(other.at(f) - v) > tolerance) out.push_back("doa differs for " + u + " on " + f);
  }

  compare_maps("line ownership", e.lines, a.lines, id, out);
  for (const auto& [f, row] : e.lines)
    if (a.lines.count(f) && a.lines.at(f) != row) out.push_back("line ownership differs for " + f);
  return out;
}

}  // namespace stmine::testing
