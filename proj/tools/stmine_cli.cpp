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


#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stmine/stmine.h"

namespace {

struct Options {
  std::string repo;
  std::vector<std::string> branches;
  int64_t threads = 1;
  std::string output = "out";
  int64_t rename_threshold = 50;
  bool no_renames = false;
  bool all_parents = false;
  int64_t max_files = 500;
  std::string fix_pattern;
  std::string aliases;
  std::string communication;
  double damping = 0.85;
  double tol = 1e-9;
  int64_t max_iter = 100;
  double need_threshold = 0.0;
  int64_t proxy_window_days = 30;
};

struct Synthetic {
  uint64_t commits = 100;
  uint64_t authors = 4;
  uint64_t files = 20;
  uint64_t seed = 1;
  std::string path;
};

int exit_code(stm_status status) {
  switch (status) {
    case STM_OK: return 0;
    case STM_ERR_INVALID_CONFIG:
    case STM_ERR_INVALID_ARGUMENT: return 2;
    default: return 1;
  }
}

int report_failure(stm_status status) {
  std::fprintf(stderr, "stmine: %s: %s\n", stm_status_name(status), stm_last_error());
  return exit_code(status);
}

void add_run_options(CLI::App& cmd, Options& o) {
  cmd.add_option("--repo", o.repo, "Path to the repository (work tree or bare)")->required();
  cmd.add_option("--branches", o.branches, "Branches to mine (default: all local branches)")->delimiter(',');
  cmd.add_option("--threads", o.threads, "Worker threads")->capture_default_str();
  cmd.add_option("--output", o.output, "Output directory")->capture_default_str();
  cmd.add_option("--rename-threshold", o.rename_threshold, "Rename similarity threshold in percent")
      ->capture_default_str();
  cmd.add_flag("--no-renames", o.no_renames, "Disable rename detection");
  cmd.add_flag("--all-parents", o.all_parents, "Also diff merge commits against non-first parents");
  cmd.add_option("--max-files-per-commit", o.max_files, "Commits touching more files are skipped by the dependency miner")
      ->capture_default_str();
  cmd.add_option("--fix-pattern", o.fix_pattern, "Regex marking fix commits (default: substring \"fix\")");
  cmd.add_option("--aliases", o.aliases, "JSON object mapping identities to canonical ones");
  cmd.add_option("--communication", o.communication, "JSON communication edges for congruence");
  cmd.add_option("--damping", o.damping, "PageRank damping factor")->capture_default_str();
  cmd.add_option("--tol", o.tol, "PageRank L1 tolerance")->capture_default_str();
  cmd.add_option("--max-iter", o.max_iter, "PageRank iteration cap")->capture_default_str();
  cmd.add_option("--need-threshold", o.need_threshold, "Coordination need above which a pair is required")
      ->capture_default_str();
  cmd.add_option("--proxy-window-days", o.proxy_window_days, "Co-commit window for proxy communication")
      ->capture_default_str();
}

int run(const Options& o, const std::vector<std::string>& miners, const std::vector<std::string>& calcs) {
  std::unique_ptr<stm_config, decltype(&stm_config_free)> config(stm_config_new(), stm_config_free);
  if (!config) return report_failure(STM_ERR_INTERNAL);
  auto* c = config.get();
  std::vector<stm_status> steps{
      stm_config_set_repo(c, o.repo.c_str()),
      stm_config_set_output(c, o.output.c_str()),
      stm_config_set_threads(c, o.threads),
      stm_config_set_rename_detection(c, o.no_renames ? 0 : 1),
      stm_config_set_rename_threshold(c, o.rename_threshold),
      stm_config_set_all_parents(c, o.all_parents ? 1 : 0),
      stm_config_set_max_files_per_commit(c, o.max_files),
      stm_config_set_pagerank(c, o.damping, o.tol, o.max_iter),
      stm_config_set_need_threshold(c, o.need_threshold),
      stm_config_set_proxy_window_days(c, o.proxy_window_days),
  };
  if (!o.fix_pattern.empty()) steps.push_back(stm_config_set_fix_pattern(c, o.fix_pattern.c_str()));
  if (!o.aliases.empty()) steps.push_back(stm_config_set_aliases(c, o.aliases.c_str()));
  if (!o.communication.empty()) steps.push_back(stm_config_set_communication(c, o.communication.c_str()));
  for (const auto& b : o.branches) steps.push_back(stm_config_add_branch(c, b.c_str()));
  for (const auto& m : miners) steps.push_back(stm_config_enable_miner(c, m.c_str()));
  for (const auto& k : calcs) steps.push_back(stm_config_enable_calculation(c, k.c_str()));
  for (auto s : steps)
    if (s != STM_OK) return report_failure(s);

  stm_report report{};
  if (auto s = stm_run(c, &report); s != STM_OK) return report_failure(s);
  std::printf("mined %llu commits (%llu pairs), %llu files, %llu developers in %.2fs -> %s\n",
              static_cast<unsigned long long>(report.commits), static_cast<unsigned long long>(report.commit_pairs),
              static_cast<unsigned long long>(report.files), static_cast<unsigned long long>(report.users),
              report.wall_seconds, o.output.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Socio-technical data miner for git repositories"};
  app.set_version_flag("--version", std::string(stm_version()));
  app.require_subcommand(1);

  struct Command {
    const char* name;
    const char* help;
    std::vector<std::string> miners;
    std::vector<std::string> calcs;
  };
  const std::vector<Command> commands{
      {"changed-files", "Files changed by each developer", {"changed-files"}, {}},
      {"assignment-matrix", "Developer x file commit counts", {"assignment-matrix"}, {}},
      {"file-dependency", "File co-change counts", {"file-dependency"}, {}},
      {"work-time", "Commits per developer by local weekday and hour", {"work-time"}, {}},
      {"commit-influence", "Fix commits linked to the commits that introduced the changed lines", {"commit-influence"}, {}},
      {"files-ownership", "Degree of authorship and surviving lines per file", {"files-ownership"}, {}},
      {"coordination-needs", "Developer coordination needs from assignment and dependency", {}, {"coordination-needs"}},
      {"congruence", "Socio-technical congruence", {}, {"congruence"}},
      {"pagerank", "PageRank over the commit influence graph", {}, {"pagerank"}},
  };

  Options options;
  std::optional<std::size_t> chosen;
  bool all = false;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    auto* cmd = app.add_subcommand(commands[i].name, commands[i].help);
    add_run_options(*cmd, options);
    cmd->callback([&chosen, i] { chosen = i; });
  }
  auto* all_cmd = app.add_subcommand("all", "Every miner and calculation");
  add_run_options(*all_cmd, options);
  all_cmd->callback([&all] { all = true; });

  Synthetic synth;
  bool generate = false;
  auto* gen = app.add_subcommand("generate-synthetic", "Create a seeded fixture repository");
  gen->add_option("path", synth.path, "Directory to create")->required();
  gen->add_option("--commits", synth.commits)->capture_default_str();
  gen->add_option("--authors", synth.authors)->capture_default_str();
  gen->add_option("--files", synth.files)->capture_default_str();
  gen->add_option("--seed", synth.seed)->capture_default_str();
  gen->callback([&generate] { generate = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (generate) {
    auto s = stm_generate_synthetic_repo(synth.commits, synth.authors, synth.files, synth.seed, synth.path.c_str());
    return s == STM_OK ? 0 : report_failure(s);
  }
  if (all) {
    std::vector<std::string> miners{"changed-files", "assignment-matrix", "file-dependency",
                                    "work-time",     "commit-influence",  "files-ownership"};
    return run(options, miners, {"coordination-needs", "congruence", "pagerank"});
  }
  const auto& cmd = commands.at(*chosen);
  return run(options, cmd.miners, cmd.calcs);
}
