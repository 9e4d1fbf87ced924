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


#include "pipeline/pipeline.hpp"

#include <array>
#include <chrono>

#include "core/error.hpp"
#include "core/json_io.hpp"

namespace stmine::pipeline {

namespace fs = std::filesystem;

namespace {

constexpr std::array<std::pair<MinerKind, std::string_view>, 6> kMinerNames{{
    {MinerKind::ChangedFiles, "changed-files"},
    {MinerKind::AssignmentMatrix, "assignment-matrix"},
    {MinerKind::FileDependency, "file-dependency"},
    {MinerKind::WorkTime, "work-time"},
    {MinerKind::CommitInfluence, "commit-influence"},
    {MinerKind::FilesOwnership, "files-ownership"},
}};

constexpr std::array<std::pair<CalcKind, std::string_view>, 3> kCalcNames{{
    {CalcKind::CoordinationNeeds, "coordination-needs"},
    {CalcKind::Congruence, "congruence"},
    {CalcKind::PageRank, "pagerank"},
}};

std::unique_ptr<miners::Miner> make_miner(MinerKind kind, const RunConfig& config) {
  switch (kind) {
    case MinerKind::ChangedFiles: return std::make_unique<miners::ChangedFilesMiner>();
    case MinerKind::AssignmentMatrix: return std::make_unique<miners::AssignmentMatrixMiner>();
    case MinerKind::FileDependency: return std::make_unique<miners::FileDependencyMiner>(config.max_files_per_commit);
    case MinerKind::WorkTime: return std::make_unique<miners::WorkTimeMiner>();
    case MinerKind::CommitInfluence:
      return std::make_unique<miners::CommitInfluenceMiner>(
          config.fix_pattern.empty() ? miners::FixMatcher{} : miners::FixMatcher(config.fix_pattern));
    case MinerKind::FilesOwnership: return std::make_unique<miners::FilesOwnershipMiner>();
  }
  fail(ErrorCode::InvalidConfig, "unknown miner");
}

git::DiffOptions diff_options(const RunConfig& config, bool with_hunks) {
  git::DiffOptions d;
  d.detect_renames = config.detect_renames;
  d.rename_threshold = config.rename_threshold;
  d.with_hunks = with_hunks;
  return d;
}

template <class T>
T* find_miner(std::vector<std::unique_ptr<miners::Miner>>& all) {
  for (auto& m : all)
    if (auto* typed = dynamic_cast<T*>(m.get())) return typed;
  return nullptr;
}

Json config_echo(const RunConfig& c) {
  Json doc = Json::object();
  doc["repo"] = c.repo_path.string();
  if (std::holds_alternative<git::AllBranches>(c.branches)) doc["branches"] = "ALL";
  else doc["branches"] = std::get<std::vector<std::string>>(c.branches);
  Json miners = Json::array();
  for (auto m : c.effective_miners()) miners.push_back(std::string(to_string(m)));
  doc["miners"] = std::move(miners);
  Json calcs = Json::array();
  for (auto k : c.effective_calculations()) calcs.push_back(std::string(to_string(k)));
  doc["calculations"] = std::move(calcs);
  doc["threads"] = c.threads;
  doc["renameDetection"] = c.detect_renames;
  doc["renameThreshold"] = c.rename_threshold;
  doc["allParents"] = c.all_parents;
  doc["maxFilesPerCommit"] = c.max_files_per_commit;
  doc["fixPattern"] = c.fix_pattern.empty() ? Json("fix") : Json(c.fix_pattern);
  doc["damping"] = c.pagerank.damping;
  doc["tol"] = c.pagerank.tolerance;
  doc["maxIter"] = c.pagerank.max_iterations;
  doc["needThreshold"] = c.need_threshold;
  doc["aliases"] = c.aliases_path ? Json(c.aliases_path->string()) : Json(nullptr);
  doc["communication"] = c.communication_path ? Json(c.communication_path->string()) : Json(nullptr);
  doc["proxyWindowDays"] = c.proxy_window_days;
  return doc;
}

}  // namespace

std::string_view to_string(MinerKind kind) noexcept {
  for (const auto& [k, name] : kMinerNames)
    if (k == kind) return name;
  return "?";
}

std::string_view to_string(CalcKind kind) noexcept {
  for (const auto& [k, name] : kCalcNames)
    if (k == kind) return name;
  return "?";
}

std::optional<MinerKind> miner_from_string(std::string_view name) noexcept {
  for (const auto& [k, n] : kMinerNames)
    if (n == name) return k;
  return std::nullopt;
}

std::optional<CalcKind> calculation_from_string(std::string_view name) noexcept {
  for (const auto& [k, n] : kCalcNames)
    if (n == name) return k;
  return std::nullopt;
}

const std::vector<MinerKind>& all_miners() {
  static const std::vector<MinerKind> kinds = [] {
    std::vector<MinerKind> v;
    for (const auto& [k, _] : kMinerNames) v.push_back(k);
    return v;
  }();
  return kinds;
}

const std::vector<CalcKind>& all_calculations() {
  static const std::vector<CalcKind> kinds = [] {
    std::vector<CalcKind> v;
    for (const auto& [k, _] : kCalcNames) v.push_back(k);
    return v;
  }();
  return kinds;
}

void RunConfig::validate() const {
  auto invalid = [](const std::string& what) { fail(ErrorCode::InvalidConfig, what); };
  if (repo_path.empty()) invalid("--repo is required");
  if (threads < 1) invalid("--threads must be at least 1");
  if (output_dir.empty()) invalid("--output must not be empty");
  if (rename_threshold < 0 || rename_threshold > 100) invalid("--rename-threshold must lie in [0, 100]");
  if (max_files_per_commit < 1) invalid("--max-files-per-commit must be at least 1");
  if (!(pagerank.damping > 0.0 && pagerank.damping < 1.0)) invalid("--damping must lie in (0, 1)");
  if (!(pagerank.tolerance > 0.0)) invalid("--tol must be positive");
  if (pagerank.max_iterations < 1) invalid("--max-iter must be at least 1");
  if (!(need_threshold >= 0.0 && need_threshold < 1.0)) invalid("--need-threshold must lie in [0, 1)");
  if (proxy_window_days < 0) invalid("--proxy-window-days must not be negative");
  if (std::holds_alternative<std::vector<std::string>>(branches) &&
      std::get<std::vector<std::string>>(branches).empty())
    invalid("--branches must name at least one branch");
  if (miners.empty() && calculations.empty()) invalid("nothing selected to mine or calculate");
  if (!fix_pattern.empty()) miners::FixMatcher probe(fix_pattern);
}

std::set<CalcKind> RunConfig::effective_calculations() const {
  std::set<CalcKind> out = calculations;
  if (out.count(CalcKind::Congruence)) out.insert(CalcKind::CoordinationNeeds);
  return out;
}

std::set<MinerKind> RunConfig::effective_miners() const {
  std::set<MinerKind> out = miners;
  auto calcs = effective_calculations();
  if (calcs.count(CalcKind::CoordinationNeeds)) {
    out.insert(MinerKind::AssignmentMatrix);
    out.insert(MinerKind::FileDependency);
  }
  if (calcs.count(CalcKind::PageRank)) out.insert(MinerKind::CommitInfluence);
  return out;
}

PreparedHistory prepare_history(const RunConfig& config, const ThreadPool& pool, bool with_hunks) {
  PreparedHistory h;
  if (config.aliases_path) h.registries.aliases = mappers::AliasTable::load(*config.aliases_path);
  h.repo = git::Repository::open(config.repo_path);
  h.branches = h.repo->resolve_branches(config.branches);
  if (!h.branches.empty()) h.head = h.branches.front().tip;

  git::WalkOptions walk;
  walk.all_parents = config.all_parents;
  auto pairs = h.repo->walk_commit_pairs(h.branches, walk);
  h.pair_count = pairs.size();

  // Pass 1: commits and developers, in traversal order.
  std::vector<std::size_t> record_of_pair(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& meta = pairs[i].current;
    if (h.records.empty() || h.records.back().meta->sha != meta->sha) {
      miners::CommitRecord r;
      r.meta = meta;
      r.commit = h.registries.commits.add(meta->sha.hex());
      r.user = h.registries.add_user(*meta);
      h.records.push_back(std::move(r));
    }
    record_of_pair[i] = h.records.size() - 1;
  }

  // Pass 2a: tree diffs in parallel, each into its own slot.
  auto options = diff_options(config, with_hunks);
  std::vector<std::vector<git::FileChange>> diffs(pairs.size());
  pool.parallel_for(pairs.size(), [&](std::size_t, std::size_t i) {
    diffs[i] = git::compute_diff(*h.repo, pairs[i], options);
  });
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto& r = h.records[record_of_pair[i]];
    bool first_parent = !pairs[i].parent || pairs[i].parent->sha == r.meta->parent_shas.front();
    auto& target = first_parent && r.changes.empty() ? r.changes : r.extra_changes;
    std::move(diffs[i].begin(), diffs[i].end(), std::back_inserter(target));
  }

  // File ids, in traversal order.
  for (auto& r : h.records) miners::resolve_files(r, h.registries.files);
  return h;
}

void run_miners(const PreparedHistory& history, const RunConfig& config, ThreadPool& pool,
                std::vector<std::unique_ptr<miners::Miner>>& miners) {
  miners::MiningContext ctx;
  ctx.repo = history.repo.get();
  ctx.registries = &history.registries;
  ctx.diff = diff_options(config, false);
  ctx.head = history.head;
  ctx.pool = &pool;

  const std::size_t workers = pool.size();
  // forks[w][m]: worker w's private copy of miner m.
  std::vector<std::vector<std::unique_ptr<miners::Miner>>> forks(workers);
  for (auto& per_worker : forks)
    for (const auto& m : miners) per_worker.push_back(m->fork());

  pool.parallel_for(history.records.size(), [&](std::size_t worker, std::size_t i) {
    for (auto& m : forks[worker]) m->process(history.records[i], ctx);
  });
  for (auto& per_worker : forks)
    for (std::size_t m = 0; m < miners.size(); ++m) miners[m]->merge(std::move(*per_worker[m]));
  for (auto& m : miners) m->finish(ctx);
}

calc::CommunicationGraph load_communication(const fs::path& path, const mappers::Registries& registries,
                                            std::size_t* unknown) {
  Json doc = read_json(path);
  const Json* edges = &doc;
  if (doc.is_object() && doc.contains("edges")) edges = &doc["edges"];
  if (!edges->is_array()) fail(ErrorCode::Schema, path.string() + ": expected an array of edges");
  calc::CommunicationGraph graph;
  std::size_t skipped = 0;
  for (const auto& e : *edges) {
    std::string a, b;
    double weight = 1.0;
    if (e.is_array() && e.size() == 2 && e[0].is_string() && e[1].is_string()) {
      a = e[0].get<std::string>();
      b = e[1].get<std::string>();
    } else if (e.is_object() && e.contains("from") && e.contains("to") && e["from"].is_string() &&
               e["to"].is_string()) {
      a = e["from"].get<std::string>();
      b = e["to"].get<std::string>();
      if (e.contains("weight")) {
        if (!e["weight"].is_number()) fail(ErrorCode::Schema, path.string() + ": weight must be a number");
        weight = e["weight"].get<double>();
      }
    } else {
      fail(ErrorCode::Schema, path.string() + ": malformed edge " + e.dump());
    }
    auto ua = registries.users.find(registries.aliases.canonical(a));
    auto ub = registries.users.find(registries.aliases.canonical(b));
    if (!ua || !ub) {
      ++skipped;
      continue;
    }
    graph.add_edge(*ua, *ub, weight);
  }
  if (unknown) *unknown = skipped;
  return graph;
}

RunReport run(const RunConfig& config) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();
  ThreadPool pool(config.threads);

  const auto selected = config.effective_miners();
  const auto calcs = config.effective_calculations();
  std::vector<std::unique_ptr<miners::Miner>> active;
  for (auto kind : all_miners())
    if (selected.count(kind)) active.push_back(make_miner(kind, config));
  bool with_hunks = false;
  for (const auto& m : active) with_hunks |= m->needs_hunks();

  PreparedHistory history = prepare_history(config, pool, with_hunks);
  run_miners(history, config, pool, active);

  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) fail(ErrorCode::Io, "cannot create " + config.output_dir.string() + ": " + ec.message());

  RunReport report;
  report.commits = history.records.size();
  report.pairs = history.pair_count;
  report.files = history.registries.files.size();
  report.users = history.registries.users.size();

  auto emit = [&](const std::string& file, const Json& doc) {
    write_json(config.output_dir / file, doc);
    report.outputs.push_back(file);
  };

  mappers::save_mappings(history.registries, config.output_dir);
  report.outputs.insert(report.outputs.end(), {mappers::kCommitMapFile, mappers::kFileMapFile, mappers::kUserMapFile});
  for (const auto& m : active) emit(std::string(m->name()) + ".json", m->to_json());
  if (auto* dep = find_miner<miners::FileDependencyMiner>(active)) report.skipped_commits = dep->skipped_commits();

  Json calc_meta = Json::object();
  std::optional<calc::CoordinationNeedsMatrix> needs;
  if (calcs.count(CalcKind::CoordinationNeeds)) {
    auto assignment = find_miner<miners::AssignmentMatrixMiner>(active)->result();
    auto dependency = find_miner<miners::FileDependencyMiner>(active)->result();
    const std::size_t files = history.registries.files.size();
    assignment.reshape(history.registries.users.size(), files);
    dependency.reshape(files, files);
    needs = calc::compute_coordination_needs(assignment, dependency, history.registries.users.size());
    emit("CoordinationNeeds.json", needs->to_json());
  }
  if (calcs.count(CalcKind::Congruence)) {
    calc::CommunicationGraph actual;
    Json doc = Json::object();
    std::string mode;
    if (config.communication_path) {
      std::size_t unknown = 0;
      actual = load_communication(*config.communication_path, history.registries, &unknown);
      mode = "external";
      calc_meta["communicationUnknownIdentities"] = unknown;
    } else {
      std::vector<calc::FileTouch> touches;
      for (const auto& r : history.records)
        for (miners::Id f : r.counted_files) touches.push_back({f, r.user, r.meta->author_time});
      actual = calc::proxy_communication(std::move(touches), std::int64_t{config.proxy_window_days} * 86400);
      mode = "proxy";
      calc_meta["proxyWindowDays"] = config.proxy_window_days;
    }
    auto score = calc::compute_mirroring_congruence(*needs, actual, config.need_threshold);
    doc["value"] = score.value;
    doc["needPairs"] = score.need_pairs;
    doc["matched"] = score.matched;
    doc["mode"] = mode;
    emit("Congruence.json", doc);
  }
  if (calcs.count(CalcKind::PageRank)) {
    const auto& graph = find_miner<miners::CommitInfluenceMiner>(active)->result();
    Json doc = Json::object();
    if (!graph.empty()) {
      auto pr = calc::compute_pagerank(graph, config.pagerank);
      for (const auto& [id, rank] : pr.ranks) doc[std::to_string(id)] = rank;
      calc_meta["pagerankIterations"] = pr.iterations;
      calc_meta["pagerankConverged"] = pr.converged;
    } else {
      calc_meta["pagerankIterations"] = 0;
      calc_meta["pagerankConverged"] = true;
    }
    emit("PageRank.json", doc);
  }

  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  Json meta = Json::object();
  meta["config"] = config_echo(config);
  Json branches = Json::array();
  for (const auto& b : history.branches) branches.push_back({{"name", b.name}, {"tip", b.tip.hex()}});
  meta["resolvedBranches"] = std::move(branches);
  meta["commits"] = report.commits;
  meta["commitPairs"] = report.pairs;
  meta["files"] = report.files;
  meta["users"] = report.users;
  meta["skippedCommits"] = report.skipped_commits;
  meta["calculations"] = std::move(calc_meta);
  meta["outputs"] = report.outputs;
  meta["wallSeconds"] = report.wall_seconds;
  write_json(config.output_dir / "run_meta.json", meta);
  report.outputs.push_back("run_meta.json");
  return report;
}

}  // namespace stmine::pipeline
