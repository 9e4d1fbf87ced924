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


#include <algorithm>
#include <cmath>
#include <set>

#include "calc/calculations.hpp"
#include "core/error.hpp"

namespace stmine::calc {

PageRankResult compute_pagerank(const miners::CommitInfluenceGraph& graph, const PageRankOptions& options) {
  if (!(options.damping > 0.0 && options.damping < 1.0))
    fail(ErrorCode::InvalidConfig, "damping must lie in (0, 1)");

  std::set<Id> nodes;
  for (const auto& [from, targets] : graph) {
    nodes.insert(from);
    nodes.insert(targets.begin(), targets.end());
  }
  if (nodes.empty()) fail(ErrorCode::EmptyGraph, "commit influence graph has no nodes");

  std::map<Id, std::size_t> index;
  for (Id id : nodes) index.emplace(id, index.size());
  const std::size_t n = nodes.size();
  std::vector<std::vector<std::size_t>> out(n);
  for (const auto& [from, targets] : graph) {
    std::set<std::size_t> unique;
    for (Id t : targets) unique.insert(index.at(t));
    out[index.at(from)].assign(unique.begin(), unique.end());
  }

  const double d = options.damping;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> rank(n, inv_n), next(n);
  PageRankResult result;
  if (std::all_of(out.begin(), out.end(), [](const auto& targets) { return targets.empty(); })) {
    result.converged = true;
    for (Id id : nodes) result.ranks[id] = inv_n;
    return result;
  }
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    double dangling = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (out[i].empty()) dangling += rank[i];
    const double base = (1.0 - d) * inv_n + d * dangling * inv_n;
    std::fill(next.begin(), next.end(), base);
    for (std::size_t i = 0; i < n; ++i) {
      if (out[i].empty()) continue;
      const double share = d * rank[i] / static_cast<double>(out[i].size());
      for (auto j : out[i]) next[j] += share;
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change += std::fabs(next[i] - rank[i]);
    rank.swap(next);
    result.iterations = iter + 1;
    if (change < options.tolerance) {
      result.converged = true;
      break;
    }
  }

  double total = 0.0;
  for (double r : rank) total += r;
  for (Id id : nodes) result.ranks[id] = rank[index.at(id)] / total;
  return result;
}

}  // namespace stmine::calc
