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
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "core/json_io.hpp"
#include "miners/miners.hpp"

namespace stmine::calc {

using miners::Id;

/// Dense users x users matrix; values in [0, 1].
class CoordinationNeedsMatrix {
 public:
  CoordinationNeedsMatrix() = default;
  explicit CoordinationNeedsMatrix(std::size_t users) : n_(users), values_(users * users, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }
  double max() const;

  /// {"i": {"j": value}} for non-zero entries only.
  Json to_json() const;

  friend bool operator==(const CoordinationNeedsMatrix&, const CoordinationNeedsMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

/// Unordered people-layer edges; self-loops are dropped on insert.
class CommunicationGraph {
 public:
  void add_edge(Id a, Id b, double weight = 1.0);
  bool connected(Id a, Id b) const;
  std::size_t size() const noexcept { return edges_.size(); }
  const std::map<std::pair<Id, Id>, double>& edges() const noexcept { return edges_; }

 private:
  std::map<std::pair<Id, Id>, double> edges_;
};

struct CongruenceScore {
  double value = 1.0;
  std::size_t need_pairs = 0;
  std::size_t matched = 0;
};

/// raw = A · D · Aᵀ with the diagonal zeroed, divided by its largest entry.
/// `users` widens the output beyond A.rows(). A dependency matrix with no
/// shape (0 x 0) acts as all-zero; otherwise its shape must match A's file
/// space or DimensionMismatch is thrown.
CoordinationNeedsMatrix compute_coordination_needs(const miners::AssignmentMatrix& assignment,
                                                   const miners::FileDependencyMatrix& dependency,
                                                   std::size_t users = 0);

/// Share of required pairs (need above `threshold`) that also communicate.
/// With no required pairs the score is 1.
CongruenceScore compute_mirroring_congruence(const CoordinationNeedsMatrix& required,
                                             const CommunicationGraph& actual, double threshold = 0.0);

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-9;
  int max_iterations = 100;
};

struct PageRankResult {
  std::map<Id, double> ranks;
  int iterations = 0;
  bool converged = false;
};

/// Power iteration over fix -> introducer edges. Nodes are every id used as
/// a key or a target; dangling mass is spread uniformly. Throws EmptyGraph.
PageRankResult compute_pagerank(const miners::CommitInfluenceGraph& graph, const PageRankOptions& options = {});

/// Co-commit proxy for communication: two developers are linked when they
/// changed the same file within `window_seconds` of each other.
struct FileTouch {
  Id file;
  Id user;
  std::int64_t time;
};
CommunicationGraph proxy_communication(std::vector<FileTouch> touches, std::int64_t window_seconds);

}  // namespace stmine::calc
