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

#include "calc/calculations.hpp"

namespace stmine::calc {

void CommunicationGraph::add_edge(Id a, Id b, double weight) {
  if (a == b) return;
  auto key = std::minmax(a, b);
  auto [it, inserted] = edges_.try_emplace({key.first, key.second}, weight);
  if (!inserted) it->second += weight;
}

bool CommunicationGraph::connected(Id a, Id b) const {
  auto key = std::minmax(a, b);
  return edges_.count({key.first, key.second}) > 0;
}

CongruenceScore compute_mirroring_congruence(const CoordinationNeedsMatrix& required,
                                             const CommunicationGraph& actual, double threshold) {
  CongruenceScore score;
  const std::size_t n = required.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!(required(i, j) > threshold)) continue;
      ++score.need_pairs;
      if (actual.connected(static_cast<Id>(i), static_cast<Id>(j))) ++score.matched;
    }
  score.value = score.need_pairs == 0
                    ? 1.0
                    : static_cast<double>(score.matched) / static_cast<double>(score.need_pairs);
  return score;
}

CommunicationGraph proxy_communication(std::vector<FileTouch> touches, std::int64_t window_seconds) {
  std::sort(touches.begin(), touches.end(), [](const FileTouch& a, const FileTouch& b) {
    if (a.file != b.file) return a.file < b.file;
    if (a.time != b.time) return a.time < b.time;
    return a.user < b.user;
  });
  CommunicationGraph graph;
  for (std::size_t i = 0; i < touches.size(); ++i)
    for (std::size_t j = i + 1; j < touches.size(); ++j) {
      if (touches[j].file != touches[i].file || touches[j].time - touches[i].time > window_seconds) break;
      if (touches[i].user != touches[j].user && !graph.connected(touches[i].user, touches[j].user))
        graph.add_edge(touches[i].user, touches[j].user);
    }
  return graph;
}

}  // namespace stmine::calc
