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
#include "core/error.hpp"

namespace stmine::calc {

double CoordinationNeedsMatrix::max() const {
  double best = 0.0;
  for (double v : values_) best = std::max(best, v);
  return best;
}

Json CoordinationNeedsMatrix::to_json() const {
  Json doc = Json::object();
  for (std::size_t i = 0; i < n_; ++i) {
    Json row = Json::object();
    for (std::size_t j = 0; j < n_; ++j)
      if ((*this)(i, j) != 0.0) row[std::to_string(j)] = (*this)(i, j);
    if (!row.empty()) doc[std::to_string(i)] = std::move(row);
  }
  return doc;
}

CoordinationNeedsMatrix compute_coordination_needs(const miners::AssignmentMatrix& assignment,
                                                   const miners::FileDependencyMatrix& dependency,
                                                   std::size_t users) {
  const bool shapeless = dependency.rows() == 0 && dependency.cols() == 0;
  if (!shapeless && (dependency.rows() != dependency.cols() || dependency.rows() != assignment.cols()))
    fail(ErrorCode::DimensionMismatch,
         "assignment has " + std::to_string(assignment.cols()) + " files but dependency is " +
             std::to_string(dependency.rows()) + "x" + std::to_string(dependency.cols()));

  const std::size_t n = std::max(users, assignment.rows());
  CoordinationNeedsMatrix needs(n);
  if (shapeless) return needs;

  // Column view of A: file -> (user, count).
  std::map<Id, std::vector<std::pair<Id, double>>> by_file;
  for (const auto& [u, row] : assignment.data())
    for (const auto& [f, count] : row) by_file[f].emplace_back(u, static_cast<double>(count));

  for (const auto& [u, row] : assignment.data()) {
    std::map<Id, double> through;  // (A · D) row u
    for (const auto& [f, a] : row) {
      auto deps = dependency.data().find(f);
      if (deps == dependency.data().end()) continue;
      for (const auto& [g, d] : deps->second) through[g] += static_cast<double>(a) * static_cast<double>(d);
    }
    for (const auto& [g, t] : through) {
      auto users_of_g = by_file.find(g);
      if (users_of_g == by_file.end()) continue;
      for (const auto& [v, a] : users_of_g->second) needs(u, v) += t * a;
    }
  }

  for (std::size_t i = 0; i < n; ++i) needs(i, i) = 0.0;
  const double top = needs.max();
  if (top > 0.0)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) needs(i, j) /= top;
  return needs;
}

}  // namespace stmine::calc
