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

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>

#include "core/error.hpp"
#include "core/json_io.hpp"

namespace stmine::miners {

/// Sparse matrix keyed by numeric id pairs. The shape grows with the largest
/// index written and can be widened explicitly to match an id space.
template <class T>
class SparseMatrix {
 public:
  using Index = std::uint32_t;
  using Row = std::map<Index, T>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  void add(Index r, Index c, T value) {
    data_[r][c] += value;
    rows_ = std::max<std::size_t>(rows_, std::size_t{r} + 1);
    cols_ = std::max<std::size_t>(cols_, std::size_t{c} + 1);
  }

  T get(Index r, Index c) const {
    auto row = data_.find(r);
    if (row == data_.end()) return T{};
    auto cell = row->second.find(c);
    return cell == row->second.end() ? T{} : cell->second;
  }

  /// Widens the shape; throws DimensionMismatch if entries fall outside it.
  void reshape(std::size_t rows, std::size_t cols) {
    if (rows < rows_ || cols < cols_)
      fail(ErrorCode::DimensionMismatch, "reshape would drop entries");
    rows_ = rows;
    cols_ = cols;
  }

  void merge(const SparseMatrix& other) {
    for (const auto& [r, row] : other.data_)
      for (const auto& [c, v] : row) add(r, c, v);
    rows_ = std::max(rows_, other.rows_);
    cols_ = std::max(cols_, other.cols_);
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }
  const std::map<Index, Row>& data() const noexcept { return data_; }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& [r, row] : data_) n += row.size();
    return n;
  }

  T sum() const {
    T total{};
    for (const auto& [r, row] : data_)
      for (const auto& [c, v] : row) total += v;
    return total;
  }

  /// {"row": {"col": value}} with ids as decimal strings in numeric order.
  /// `upper_only` keeps only entries with row < col.
  Json to_json(bool upper_only = false) const {
    Json doc = Json::object();
    for (const auto& [r, row] : data_) {
      Json cells = Json::object();
      for (const auto& [c, v] : row)
        if (!upper_only || r < c) cells[std::to_string(c)] = v;
      if (!cells.empty()) doc[std::to_string(r)] = std::move(cells);
    }
    return doc;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) { return a.data_ == b.data_; }

 private:
  std::map<Index, Row> data_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
};

}  // namespace stmine::miners
