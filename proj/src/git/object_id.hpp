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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace stmine::git {

/// 20-byte SHA-1 object name.
class ObjectId {
 public:
  static constexpr std::size_t kRawSize = 20;
  static constexpr std::size_t kHexSize = 40;

  ObjectId() = default;

  static ObjectId from_raw(const std::uint8_t* raw);
  /// Accepts exactly 40 hex digits in either case.
  static std::optional<ObjectId> from_hex(std::string_view hex);

  std::string hex() const;
  const std::array<std::uint8_t, kRawSize>& raw() const noexcept { return bytes_; }
  bool is_zero() const noexcept;

  friend bool operator==(const ObjectId&, const ObjectId&) = default;
  friend auto operator<=>(const ObjectId&, const ObjectId&) = default;

 private:
  std::array<std::uint8_t, kRawSize> bytes_{};
};

struct ObjectIdHash {
  std::size_t operator()(const ObjectId& id) const noexcept {
    std::size_t h = 0;
    for (int i = 0; i < 8; ++i) h = (h << 8) | id.raw()[i];
    return h;
  }
};

}  // namespace stmine::git
