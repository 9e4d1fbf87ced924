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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "git/repository.hpp"

namespace stmine::mappers {

using Id = std::uint32_t;

enum class EntityKind { Commit, File, User };

/// Many-to-one identity aliases, keyed and valued by lowercased identities.
/// Chains are collapsed on construction so canonicalization is idempotent.
class AliasTable {
 public:
  AliasTable() = default;
  explicit AliasTable(const std::map<std::string, std::string>& aliases);

  /// Reads a JSON object {"alias": "canonical"}.
  static AliasTable load(const std::filesystem::path& path);

  /// Lowercases, then maps through the table.
  std::string canonical(std::string_view identity) const;
  std::size_t size() const noexcept { return table_.size(); }

 private:
  std::unordered_map<std::string, std::string> table_;
};

std::string to_lower(std::string_view s);

/// Dense entity <-> id bijection; ids follow first-registration order.
class IdRegistry {
 public:
  explicit IdRegistry(EntityKind kind) : kind_(kind) {}

  /// Throws EmptyEntity for an empty string.
  Id add(std::string_view entity);
  std::optional<Id> find(std::string_view entity) const;
  /// Like find() but throws std::out_of_range for unknown entities.
  Id at(std::string_view entity) const;
  const std::string& entity(Id id) const { return reverse_.at(id); }

  std::size_t size() const noexcept { return reverse_.size(); }
  EntityKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& entities() const noexcept { return reverse_; }

  friend bool operator==(const IdRegistry& a, const IdRegistry& b) {
    return a.kind_ == b.kind_ && a.reverse_ == b.reverse_;
  }

 private:
  EntityKind kind_;
  std::unordered_map<std::string, Id> forward_;
  std::vector<std::string> reverse_;
};

/// The three registries used by a mining run plus the identity rules.
struct Registries {
  IdRegistry commits{EntityKind::Commit};
  IdRegistry files{EntityKind::File};
  IdRegistry users{EntityKind::User};
  AliasTable aliases;

  /// Developer key: lowercased author email, or the name when the email is
  /// empty, mapped through the alias table.
  std::string user_key(const git::CommitMeta& commit) const;
  Id add_user(const git::CommitMeta& commit) { return users.add(user_key(commit)); }
  Id user_of(const git::CommitMeta& commit) const { return users.at(user_key(commit)); }
};

inline constexpr const char* kCommitMapFile = "idToCommit.json";
inline constexpr const char* kFileMapFile = "idToFile.json";
inline constexpr const char* kUserMapFile = "idToUser.json";

/// Writes {"<id>": "<entity>"} with ids in numeric order.
void save_mapping(const IdRegistry& registry, const std::filesystem::path& file);
void save_mappings(const Registries& registries, const std::filesystem::path& out_dir);
IdRegistry load_mapping(EntityKind kind, const std::filesystem::path& file);

}  // namespace stmine::mappers
