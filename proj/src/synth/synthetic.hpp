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

#include "core/json_io.hpp"

namespace stmine::synth {

struct SyntheticSpec {
  std::size_t commits = 100;
  std::size_t authors = 4;
  std::size_t files = 20;
  std::uint64_t seed = 1;
};

/// Name of the manifest written next to the work tree files.
inline constexpr const char* kManifestFile = "synthetic-manifest.json";

/// Builds a linear-history repository at `path` (created, must not hold a
/// repository yet) with a single branch "main". Authors, messages, edits,
/// renames and time zones are drawn from a seeded generator, so equal specs
/// give byte-identical repositories.
///
/// Returns the manifest, also written to `path / kManifestFile` (untracked).
/// It records what every commit did, keyed by lowercased email and path, and
/// the expected changed-files, assignment, dependency and work-time data.
/// Throws Error(InvalidConfig) for zero parameters and Error(Io) when git
/// cannot be run.
Json generate_synthetic_repo(const SyntheticSpec& spec, const std::filesystem::path& path);

}  // namespace stmine::synth
