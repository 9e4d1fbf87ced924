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

#include <filesystem>

#include <json.hpp>

namespace stmine {

using Json = nlohmann::ordered_json;

/// Writes `doc` compactly followed by a newline. Throws Error(Io).
void write_json(const std::filesystem::path& path, const Json& doc);
/// Throws Error(Io) when unreadable and Error(Schema) when malformed.
Json read_json(const std::filesystem::path& path);

}  // namespace stmine
