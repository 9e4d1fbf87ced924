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

#include <string>
#include <string_view>
#include <vector>

#include "git/repository.hpp"
#include "git/tree_diff.hpp"

namespace stmine::git {

struct LineAttribution {
  std::uint32_t line_no = 0;  // 1-based
  ObjectId introducing_sha;
  std::string author_email;
  std::string author_name;
};

/// Attributes every line of `path` at `commit` to the first-parent ancestor
/// that last introduced it, following whole-file renames detected with
/// `options.rename_threshold`. Throws FileNotInTree when the path is absent.
std::vector<LineAttribution> blame_file(const Repository& repo, const ObjectId& commit, std::string_view path,
                                        const DiffOptions& options = {});

}  // namespace stmine::git
