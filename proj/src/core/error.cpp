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

#include "core/error.hpp"

namespace stmine {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotARepository: return "NotARepository";
    case ErrorCode::UnknownBranch: return "UnknownBranch";
    case ErrorCode::CorruptObject: return "CorruptObject";
    case ErrorCode::FileNotInTree: return "FileNotInTree";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::EmptyEntity: return "EmptyEntity";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Schema: return "SchemaError";
  }
  return "Unknown";
}

}  // namespace stmine
