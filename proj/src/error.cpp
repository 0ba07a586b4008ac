// Copyright 2026 The sqlsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sqlsynth/error.hpp"

namespace sqlsynth {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptyProgram: return "EmptyProgram";
    case ErrorKind::DanglingReference: return "DanglingReference";
    case ErrorKind::MalformedReference: return "MalformedReference";
    case ErrorKind::NonstandardStep: return "NonstandardStep";
    case ErrorKind::UnreadableDatabase: return "UnreadableDatabase";
    case ErrorKind::NoTables: return "NoTables";
    case ErrorKind::UnknownColumn: return "UnknownColumn";
    case ErrorKind::DisconnectedTables: return "DisconnectedTables";
    case ErrorKind::UnmappedReference: return "UnmappedReference";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::MissingJoin: return "MissingJoin";
    case ErrorKind::MappingFailed: return "MappingFailed";
    case ErrorKind::SqlError: return "SqlError";
    case ErrorKind::ExecutionTimeout: return "ExecutionTimeout";
    case ErrorKind::NoSuperlativeToken: return "NoSuperlativeToken";
    case ErrorKind::NoSwappableAggregate: return "NoSwappableAggregate";
    case ErrorKind::FileUnreadable: return "FileUnreadable";
    case ErrorKind::AllLinesInvalid: return "AllLinesInvalid";
    case ErrorKind::UnwritablePath: return "UnwritablePath";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace sqlsynth
