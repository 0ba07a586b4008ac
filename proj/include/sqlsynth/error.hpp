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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sqlsynth {

/// Failure classes surfaced by the engine. The C API maps these onto its
/// status codes; the CLI maps them onto exit codes.
enum class ErrorKind {
  // qdmr
  EmptyProgram,
  DanglingReference,
  MalformedReference,
  NonstandardStep,
  // schema
  UnreadableDatabase,
  NoTables,
  UnknownColumn,
  // join planning
  DisconnectedTables,
  // sql building
  UnmappedReference,
  ArityMismatch,
  MissingJoin,
  MappingFailed,
  // execution
  SqlError,
  ExecutionTimeout,
  // heuristics
  NoSuperlativeToken,
  NoSwappableAggregate,
  // pipeline
  FileUnreadable,
  AllLinesInvalid,
  UnwritablePath,
  InvalidInput,
  Internal,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sqlsynth
