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

#include <string>
#include <vector>

#include "sqlsynth/schema.hpp"

namespace sqlsynth {

struct JoinEdge {
  ColumnRef source;  // foreign-key column
  ColumnRef target;  // referenced column
  std::size_t fk_index = 0;

  std::string predicate() const { return source.sql() + " = " + target.sql(); }
};

struct JoinPath {
  std::vector<JoinEdge> edges;
  std::vector<std::string> tables;  // visited in order; edges.size() + 1 entries

  bool empty() const { return edges.empty(); }
  std::vector<std::string> predicates() const;
};

/// Shortest foreign-key path from any table of `cols` to any table of
/// `other_cols` over the undirected table graph. Among equally short paths
/// the one starting at a column of `cols` and ending at a column of
/// `other_cols` wins, then the smallest sequence of hops compared by
/// (table name, key declaration index). Shared tables give an empty path.
/// Throws DisconnectedTables when no path exists.
JoinPath shortest_join_path(const SchemaGraph& schema, const std::vector<ColumnRef>& cols,
                            const std::vector<ColumnRef>& other_cols);

}  // namespace sqlsynth
