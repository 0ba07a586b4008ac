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

#include "sqlsynth/join_planner.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "sqlsynth/error.hpp"

namespace sqlsynth {

namespace {

// Each step of a candidate path: the table reached and the key used.
struct Hop {
  std::string table;
  std::size_t fk = 0;
};

struct Neighbor {
  std::string table;
  std::size_t fk;
};

constexpr std::size_t kMaxExpansions = 200000;

}  // namespace

std::vector<std::string> JoinPath::predicates() const {
  std::vector<std::string> out;
  for (const JoinEdge& e : edges) out.push_back(e.predicate());
  return out;
}

JoinPath shortest_join_path(const SchemaGraph& schema, const std::vector<ColumnRef>& cols,
                            const std::vector<ColumnRef>& other_cols) {
  if (cols.empty() || other_cols.empty()) {
    throw Error(ErrorKind::InvalidInput, "join path needs two non-empty column sets");
  }
  std::set<std::string> sources, targets;
  for (const ColumnRef& c : cols) sources.insert(c.table);
  for (const ColumnRef& c : other_cols) targets.insert(c.table);

  for (const std::string& t : sources) {
    if (targets.count(t)) return JoinPath{{}, {t}};
  }

  const auto& fks = schema.foreign_keys();
  std::map<std::string, std::vector<Neighbor>> adj;
  for (std::size_t i = 0; i < fks.size(); ++i) {
    const ForeignKey& fk = fks[i];
    if (fk.source.table == fk.target.table) continue;
    adj[fk.source.table].push_back({fk.target.table, i});
    adj[fk.target.table].push_back({fk.source.table, i});
  }
  for (auto& [t, ns] : adj) {
    std::sort(ns.begin(), ns.end(), [](const Neighbor& a, const Neighbor& b) {
      return a.table != b.table ? a.table < b.table : a.fk < b.fk;
    });
  }

  // distance to the nearest target, by BFS from the target set
  std::map<std::string, int> dist;
  std::deque<std::string> queue;
  for (const std::string& t : targets) {
    dist[t] = 0;
    queue.push_back(t);
  }
  while (!queue.empty()) {
    std::string t = queue.front();
    queue.pop_front();
    for (const Neighbor& n : adj[t]) {
      if (!dist.count(n.table)) {
        dist[n.table] = dist[t] + 1;
        queue.push_back(n.table);
      }
    }
  }
  int best_len = -1;
  for (const std::string& s : sources) {
    auto it = dist.find(s);
    if (it != dist.end() && (best_len < 0 || it->second < best_len)) best_len = it->second;
  }
  if (best_len < 0) {
    throw Error(ErrorKind::DisconnectedTables,
                "no foreign-key path between " + *sources.begin() + " and " + *targets.begin());
  }

  auto in = [](const std::vector<ColumnRef>& set, const ColumnRef& c) {
    return std::find(set.begin(), set.end(), c) != set.end();
  };
  auto column_on = [&](std::size_t fk, const std::string& table) -> const ColumnRef& {
    return fks[fk].source.table == table ? fks[fk].source : fks[fk].target;
  };

  // Depth-first enumeration of shortest paths in (table sequence, key) order;
  // the first path seen with a given score is the smallest with that score.
  int best_score = -1;
  std::string best_start;
  std::vector<Hop> best_hops, hops;
  std::size_t expansions = 0;
  std::function<void(const std::string&, const std::string&)> walk =
      [&](const std::string& start, const std::string& at) {
        if (best_score == 3 || expansions > kMaxExpansions) return;
        ++expansions;
        int remaining = dist.at(at);
        if (remaining == 0) {
          const std::string& first = start;
          int score = 0;
          if (in(cols, column_on(hops.front().fk, first))) score += 2;
          if (in(other_cols, column_on(hops.back().fk, at))) score += 1;
          if (score > best_score) {
            best_score = score;
            best_start = start;
            best_hops = hops;
          }
          return;
        }
        for (const Neighbor& n : adj[at]) {
          auto d = dist.find(n.table);
          if (d == dist.end() || d->second != remaining - 1) continue;
          hops.push_back({n.table, n.fk});
          walk(start, n.table);
          hops.pop_back();
        }
      };
  for (const std::string& s : sources) {
    auto it = dist.find(s);
    if (it != dist.end() && it->second == best_len) walk(s, s);
  }

  JoinPath path;
  path.tables.push_back(best_start);
  for (const Hop& h : best_hops) {
    const ForeignKey& fk = fks[h.fk];
    path.edges.push_back(JoinEdge{fk.source, fk.target, h.fk});
    path.tables.push_back(h.table);
  }
  return path;
}

}  // namespace sqlsynth
