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

#include "generators.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "sqlsynth/error.hpp"
#include "sqlsynth/synthesis.hpp"
#include "test_support.hpp"

namespace sqlsynth::acceptance {

RandomSchema random_schema(std::mt19937& rng, int max_tables) {
  std::uniform_int_distribution<int> table_count(2, max_tables);
  int n = table_count(rng);
  // Sparse and dense graphs alike, so both outcomes of the planner are hit.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double density = unit(rng) < 0.3 ? 0.6 : 1.6;
  int edge_count = static_cast<int>(density * n * unit(rng));

  std::vector<std::string> tables;
  std::vector<std::vector<std::string>> table_cols(n, std::vector<std::string>{"id"});
  struct Fk {
    int from, to;
    std::string column;
  };
  std::vector<Fk> fks;
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int e = 0; e < edge_count; ++e) {
    int a = pick(rng), b = pick(rng);
    std::string col = "fk" + std::to_string(e) + "_t" + std::to_string(b);
    table_cols[a].push_back(col);
    fks.push_back({a, b, col});
  }

  std::vector<ColumnRef> columns;
  for (int i = 0; i < n; ++i) {
    tables.push_back("t" + std::to_string(i));
    for (const std::string& c : table_cols[i]) {
      columns.push_back(make_column_ref(tables.back(), c, "integer"));
    }
  }
  std::vector<ForeignKey> keys;
  RandomSchema out;
  out.neighbours.assign(n, {});
  for (const Fk& f : fks) {
    keys.push_back(ForeignKey{make_column_ref(tables[f.from], f.column, "integer"),
                              make_column_ref(tables[f.to], "id", "integer")});
    if (f.from != f.to) {
      out.neighbours[f.from].push_back(f.to);
      out.neighbours[f.to].push_back(f.from);
    }
  }
  out.schema = SchemaGraph(tables, columns, keys);
  return out;
}

std::optional<int> brute_force_distance(const RandomSchema& s, const std::vector<int>& from,
                                        const std::vector<int>& to) {
  std::set<int> targets(to.begin(), to.end());
  std::optional<int> best;
  std::vector<bool> on_path(s.neighbours.size(), false);
  std::function<void(int, int)> dfs = [&](int node, int depth) {
    if (targets.count(node) && (!best || depth < *best)) best = depth;
    on_path[node] = true;
    for (int next : s.neighbours[node]) {
      if (!on_path[next]) dfs(next, depth + 1);
    }
    on_path[node] = false;
  };
  for (int start : from) dfs(start, 0);
  return best;
}

std::size_t tuples_with_sum_at_most(const std::vector<std::size_t>& limits, std::size_t sum) {
  // Direct enumeration; the slot counts used here are tiny.
  std::size_t count = 0;
  std::vector<std::size_t> t(limits.size(), 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t acc) {
    if (acc > sum) return;
    if (i == limits.size()) {
      ++count;
      return;
    }
    for (std::size_t r = 0; r < limits[i]; ++r) rec(i + 1, acc + r);
  };
  rec(0, 0);
  return count;
}

namespace {

const std::vector<std::string>& word_pool() {
  static const std::vector<std::string> kWords = {
      "amber", "basil",  "cedar", "delta", "ember",  "fjord", "garnet", "harbor", "indigo",
      "jasper", "kelp",  "lumen", "maple", "nectar", "onyx",  "pepper", "quartz", "raven",
      "sable",  "tundra", "umber", "velvet", "willow", "yarrow", "zephyr", "coral", "flint",
      "heron",  "lotus",  "marble", "orchid", "prism",  "sierra", "topaz", "walnut", "cobalt",
  };
  return kWords;
}

struct Table {
  std::string name;
  std::vector<std::string> text_cols;
  std::vector<std::string> num_cols;
  std::optional<std::string> parent;  // foreign key "<parent>_id" -> parent.id
};

std::string word(std::mt19937& rng, std::set<std::string>& used) {
  const auto& pool = word_pool();
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (;;) {
    const std::string& w = pool[pick(rng)];
    if (used.insert(w).second) return w;
  }
}

// Templates over phrase placeholders P, Q, R.
const std::vector<std::string>& templates() {
  static const std::vector<std::string> kTemplates = {
      "P",
      "P; Q of #1",
      "P; number of #1",
      "P; Q of #1; #1 where #2 is highest",
      "P; Q of #1; #1 where #2 is lowest",
      "P; Q; number of #2 for each #1",
      "P; Q of #1; #1 where #2 is more than 20",
      "P; Q of #1; sum of #2",
      "P; Q of #1; R of #1; #2 and #3",
      "P; Q of #1; #1 sorted by #2",
  };
  return kTemplates;
}

std::string fill(std::string t, const std::vector<std::string>& phrases) {
  const char* names[] = {"P", "Q", "R"};
  for (std::size_t i = 0; i < phrases.size(); ++i) {
    std::size_t pos = t.find(names[i]);
    if (pos != std::string::npos) t.replace(pos, 1, phrases[i]);
  }
  return t;
}

}  // namespace

std::optional<PlantedExample> plant_example(std::mt19937& rng, const std::filesystem::path& dir,
                                            int serial, EmbeddingLexicon& lexicon,
                                            std::size_t top_k, std::size_t max_assignments) {
  std::uniform_int_distribution<int> two_three(2, 3);
  std::uniform_int_distribution<int> three_five(3, 5);
  std::set<std::string> used;
  std::vector<Table> tables;
  int n_tables = two_three(rng);
  for (int i = 0; i < n_tables; ++i) {
    Table t;
    t.name = word(rng, used);
    int n_text = three_five(rng), n_num = three_five(rng);
    for (int c = 0; c < n_text; ++c) t.text_cols.push_back(word(rng, used));
    for (int c = 0; c < n_num; ++c) t.num_cols.push_back(word(rng, used));
    if (i > 0) t.parent = tables[i - 1].name;
    tables.push_back(std::move(t));
  }

  // Random vectors for every identifier word; phrases reuse them.
  std::normal_distribution<float> gauss(0.0f, 1.0f);
  for (const std::string& w : used) {
    if (lexicon.contains(w)) continue;
    std::vector<float> v(16);
    for (float& x : v) x = gauss(rng);
    lexicon.add(w, std::move(v));
  }

  std::ostringstream script;
  std::uniform_int_distribution<int> rows_dist(6, 12);
  std::uniform_int_distribution<int> value_dist(0, 9);
  std::uniform_int_distribution<int> num_dist(0, 50);
  std::vector<int> row_counts;
  for (const Table& t : tables) {
    script << "CREATE TABLE " << t.name << " (id INTEGER PRIMARY KEY";
    for (const auto& c : t.text_cols) script << ", " << c << " TEXT";
    for (const auto& c : t.num_cols) script << ", " << c << " INTEGER";
    if (t.parent) {
      script << ", " << *t.parent << "_id INTEGER REFERENCES " << *t.parent << "(id)";
    }
    script << ");\n";
    int rows = rows_dist(rng);
    for (int r = 1; r <= rows; ++r) {
      script << "INSERT INTO " << t.name << " VALUES (" << r;
      for (std::size_t c = 0; c < t.text_cols.size(); ++c) {
        script << ", 'v" << value_dist(rng) << "'";
      }
      for (std::size_t c = 0; c < t.num_cols.size(); ++c) script << ", " << num_dist(rng);
      if (t.parent) {
        std::uniform_int_distribution<int> parent_row(1, row_counts.back());
        script << ", " << parent_row(rng);
      }
      script << ");\n";
    }
    row_counts.push_back(rows);
  }
  PlantedExample ex;
  ex.db_path = dir / ("planted_" + std::to_string(serial) + ".sqlite");
  testing::build_database(ex.db_path, script.str());

  Database db = Database::open_read_only(ex.db_path);
  SchemaGraph schema = load_schema(db);

  std::vector<std::string> vocabulary(used.begin(), used.end());
  std::uniform_int_distribution<std::size_t> pick_word(0, vocabulary.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_template(0, templates().size() - 1);
  std::vector<std::string> phrases;
  for (int i = 0; i < 3; ++i) phrases.push_back(vocabulary[pick_word(rng)]);
  ex.qdmr = fill(templates()[pick_template(rng)], phrases);
  QdmrProgram program = parse_qdmr(ex.qdmr);

  auto slots = build_slots(program, schema, lexicon, nullptr);
  std::vector<std::size_t> limits;
  for (const PhraseSlot& s : slots) limits.push_back(std::min(top_k, s.candidates.size()));

  for (int attempt = 0; attempt < 50; ++attempt) {
    std::vector<std::size_t> ranks;
    std::size_t sum = 0;
    for (std::size_t limit : limits) {
      std::uniform_int_distribution<std::size_t> r(0, limit - 1);
      ranks.push_back(r(rng));
      sum += ranks.back();
    }
    if (tuples_with_sum_at_most(limits, sum) > max_assignments) continue;

    Assignment a;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      a.choices.push_back(SlotChoice{slots[i].step_index, slots[i].phrase,
                                     slots[i].candidates[ranks[i]].column, std::nullopt, ranks[i]});
      a.score_rank.push_back(ranks[i]);
    }
    try {
      SqlQuery q = synthesize(program, schema, a);
      std::string sql = render_sql(q);
      Denotation d = execute(db, sql);
      if (d.empty()) continue;
      ex.planted_ranks = ranks;
      ex.planted_sql = sql;
      ex.answer = std::move(d);
      return ex;
    } catch (const Error&) {
      continue;
    }
  }
  return std::nullopt;
}

}  // namespace sqlsynth::acceptance
