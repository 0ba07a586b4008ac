# Copyright 2026 The sqlsynth Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Writes mini_corpus.jsonl: answers come from executing each gold query on the fixtures."""

import argparse
import json
import pathlib
import sqlite3

# (dataset, db_id, question, qdmr, gold_sql)
EXAMPLES = [
    ("ships", "ship_death", "What is the ship name that caused most total injuries?",
     "ships; injuries; number of #2 for each #1; #1 where #3 is highest; the name of #4",
     "SELECT s.name FROM ship s JOIN death d ON d.caused_by_ship_id = s.id GROUP BY s.id "
     "ORDER BY COUNT(d.injured) DESC LIMIT 1"),
    ("ships", "ship_death", "List the names of all ships.", "ships; the name of #1",
     "SELECT name FROM ship"),
    ("ships", "ship_death", "How many ships are there?", "ships; number of #1",
     "SELECT COUNT(*) FROM ship"),
    ("ships", "ship_death", "What is the tonnage of each ship?", "ships; tonnage of #1",
     "SELECT tonnage FROM ship"),
    ("ships", "ship_death", "What are the names of the battles?", "battles; the name of #1",
     "SELECT name FROM battle"),
    ("ships", "ship_death", "How many deaths are recorded?", "deaths; number of #1",
     "SELECT COUNT(*) FROM death"),
    ("ships", "ship_death", "What is the total number killed?", "killed; sum of #1",
     "SELECT SUM(killed) FROM death"),
    ("ships", "ship_death", "What is the largest number injured in a single death record?",
     "injured; the highest of #1", "SELECT MAX(injured) FROM death"),
    ("ships", "ship_death", "Names of ships with tonnage above 1000?",
     "ships; tonnage of #1; #1 where #2 is more than 1000; the name of #3",
     "SELECT name FROM ship WHERE tonnage > 1000"),
    ("ships", "ship_death", "Which ship names appear in alphabetical order?",
     "ships; the name of #1; #2 sorted alphabetically",
     "SELECT name FROM ship"),
    # Integer division of the two counts truncates to 0.
    ("ships", "ship_death", "What fraction of deaths have injuries recorded?",
     "deaths; injuries of #1; number of #2; number of #1; ratio of #3 and #4",
     "SELECT 1.0 * COUNT(injured) / COUNT(*) FROM death"),
    # Not a valid QDMR program.
    ("ships", "ship_death", "Broken decomposition.", "ships; number of #7",
     "SELECT COUNT(*) FROM ship"),
    ("geo", "geo", "What are the populations of states through which the Mississippi river runs?",
     "the Mississippi river; states #1 runs through; the populations of #2",
     "SELECT s.population FROM state s JOIN river r ON r.traverse = s.state_name "
     "WHERE r.river_name = 'Mississippi'"),
    ("geo", "geo", "How many states are there?", "states; number of #1",
     "SELECT COUNT(*) FROM state"),
    ("geo", "geo", "What is the capital of texas?", "states; #1 named texas; capital of #2",
     "SELECT capital FROM state WHERE state_name = 'texas'"),
    ("geo", "geo", "What is the population of california?", "states; #1 named california; population of #2",
     "SELECT population FROM state WHERE state_name = 'california'"),
    ("geo", "geo", "What is the area of the largest state?",
     "states; area of #1; #1 where #2 is highest; area of #3",
     "SELECT area FROM state ORDER BY area DESC LIMIT 1"),
    ("geo", "geo", "What is the longest river?", "rivers; length of #1; #1 where #2 is highest",
     "SELECT river_name FROM river GROUP BY river_name ORDER BY MAX(length) DESC LIMIT 1"),
    ("geo", "geo", "What states does the Mississippi run through?",
     "the Mississippi river; states #1 runs through",
     "SELECT s.state_name FROM state s JOIN river r ON r.traverse = s.state_name "
     "WHERE r.river_name = 'Mississippi'"),
    ("geo", "geo", "What is the combined population of all states?",
     "states; population of #1; sum of #2", "SELECT SUM(population) FROM state"),
    ("geo", "geo", "Which states have a population above 10 million?",
     "states; population of #1; #1 where #2 is more than 10000000",
     "SELECT state_name FROM state WHERE population > 10000000"),
    # The answer lists a state the fixture does not have.
    ("geo", "geo", "What is the capital of atlantis?", "atlantis; capital of #1",
     "SELECT 'poseidonia'"),
    ("academic", "academic", "What papers were written by both H. V. Jagadish and also Yunyao Li?",
     "papers; #1 by H. V. Jagadish; #2 by Yunyao Li",
     "SELECT p.title FROM publication p JOIN writes w ON w.pid = p.pid JOIN author a "
     "ON a.aid = w.aid WHERE a.name = 'H. V. Jagadish' INTERSECT SELECT p.title FROM "
     "publication p JOIN writes w ON w.pid = p.pid JOIN author a ON a.aid = w.aid "
     "WHERE a.name = 'Yunyao Li'"),
    ("academic", "academic", "Return me the authors who have more than 10 papers in PVLDB.",
     "authors; papers by #1; #2 in PVLDB; number of #3 for each #1; #1 where #4 is more than 10",
     "SELECT a.name FROM author a JOIN writes w ON w.aid = a.aid JOIN publication p "
     "ON p.pid = w.pid JOIN journal j ON j.jid = p.jid WHERE j.name = 'PVLDB' "
     "GROUP BY a.aid HAVING COUNT(*) > 10"),
    ("academic", "academic", "How many journals are there?", "journals; number of #1",
     "SELECT COUNT(*) FROM journal"),
    ("academic", "academic", "What are the names of all journals?", "journals; the name of #1",
     "SELECT name FROM journal"),
    ("academic", "academic", "What papers were published in TODS?", "papers; #1 in TODS",
     "SELECT p.title FROM publication p JOIN journal j ON j.jid = p.jid WHERE j.name = 'TODS'"),
    ("academic", "academic", "How many papers has H. V. Jagadish written?",
     "papers; #1 by H. V. Jagadish; number of #2",
     "SELECT COUNT(*) FROM publication p JOIN writes w ON w.pid = p.pid JOIN author a "
     "ON a.aid = w.aid WHERE a.name = 'H. V. Jagadish'"),
    ("academic", "academic", "What is the homepage of Yunyao Li?", "Yunyao Li; homepage of #1",
     "SELECT homepage FROM author WHERE name = 'Yunyao Li'"),
    # Averaged citations per year: the answer is per-group, the program is not.
    ("academic", "academic", "What is the average citation count per year?",
     "papers; citations of #1; average of #2",
     "SELECT year, AVG(citation_num) FROM publication GROUP BY year"),
]


def answer_of(db: pathlib.Path, sql: str):
    with sqlite3.connect(db) as conn:
        rows = conn.execute(sql).fetchall()
    if all(len(r) == 1 for r in rows):
        return [r[0] for r in rows]
    return [list(r) for r in rows]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--fixtures", required=True, help="directory of <db_id>.sqlite files")
    parser.add_argument("--out", default=str(pathlib.Path(__file__).with_name("mini_corpus.jsonl")))
    args = parser.parse_args()
    fixtures = pathlib.Path(args.fixtures)
    with open(args.out, "w", encoding="utf-8") as out:
        for n, (dataset, db_id, question, qdmr, sql) in enumerate(EXAMPLES, 1):
            record = {
                "id": f"{dataset}-{n:02d}",
                "dataset": dataset,
                "db_id": db_id,
                "question": question,
                "qdmr": qdmr,
                "answer": answer_of(fixtures / f"{db_id}.sqlite", sql),
                "sql": sql,
            }
            out.write(json.dumps(record, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
