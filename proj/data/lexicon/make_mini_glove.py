#!/usr/bin/env python3
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
"""Generates mini_glove.txt, a small GloVe-format lexicon for the fixtures.

Each word is a weighted mix of concept directions plus a little seeded
noise, so related words end up with high cosine similarity.
"""

import argparse
import numpy as np

DIM = 50
NOISE = 0.03
SEED = 20260

# word -> {concept: weight}
WORDS = {
    # identifiers and labels
    "id": {"ident": 1.0, "entity": 0.8},
    "aid": {"ident": 1.0, "entity": 0.7, "person": 0.1},
    "pid": {"ident": 1.0, "paper": 0.1},
    "jid": {"ident": 1.0, "venue": 0.1},
    "oid": {"ident": 1.0},
    "stuid": {"ident": 1.0, "entity": 0.5, "school": 0.5, "person": 0.3},
    "name": {"label": 1.0, "entity": 0.5},
    "lname": {"label": 0.6, "ident": 0.2},
    "fname": {"label": 0.6, "ident": 0.2},
    "nickname": {"label": 0.7},
    "code": {"category": 0.7, "ident": 0.4},
    "type": {"category": 1.0},
    "kind": {"category": 1.0},
    # ships and battles
    "ship": {"vessel": 1.0, "entity": 0.5},
    "tonnage": {"size": 1.0, "vessel": 0.2},
    "lost": {"harm": 0.4, "battle": 0.3},
    "battle": {"battle": 1.0, "entity": 0.2},
    "result": {"battle": 0.3, "outcome": 1.0},
    "date": {"time": 1.0},
    "death": {"casualty": 1.0, "harm": 0.4},
    "cause": {"outcome": 0.5, "casualty": 0.2},
    "note": {"text": 1.0},
    "kill": {"casualty": 0.8, "harm": 0.5},
    "injure": {"harm": 1.0, "casualty": 0.3},
    "injury": {"harm": 1.0, "casualty": 0.35},
    "casualty": {"casualty": 1.0, "harm": 0.5},
    # geography
    "state": {"region": 1.0, "entity": 0.6},
    "usa": {"region": 0.7, "nation": 0.5, "entity": 0.4},
    "country": {"nation": 1.0, "region": 0.3},
    "river": {"water": 1.0, "entity": 0.3},
    "lake": {"water": 1.0, "entity": 0.3},
    "traverse": {"flow": 1.0, "water": 0.2},
    "run": {"flow": 0.5, "motion": 0.5},
    "flow": {"flow": 1.0, "water": 0.3},
    "length": {"size": 0.6, "long": 1.0},
    "long": {"long": 1.0, "size": 0.3},
    "longest": {"long": 1.0, "size": 0.3},
    "area": {"size": 1.0, "region": 0.15},
    "size": {"size": 1.0},
    "large": {"size": 0.9},
    "largest": {"size": 0.9},
    "big": {"size": 0.9},
    "biggest": {"size": 0.9},
    "population": {"people": 1.0, "region": 0.1},
    "people": {"people": 1.0},
    "inhabitant": {"people": 1.0},
    "density": {"people": 0.5, "size": 0.3},
    "capital": {"city": 1.0, "region": 0.1},
    "city": {"city": 1.0, "region": 0.2},
    "location": {"city": 0.6, "region": 0.4},
    # publications
    "paper": {"paper": 1.0},
    "publication": {"paper": 0.9, "entity": 0.2},
    "article": {"paper": 0.9},
    "title": {"paper": 0.5, "label": 0.6},
    "abstract": {"paper": 0.3, "text": 0.8},
    "journal": {"venue": 1.0, "paper": 0.3},
    "venue": {"venue": 1.0},
    "conference": {"venue": 0.7, "sport": 0.3},
    "citation": {"paper": 0.3, "count": 0.6},
    "reference": {"paper": 0.2, "count": 0.4, "text": 0.3},
    "num": {"count": 1.0},
    "year": {"time": 1.0},
    "homepage": {"web": 1.0},
    "author": {"person": 1.0, "entity": 0.5, "paper": 0.2},
    "researcher": {"person": 1.0, "paper": 0.2},
    "write": {"paper": 0.4, "person": 0.2, "write": 1.0},
    # products
    "product": {"commerce": 1.0, "entity": 0.3},
    "item": {"commerce": 0.8, "entity": 0.3},
    "price": {"money": 1.0, "commerce": 0.3},
    "cost": {"money": 1.0},
    # universities and students
    "university": {"school": 1.0, "entity": 0.4},
    "school": {"school": 1.0, "entity": 0.3},
    "college": {"school": 1.0},
    "found": {"time": 0.6, "origin": 0.6},
    "affiliation": {"category": 0.5, "group": 1.0},
    "enrollment": {"people": 0.5, "school": 0.5, "count": 0.3},
    "primary": {"order": 1.0},
    "student": {"person": 0.8, "school": 0.6, "entity": 0.4},
    "age": {"time": 1.0, "person": 0.2},
    "sex": {"gender": 1.0},
    "gender": {"gender": 1.0},
    "major": {"subject": 1.0, "school": 0.3},
    "subject": {"subject": 1.0},
    "advisor": {"guidance": 1.0, "person": 0.3, "school": 0.2},
    # elections
    "vote": {"vote": 1.0},
    "ballot": {"vote": 1.0},
    "record": {"text": 0.4, "ident": 0.3},
    "registration": {"time": 0.6, "text": 0.3, "vote": 0.2},
    "election": {"vote": 0.5, "time": 0.6},
    "cycle": {"time": 0.8},
    "president": {"office": 1.0},
    "vice": {"office": 0.5},
    "secretary": {"office": 0.8},
    "treasurer": {"office": 0.8, "money": 0.3, "vote": 0.2},
    "class": {"school": 0.5, "group": 0.4},
    "senator": {"office": 0.8},
    # function words that show up in QDMR phrases
    "number": {"count": 1.0},
    "total": {"count": 0.6, "money": 0.2},
}


def concept_axes():
    """Returns orthonormal random directions, one per concept."""
    concepts = sorted({c for mix in WORDS.values() for c in mix})
    if len(concepts) > DIM:
        raise SystemExit(f"{len(concepts)} concepts do not fit in {DIM} dimensions")
    rng = np.random.default_rng(SEED)
    q, _ = np.linalg.qr(rng.standard_normal((DIM, len(concepts))))
    return {c: q[:, i] for i, c in enumerate(concepts)}


def build():
    axes = concept_axes()
    rng = np.random.default_rng(SEED + 1)
    vectors = {}
    for word in sorted(WORDS):
        v = np.zeros(DIM)
        for concept, weight in WORDS[word].items():
            v += weight * axes[concept]
        v += NOISE * rng.standard_normal(DIM)
        vectors[word] = v
    return vectors


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="mini_glove.txt")
    args = parser.parse_args()
    vectors = build()
    with open(args.out, "w") as f:
        for word, v in vectors.items():
            f.write(word + " " + " ".join(f"{x:.5f}" for x in v) + "\n")


if __name__ == "__main__":
    main()
