import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from chronograph.corpus import Corpus, Person


def make_corpus(spec, links, edition="en", horizon=(-3000, 1950)):
    """spec: list of (title, birth, death) or (title, birth, death, occ, culture)."""
    persons = []
    for i, row in enumerate(sorted(spec)):
        title, birth, death = row[:3]
        occ = row[3] if len(row) > 3 else "other"
        culture = row[4] if len(row) > 4 else "unknown"
        persons.append(Person(i, title, birth, death, occ, culture))
    ids = {p.title: p.id for p in persons}
    link_ids = sorted((ids[s], ids[d]) for s, d in links)
    return Corpus(edition, horizon, persons, link_ids)


def random_corpus(rng: random.Random, max_persons=200, max_links=1500,
                  horizon=(-3000, 1950)):
    n = rng.randint(1, max_persons)
    spec = []
    for i in range(n):
        birth = rng.randint(horizon[0], horizon[1])
        death = min(birth + rng.randint(0, 120), horizon[1])
        spec.append((f"T{i:04d}", birth, death))
    links = set()
    for _ in range(rng.randint(0, max_links)):
        s = rng.randrange(n)
        d = rng.randrange(n)
        if s != d:
            links.add((f"T{s:04d}", f"T{d:04d}"))
    return make_corpus(spec, links)


@pytest.fixture
def tiny_corpus():
    # two ancient contemporaries, one medieval loner
    return make_corpus(
        [("Alba", 46, 120), ("Brix", 76, 138), ("Cato", 800, 870)],
        [("Alba", "Brix"), ("Brix", "Alba"), ("Alba", "Cato")])
