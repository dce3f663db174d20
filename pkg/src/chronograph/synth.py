"""Synthetic corpus generation for experiments and stress tests."""

from __future__ import annotations

import numpy as np

from . import HORIZON_END, HORIZON_START
from .corpus import Corpus, Person


def make_corpus(num_persons: int, num_links: int, seed: int = 0,
                horizon: tuple[int, int] = (HORIZON_START, HORIZON_END),
                mean_lifespan: float = 60.0, edition: str = "syn") -> Corpus:
    """Random dated corpus: births uniform over the horizon, lifespans
    geometric-ish around mean_lifespan, links uniform over person pairs.
    Deterministic in the seed."""
    rng = np.random.default_rng(seed)
    y0, y1 = horizon
    births = rng.integers(y0, y1 + 1, size=num_persons)
    spans = rng.poisson(mean_lifespan, size=num_persons)
    deaths = np.minimum(births + spans, y1)

    persons = [Person(i, f"P{i:06d}", int(births[i]), int(deaths[i]))
               for i in range(num_persons)]

    links = set()
    if num_persons > 1:
        while len(links) < num_links:
            need = num_links - len(links)
            src = rng.integers(0, num_persons, size=need * 2)
            dst = rng.integers(0, num_persons, size=need * 2)
            for s, d in zip(src.tolist(), dst.tolist()):
                if s != d:
                    links.add((s, d))
                    if len(links) == num_links:
                        break
    return Corpus(edition, horizon, persons, sorted(links),
                  {"persons": num_persons, "links": len(links)})
