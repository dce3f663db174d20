"""Analytic reports over all-time rankings: occupation distribution of the
top-n, cultural ingroup/outgroup shares, and cross-edition comparison."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from scipy.stats import spearmanr

from .centrality import AllTimeRanking
from .corpus import OCCUPATIONS, Person

log = logging.getLogger(__name__)

# Default culture tag counted as "ingroup" for each edition.
EDITION_CULTURES = {
    "en": "anglo",
    "zh": "sinic",
    "ja": "japonic",
    "de": "germanic",
}


@dataclass
class CategoryReport:
    edition: str
    n: int                        # effective top-n actually counted
    counts: dict[str, int]        # occupation -> count, partition of n
    ingroup_count: int
    short: bool = False           # ranking had fewer than the requested n


@dataclass
class ComparisonReport:
    editions: list[str]
    n: int
    overlap: int                                  # keys in every edition's top-n
    outgroup_share: dict[str, float]
    correlations: dict[str, Optional[float]]      # "a|b" (sorted) -> Spearman rho


def edition_culture(edition: str, override: Optional[str] = None) -> str:
    if override is not None:
        return override
    return EDITION_CULTURES.get(edition, edition)


def category_distribution(ranking: AllTimeRanking, people: Mapping[int, Person],
                          n: int, culture: Optional[str] = None) -> CategoryReport:
    """Occupation counts and ingroup count over the top-n of an all-time
    ranking. Unknown occupation tags count as "other" with a warning."""
    home = edition_culture(ranking.edition, culture)
    top = ranking.entries[:n]
    short = len(top) < n
    if short:
        log.warning("ranking has %d entries, fewer than requested n=%d", len(top), n)
    counts = {occ: 0 for occ in OCCUPATIONS}
    ingroup = 0
    for entry in top:
        person = people[entry.id]
        occ = person.occupation
        if occ not in counts:
            log.warning("unknown occupation %r for %r, counting as other",
                        occ, person.title)
            occ = "other"
        counts[occ] += 1
        if person.culture == home:
            ingroup += 1
    return CategoryReport(ranking.edition, len(top), counts, ingroup, short)


def outgroup_share(report: CategoryReport) -> float:
    if report.n == 0:
        raise ValueError("outgroup share undefined for n=0")
    return (report.n - report.ingroup_count) / report.n


@dataclass
class EditionView:
    """One edition's inputs to a cross-edition comparison."""
    edition: str
    ranking: AllTimeRanking
    keys: Mapping[int, str]        # person id -> cross-edition identity key
    cultures: Mapping[int, str]    # person id -> culture tag
    home_culture: Optional[str] = None


def compare_editions(views: Sequence[EditionView], n: int) -> ComparisonReport:
    """Overlap of the top-n across editions (by identity key), per-edition
    outgroup share, and pairwise Spearman correlation over shared persons."""
    if len(views) < 2:
        raise ValueError("need at least 2 editions to compare")

    tops = {}      # edition -> {key: rank position}
    shares = {}
    for view in views:
        top = view.ranking.entries[:n]
        tops[view.edition] = {view.keys[e.id]: pos for pos, e in enumerate(top)}
        if top:
            home = edition_culture(view.edition, view.home_culture)
            ingroup = sum(1 for e in top if view.cultures.get(e.id) == home)
            shares[view.edition] = (len(top) - ingroup) / len(top)
        else:
            shares[view.edition] = 0.0

    common = set.intersection(*(set(t) for t in tops.values()))
    correlations: dict[str, Optional[float]] = {}
    editions = sorted(tops)
    for i, a in enumerate(editions):
        for b in editions[i + 1:]:
            shared = sorted(set(tops[a]) & set(tops[b]))
            if len(shared) < 2:
                correlations[f"{a}|{b}"] = None
                continue
            ra = [tops[a][key] for key in shared]
            rb = [tops[b][key] for key in shared]
            rho = float(spearmanr(ra, rb).statistic)
            correlations[f"{a}|{b}"] = None if rho != rho else rho
    return ComparisonReport([v.edition for v in views], n, len(common),
                            shares, correlations)


def normalized_title_key(title: str) -> str:
    """Default cross-edition identity key: casefolded, underscores as spaces."""
    return " ".join(title.replace("_", " ").split()).casefold()
