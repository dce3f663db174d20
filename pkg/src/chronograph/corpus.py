"""Corpus ingestion: stream a MediaWiki-style XML export, date people pages
from their birth/death categories, resolve redirects, and emit a validated
link corpus.

All years are astronomical integers (year 0 = 1 BC, -1 = 2 BC), so interval
arithmetic is continuous across the BC/CE boundary.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import IO, Iterator, Mapping, Optional
from xml.etree import ElementTree as ET

CORPUS_FORMAT = "chronograph-corpus-v1"

OCCUPATIONS = ("politician", "religious", "artist_scientist", "other")

# Missing death date: the person is treated as alive through the horizon end.
ALIVE = None

REDIRECT_DEPTH_CAP = 16

_WIKILINK_RE = re.compile(r"\[\[([^\[\]]+?)\]\]")
_DATE_CAT_RE = re.compile(r"^(\d+)( BC)? (births|deaths)$")


class CorpusError(Exception):
    """Invalid input corpus or invariant violation."""


class DumpParseError(CorpusError):
    """Malformed XML in the dump stream."""

    def __init__(self, message: str, line: int, column: int, offset: int):
        super().__init__(f"{message} (line {line}, column {column}, byte offset {offset})")
        self.line = line
        self.column = column
        self.offset = offset


@dataclass
class RawPage:
    title: str
    redirect_target: Optional[str] = None
    wikilinks: list[str] = field(default_factory=list)
    categories: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class Person:
    id: int
    title: str
    birth_year: int
    death_year: int
    occupation: str = "other"
    culture: str = "unknown"


@dataclass
class Corpus:
    edition: str
    horizon: tuple[int, int]
    persons: list[Person]
    links: list[tuple[int, int]]
    stats: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        self._by_id = {p.id: p for p in self.persons}

    def person(self, pid: int) -> Person:
        return self._by_id[pid]

    def __eq__(self, other):
        if not isinstance(other, Corpus):
            return NotImplemented
        return (self.edition, self.horizon, self.persons, self.links) == (
            other.edition, other.horizon, other.persons, other.links)


def _norm_target(target: str) -> str:
    """Wikilink target: text before the first '|', section anchor stripped,
    first character case-normalized."""
    target = target.split("|", 1)[0].split("#", 1)[0].strip()
    if not target:
        return ""
    return target[0].upper() + target[1:]


def _extract_links(text: str) -> tuple[list[str], list[str]]:
    wikilinks = []
    categories = []
    for match in _WIKILINK_RE.finditer(text):
        inner = match.group(1)
        if inner.startswith("Category:"):
            name = inner[len("Category:"):].split("|", 1)[0].strip()
            if name:
                categories.append(name)
        else:
            target = _norm_target(inner)
            if target:
                wikilinks.append(target)
    return wikilinks, categories


def _strip_ns(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def parse_dump(stream: IO[bytes], max_page_bytes: int = 4_000_000,
               stats: Optional[Counter] = None) -> Iterator[RawPage]:
    """Stream RawPages out of a MediaWiki XML export subset.

    Memory is bounded by the largest single page, not the dump size: the
    parser is fed in chunks and every finished <page> element is discarded
    after it is yielded. Pages whose text exceeds max_page_bytes are skipped
    and counted under stats["oversized"].
    """
    if stats is None:
        stats = Counter()
    parser = ET.XMLPullParser(events=("end",))
    offset = 0          # bytes fed before the current chunk
    lines_fed = 0       # newlines seen before the current chunk
    line_start = 0      # byte offset where the last unfinished line began
    chunk = b""

    def fail(exc: ET.ParseError):
        eline, ecol = exc.position
        if eline > lines_fed:
            # error line starts inside the current chunk
            idx = -1
            for _ in range(eline - lines_fed - 1):
                idx = chunk.find(b"\n", idx + 1)
            start = offset + idx + 1
        else:
            start = line_start
        raise DumpParseError(exc.msg.split(":")[0], eline, ecol, start + ecol) from exc

    def pages() -> Iterator[ET.Element]:
        nonlocal offset, lines_fed, line_start, chunk
        while True:
            chunk = stream.read(65536)
            if not chunk:
                break
            if isinstance(chunk, str):
                chunk = chunk.encode("utf-8")
            try:
                parser.feed(chunk)
                events = list(parser.read_events())
            except ET.ParseError as exc:
                fail(exc)
            for _, elem in events:
                if _strip_ns(elem.tag) == "page":
                    yield elem
                    elem.clear()
            nl = chunk.rfind(b"\n")
            if nl >= 0:
                lines_fed += chunk.count(b"\n")
                line_start = offset + nl + 1
            offset += len(chunk)
        chunk = b""
        try:
            parser.close()
        except ET.ParseError as exc:
            fail(exc)

    for page in pages():
        title = None
        redirect = None
        text = ""
        for elem in page.iter():
            tag = _strip_ns(elem.tag)
            if tag == "title":
                title = (elem.text or "").strip()
            elif tag == "redirect":
                redirect = elem.get("title")
            elif tag == "text":
                text = elem.text or ""
        if not title:
            stats["untitled"] += 1
            continue
        stats["pages_seen"] += 1
        if redirect is not None:
            yield RawPage(title=title, redirect_target=redirect)
            continue
        if len(text.encode("utf-8", "ignore")) > max_page_bytes:
            stats["oversized"] += 1
            continue
        wikilinks, categories = _extract_links(text)
        yield RawPage(title=title, wikilinks=wikilinks, categories=categories)


def extract_dates(categories: list[str],
                  stats: Optional[Counter] = None) -> Optional[tuple[int, Optional[int]]]:
    """Read (birth_year, death_year) from "N births" / "N BC deaths" categories.

    Returns None when no birth category is present (the person cannot be
    placed on the timeline). A missing death category yields ALIVE, clamped
    to the horizon end later. Multiple birth (death) categories collapse to
    min (max) with a warning counter.
    """
    births = []
    deaths = []
    for cat in categories:
        m = _DATE_CAT_RE.match(cat.strip())
        if not m:
            continue
        year = int(m.group(1))
        if m.group(2):
            year = 1 - year  # N BC -> astronomical 1-N
        (births if m.group(3) == "births" else deaths).append(year)
    if not births:
        return None
    if stats is not None and (len(births) > 1 or len(deaths) > 1):
        stats["multiple_date_categories"] += 1
    birth = min(births)
    death = max(deaths) if deaths else ALIVE
    return birth, death


def _resolve_redirect(title: str, redirects: Mapping[str, str]) -> Optional[str]:
    seen = {title}
    for _ in range(REDIRECT_DEPTH_CAP):
        target = redirects.get(title)
        if target is None:
            return title
        if target in seen:
            return None  # cycle
        seen.add(target)
        title = target
    return None  # depth cap


def resolve(raw_pages: list[RawPage], edition: str, horizon: tuple[int, int],
            annotations: Optional[Mapping[str, tuple[str, str]]] = None,
            stats: Optional[Counter] = None) -> Corpus:
    """Turn raw pages into a validated corpus: redirects resolved, undated
    pages and dangling/self/duplicate links dropped, lifespans clamped to the
    horizon, dense ids assigned in lexicographic title order."""
    if stats is None:
        stats = Counter()
    annotations = annotations or {}
    h_start, h_end = horizon

    titles = Counter(p.title for p in raw_pages)
    dupes = sorted(t for t, c in titles.items() if c > 1)
    if dupes:
        raise CorpusError(f"duplicate titles: {', '.join(dupes)}")

    redirects = {p.title: p.redirect_target for p in raw_pages
                 if p.redirect_target is not None}
    stats["redirects"] += len(redirects)

    dated: dict[str, tuple[int, int]] = {}
    page_links: dict[str, list[str]] = {}
    for page in raw_pages:
        if page.redirect_target is not None:
            continue
        res = extract_dates(page.categories, stats)
        if res is None:
            stats["undated"] += 1
            continue
        birth, death = res
        if birth > h_end or (death is not ALIVE and death < h_start):
            stats["out_of_horizon"] += 1
            continue
        if death is ALIVE:
            death = h_end
        if birth > death:
            stats["inverted_lifespan"] += 1
            continue
        dated[page.title] = (max(birth, h_start), min(death, h_end))
        page_links[page.title] = page.wikilinks

    if not dated:
        raise CorpusError("empty corpus: no dated persons after filtering")

    persons = []
    ids = {}
    for pid, title in enumerate(sorted(dated)):
        birth, death = dated[title]
        occupation, culture = annotations.get(title, ("other", "unknown"))
        if occupation not in OCCUPATIONS:
            stats["unknown_occupation"] += 1
            occupation = "other"
        persons.append(Person(pid, title, birth, death, occupation, culture))
        ids[title] = pid

    links = set()
    for title, targets in page_links.items():
        src = ids[title]
        for target in targets:
            final = _resolve_redirect(target, redirects)
            if final is None or final not in ids:
                stats["dangling_links"] += 1
                continue
            dst = ids[final]
            if dst == src:
                stats["self_links"] += 1
                continue
            if (src, dst) in links:
                stats["duplicate_links"] += 1
                continue
            links.add((src, dst))

    stats["persons"] = len(persons)
    stats["links"] = len(links)
    return Corpus(edition, (h_start, h_end), persons, sorted(links), dict(stats))


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def write_corpus(corpus: Corpus, path) -> None:
    out_links: dict[int, list[int]] = {p.id: [] for p in corpus.persons}
    for src, dst in corpus.links:
        out_links[src].append(dst)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_dumps({"edition": corpus.edition,
                         "horizon": list(corpus.horizon),
                         "format": CORPUS_FORMAT}) + "\n")
        for p in corpus.persons:
            fh.write(_dumps({"id": p.id, "title": p.title,
                             "birth": p.birth_year, "death": p.death_year,
                             "links": sorted(out_links[p.id]),
                             "occupation": p.occupation,
                             "culture": p.culture}) + "\n")


def load_corpus(path) -> Corpus:
    with open(path, encoding="utf-8") as fh:
        header_line = fh.readline()
        if not header_line.strip():
            raise CorpusError("empty corpus: no header line")
        try:
            header = json.loads(header_line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"line 1: invalid JSON: {exc}") from exc
        if header.get("format") != CORPUS_FORMAT:
            raise CorpusError(f"line 1: unsupported format {header.get('format')!r}")
        horizon = tuple(header["horizon"])
        persons = []
        links = []
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"line {lineno}: invalid JSON: {exc}") from exc
            try:
                person = Person(rec["id"], rec["title"], rec["birth"], rec["death"],
                                rec.get("occupation", "other"), rec.get("culture", "unknown"))
                targets = rec["links"]
            except (KeyError, TypeError) as exc:
                raise CorpusError(f"line {lineno}: missing field {exc}") from exc
            if person.birth_year > person.death_year:
                raise CorpusError(
                    f"line {lineno}: {person.title!r}: birth after death")
            if person.occupation not in OCCUPATIONS:
                raise CorpusError(
                    f"line {lineno}: {person.title!r}: bad occupation {person.occupation!r}")
            persons.append(person)
            links.extend((person.id, dst) for dst in targets)
    if not persons:
        raise CorpusError("empty corpus: no persons")
    ids = {p.id for p in persons}
    if len(ids) != len(persons):
        raise CorpusError("duplicate person ids")
    for src, dst in links:
        if dst not in ids:
            raise CorpusError(f"link ({src},{dst}): unknown target id")
        if src == dst:
            raise CorpusError(f"link ({src},{dst}): self-link")
    if len(set(links)) != len(links):
        raise CorpusError("duplicate links")
    persons.sort(key=lambda p: p.id)
    return Corpus(header["edition"], horizon, persons, sorted(links))


def load_annotations(path) -> dict[str, tuple[str, str]]:
    """Sidecar JSONL of {"title", "occupation", "culture"} keyed by title."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                out[rec["title"]] = (rec["occupation"], rec["culture"])
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise CorpusError(f"annotations line {lineno}: {exc}") from exc
    return out
