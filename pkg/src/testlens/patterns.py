"""Grammar patterns, prefixes, and the naming-template catalog."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from . import _data
from .tagger import PosTag, TaggedName, parse_tag


@dataclass(frozen=True)
class GrammarPattern:
    """An ordered, non-empty sequence of POS tags."""

    tags: tuple[PosTag, ...]

    def __post_init__(self) -> None:
        if not self.tags:
            raise ValueError("grammar pattern must contain at least one tag")

    def __str__(self) -> str:
        return " ".join(t.value for t in self.tags)

    @classmethod
    def parse(cls, text: str) -> "GrammarPattern":
        return cls(tuple(parse_tag(part) for part in text.split()))


@dataclass(frozen=True)
class PatternTemplate:
    """Catalog template: concrete tags plus optional '+' wildcards.

    ``containment_mode`` covers the +X+ templates that only require the
    tags to occur contiguously somewhere in the pattern.
    """

    tags: tuple[PosTag, ...]
    leading_wildcard: bool = False
    trailing_wildcard: bool = False
    containment_mode: bool = False

    def __post_init__(self) -> None:
        if not self.tags:
            raise ValueError("pattern template needs at least one concrete tag")
        if self.containment_mode and not (self.leading_wildcard and self.trailing_wildcard):
            raise ValueError("containment templates imply wildcards on both sides")

    def __str__(self) -> str:
        core = " ".join(t.value for t in self.tags)
        lead = "+" if self.leading_wildcard else ""
        trail = "+" if self.trailing_wildcard else ""
        return f"{lead}{core}{trail}"

    @property
    def specificity(self) -> int:
        return len(self.tags)


class CatalogOrigin(Enum):
    WU_CLAUSE = "wu_clause"
    EXTENDED = "extended"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    template: PatternTemplate
    origin: CatalogOrigin = CatalogOrigin.EXTENDED


def pattern_of(name: TaggedName) -> GrammarPattern:
    """The grammar pattern of a tagged name is its tag sequence verbatim."""
    return GrammarPattern(name.tags)


def prefix(p: GrammarPattern, k: int) -> GrammarPattern:
    """First min(k, len) tags of ``p``; ``k`` must be positive."""
    if k < 1:
        raise ValueError("prefix length must be >= 1")
    return GrammarPattern(p.tags[: min(k, len(p.tags))])


def matches(template: PatternTemplate, p: GrammarPattern) -> bool:
    t = template.tags
    q = p.tags
    if template.containment_mode:
        return any(q[i : i + len(t)] == t for i in range(len(q) - len(t) + 1))
    if template.leading_wildcard and template.trailing_wildcard:
        return any(q[i : i + len(t)] == t for i in range(len(q) - len(t) + 1))
    if template.trailing_wildcard:
        return q[: len(t)] == t
    if template.leading_wildcard:
        return len(q) >= len(t) and q[len(q) - len(t) :] == t
    return q == t


def catalog_match(p: GrammarPattern, catalog: list[CatalogEntry]) -> list[CatalogEntry]:
    """All catalog entries matching ``p``, most specific template first."""
    if not catalog:
        raise ValueError("catalog must not be empty")
    hits = [e for e in catalog if matches(e.template, p)]
    hits.sort(key=lambda e: (-e.template.specificity, e.name))
    return hits


def pattern_preserved(old: GrammarPattern, new: GrammarPattern) -> bool:
    return old.tags == new.tags


def prefix_pair(
    old: GrammarPattern, new: GrammarPattern, k: int
) -> tuple[GrammarPattern, GrammarPattern]:
    return prefix(old, k), prefix(new, k)


def _entry_from_dict(data: dict) -> CatalogEntry:
    template = PatternTemplate(
        tags=tuple(parse_tag(t) for t in data["tags"]),
        leading_wildcard=bool(data.get("leading_wildcard", False)),
        trailing_wildcard=bool(data.get("trailing_wildcard", False)),
        containment_mode=bool(data.get("containment", False)),
    )
    return CatalogEntry(
        name=data["name"],
        template=template,
        origin=CatalogOrigin(data.get("origin", "extended")),
    )


def load_catalog(path: str) -> list[CatalogEntry]:
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    return _catalog_from_list(raw)


def _catalog_from_list(raw: list) -> list[CatalogEntry]:
    entries = [_entry_from_dict(item) for item in raw]
    names = [e.name for e in entries]
    if len(names) != len(set(names)):
        raise ValueError("catalog entry names must be unique")
    return entries


_DEFAULT: list[CatalogEntry] | None = None


def default_catalog() -> list[CatalogEntry]:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = _catalog_from_list(_data.catalog_list())
    return list(_DEFAULT)
