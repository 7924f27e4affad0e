"""Loaders for the data files bundled with the package."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources


def _read_text(filename: str) -> str:
    return (resources.files("testlens.data") / filename).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def common_words() -> frozenset[str]:
    return frozenset(_read_text("words.txt").split())


@lru_cache(maxsize=None)
def lexicon_dict() -> dict:
    return json.loads(_read_text("lexicon.json"))


@lru_cache(maxsize=None)
def catalog_list() -> list:
    return json.loads(_read_text("catalog.json"))


@lru_cache(maxsize=None)
def relations_dict() -> dict:
    return json.loads(_read_text("relations.json"))
