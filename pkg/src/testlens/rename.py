"""Classify method renames: structural form, semantic category, term pairs.

A rename first splits into added/removed term multisets. Its form is
formatting, reordering, simple, or complex; its semantic category is
preserve, change, narrow, broaden, add, or remove. Every (added, removed)
term pair additionally carries a lexical relation (synonym, antonym,
specialization, generalization, same stem, tense or plurality change,
spelling fix, or unrelated).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Protocol

from . import _data
from .splitter import TermSequence, split, validate_identifier
from .tagger import Lexicon, PosTag, tag


class FormCategory(Enum):
    FORMATTING = "formatting"
    REORDERING = "reordering"
    SIMPLE = "simple"
    COMPLEX = "complex"


class SemanticCategory(Enum):
    PRESERVE = "preserve"
    CHANGE = "change"
    NARROW = "narrow"
    BROADEN = "broaden"
    ADD = "add"
    REMOVE = "remove"


class TermRelation(Enum):
    SYNONYM = "synonym"
    ANTONYM = "antonym"
    SPECIALIZATION = "specialization"
    GENERALIZATION = "generalization"
    SAME_STEM = "same_stem"
    TENSE_CHANGE = "tense_change"
    PLURALITY_CHANGE = "plurality_change"
    SPELLING_FIX = "spelling_fix"
    UNRELATED = "unrelated"


@dataclass(frozen=True)
class RenameEvent:
    old_name: str
    new_name: str
    file: str | None = None
    commit: str | None = None

    def __post_init__(self) -> None:
        validate_identifier(self.old_name)
        validate_identifier(self.new_name)
        if self.old_name == self.new_name:
            raise ValueError("a rename requires the old and new names to differ")


@dataclass(frozen=True)
class RenameClassification:
    event: RenameEvent
    form: FormCategory
    semantics: SemanticCategory
    pairs: tuple[tuple[str, str, TermRelation], ...]


# ---------------------------------------------------------------------------
# Porter-style suffix stripping (rule table documented in the README)

_VOWELS = "aeiou"


def _is_cons(word: str, i: int) -> bool:
    ch = word[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        return i == 0 or not _is_cons(word, i - 1)
    return True


def _measure(stem: str) -> int:
    # number of vowel->consonant alternations in [C](VC)^m[V]
    m = 0
    i = 0
    n = len(stem)
    while i < n and _is_cons(stem, i):
        i += 1
    while i < n:
        while i < n and not _is_cons(stem, i):
            i += 1
        if i < n:
            m += 1
            while i < n and _is_cons(stem, i):
                i += 1
    return m


def _has_vowel(stem: str) -> bool:
    return any(not _is_cons(stem, i) for i in range(len(stem)))


def _ends_double_cons(word: str) -> bool:
    return len(word) >= 2 and word[-1] == word[-2] and _is_cons(word, len(word) - 1)


def _ends_cvc(word: str) -> bool:
    if len(word) < 3:
        return False
    n = len(word)
    if not (_is_cons(word, n - 3) and not _is_cons(word, n - 2) and _is_cons(word, n - 1)):
        return False
    return word[-1] not in "wxy"


def _step1a(w: str) -> str:
    if w.endswith("sses"):
        return w[:-2]
    if w.endswith("ies"):
        return w[:-2]
    if w.endswith("s") and not w.endswith("ss"):
        return w[:-1]
    return w


def _step1b(w: str) -> str:
    if w.endswith("eed"):
        if _measure(w[:-3]) > 0:
            return w[:-1]
        return w
    if w.endswith("ed") and _has_vowel(w[:-2]):
        w = w[:-2]
    elif w.endswith("ing") and _has_vowel(w[:-3]):
        w = w[:-3]
    else:
        return w
    if w.endswith(("at", "bl", "iz")):
        return w + "e"
    if _ends_double_cons(w) and not w.endswith(("l", "s", "z")):
        return w[:-1]
    if _measure(w) == 1 and _ends_cvc(w):
        return w + "e"
    return w


def _step1c(w: str) -> str:
    if w.endswith("y") and _has_vowel(w[:-1]):
        return w[:-1] + "i"
    return w


_STEP2 = {
    "a": (("ational", "ate"), ("tional", "tion")),
    "c": (("enci", "ence"), ("anci", "ance")),
    "e": (("izer", "ize"),),
    "l": (("bli", "ble"), ("alli", "al"), ("entli", "ent"), ("eli", "e"), ("ousli", "ous")),
    "o": (("ization", "ize"), ("ation", "ate"), ("ator", "ate")),
    "s": (("alism", "al"), ("iveness", "ive"), ("fulness", "ful"), ("ousness", "ous")),
    "t": (("aliti", "al"), ("iviti", "ive"), ("biliti", "ble")),
    "g": (("logi", "log"),),
}

_STEP3 = {
    "e": (("icate", "ic"), ("ative", ""), ("alize", "al")),
    "i": (("iciti", "ic"),),
    "l": (("ical", "ic"), ("ful", "")),
    "s": (("ness", ""),),
}

_STEP4 = {
    "a": ("al",),
    "c": ("ance", "ence"),
    "e": ("er",),
    "i": ("ic",),
    "l": ("able", "ible"),
    "n": ("ant", "ement", "ment", "ent"),
    "o": ("ion", "ou"),
    "s": ("ism",),
    "t": ("ate", "iti"),
    "u": ("ous",),
    "v": ("ive",),
    "z": ("ize",),
}


def _apply_rules(w: str, table: dict, min_measure: int) -> str:
    if len(w) < 2:
        return w
    rules = table.get(w[-2], ())
    for suffix, repl in rules:
        if w.endswith(suffix):
            stem = w[: -len(suffix)]
            if _measure(stem) > min_measure:
                return stem + repl
            return w
    return w


def _step2(w: str) -> str:
    return _apply_rules(w, _STEP2, 0)


def _step3(w: str) -> str:
    # step 3 dispatches on the final character
    rules = _STEP3.get(w[-1], ()) if w else ()
    for suffix, repl in rules:
        if w.endswith(suffix):
            stem = w[: -len(suffix)]
            if _measure(stem) > 0:
                return stem + repl
            return w
    return w


def _step4(w: str) -> str:
    if len(w) < 2:
        return w
    for suffix in _STEP4.get(w[-2], ()):
        if w.endswith(suffix):
            stem = w[: -len(suffix)]
            if suffix == "ion" and not stem.endswith(("s", "t")):
                return w
            if _measure(stem) > 1:
                return stem
            return w
    return w


def _step5(w: str) -> str:
    if w.endswith("e"):
        stem = w[:-1]
        m = _measure(stem)
        if m > 1 or (m == 1 and not _ends_cvc(stem)):
            w = stem
    if w.endswith("ll") and _measure(w) > 1:
        w = w[:-1]
    return w


def _porter_once(w: str) -> str:
    """One pass of the suffix-stripping rule table (see README for the rules)."""
    if len(w) <= 2:
        return w
    for step in (_step1a, _step1b, _step1c, _step2, _step3, _step4, _step5):
        w = step(w)
    return w


def stem(term: str) -> str:
    """Suffix-stripping stem of a digit-free term, lowercased.

    The rule table is applied repeatedly until it stops changing the word,
    which makes stemming idempotent (a single pass is not: it maps
    "cause" to "caus" and "caus" to "cau").
    """
    if not term:
        raise ValueError("cannot stem an empty term")
    if any(ch.isdigit() for ch in term):
        raise ValueError(f"cannot stem a term containing digits: {term!r}")
    w = term.lower()
    while True:
        reduced = _porter_once(w)
        if reduced == w:
            return w
        w = reduced


# ---------------------------------------------------------------------------
# Word relations


class WordRelationProvider(Protocol):
    """Lookup capability for lexical relations between lowercase words."""

    def synonyms(self, word: str) -> frozenset[str]: ...

    def antonyms(self, word: str) -> frozenset[str]: ...

    def hypernyms(self, word: str) -> frozenset[str]: ...

    def in_dictionary(self, word: str) -> bool: ...


class CuratedRelationProvider:
    """Bundled provider backed by a small curated relation table.

    Synonym and antonym pairs are stored symmetrically; hypernym lookups
    return direct hypernyms only (callers take the transitive closure).
    Dictionary membership checks the bundled word list with light
    inflection stripping (-s/-es/-ed/-d/-ing/-er).
    """

    _INFLECTIONS = ("s", "es", "ed", "d", "ing", "er")

    def __init__(self, synonyms=(), antonyms=(), hypernyms=None, words=frozenset()):
        self._syn: dict[str, set[str]] = {}
        self._ant: dict[str, set[str]] = {}
        self._hyper: dict[str, frozenset[str]] = {
            k: frozenset(v) for k, v in (hypernyms or {}).items()
        }
        for a, b in synonyms:
            self._syn.setdefault(a, set()).add(b)
            self._syn.setdefault(b, set()).add(a)
        for a, b in antonyms:
            self._ant.setdefault(a, set()).add(b)
            self._ant.setdefault(b, set()).add(a)
        self._words = frozenset(words)

    @classmethod
    def default(cls) -> "CuratedRelationProvider":
        return _default_provider()

    def synonyms(self, word: str) -> frozenset[str]:
        return frozenset(self._syn.get(word, ()))

    def antonyms(self, word: str) -> frozenset[str]:
        return frozenset(self._ant.get(word, ()))

    def hypernyms(self, word: str) -> frozenset[str]:
        return self._hyper.get(word, frozenset())

    def in_dictionary(self, word: str) -> bool:
        if word in self._words:
            return True
        for suffix in self._INFLECTIONS:
            if word.endswith(suffix) and len(word) > len(suffix):
                base = word[: -len(suffix)]
                if len(base) >= 3 and base in self._words:
                    return True
                if len(base) >= 4 and base[-1] == base[-2] and base[:-1] in self._words:
                    return True
        return False


_PROVIDER: CuratedRelationProvider | None = None


def _default_provider() -> CuratedRelationProvider:
    global _PROVIDER
    if _PROVIDER is None:
        data = _data.relations_dict()
        vocab = set(_data.common_words())
        for pair_list in (data["synonyms"], data["antonyms"]):
            for a, b in pair_list:
                vocab.update(w for w in (a, b) if " " not in w)
        for word, hypers in data["hypernyms"].items():
            vocab.add(word)
            vocab.update(hypers)
        _PROVIDER = CuratedRelationProvider(
            synonyms=[tuple(p) for p in data["synonyms"]],
            antonyms=[tuple(p) for p in data["antonyms"]],
            hypernyms=data["hypernyms"],
            words=frozenset(vocab),
        )
    return _PROVIDER


def default_phrases() -> list[tuple[str, ...]]:
    """Known multi-term phrases, as normalized term tuples."""
    return [tuple(p.split()) for p in _data.relations_dict()["phrases"]]


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance (unit costs)."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def _transitive_hypernyms(word: str, provider: WordRelationProvider) -> set[str]:
    seen: set[str] = set()
    frontier = [word]
    while frontier:
        current = frontier.pop()
        for hyper in provider.hypernyms(current):
            if hyper not in seen:
                seen.add(hyper)
                frontier.append(hyper)
    return seen


def relate(removed: str, added: str, provider: WordRelationProvider | None = None) -> TermRelation:
    """Lexical relation between a removed term and its added counterpart.

    Categories are tried in fixed precedence: spelling fix, stem-based
    relations, synonym, antonym, specialization, generalization, unrelated.
    """
    for term in (removed, added):
        if any(ch.isdigit() for ch in term):
            raise ValueError(f"relate requires digit-free terms: {term!r}")
    if provider is None:
        provider = CuratedRelationProvider.default()
    removed = removed.lower()
    added = added.lower()

    single_words = " " not in removed and " " not in added
    if single_words:
        if edit_distance(removed, added) <= 2:
            if provider.in_dictionary(removed) != provider.in_dictionary(added):
                return TermRelation.SPELLING_FIX
        if stem(removed) == stem(added):
            if added == removed + "s" or removed == added + "s":
                return TermRelation.PLURALITY_CHANGE
            if added == removed + "ed" or removed == added + "ed" \
                    or added == removed + "d" or removed == added + "d":
                return TermRelation.TENSE_CHANGE
            return TermRelation.SAME_STEM

    if added in provider.synonyms(removed):
        return TermRelation.SYNONYM
    if added in provider.antonyms(removed):
        return TermRelation.ANTONYM
    if removed in _transitive_hypernyms(added, provider):
        return TermRelation.SPECIALIZATION
    if added in _transitive_hypernyms(removed, provider):
        return TermRelation.GENERALIZATION
    return TermRelation.UNRELATED


# ---------------------------------------------------------------------------
# Term diffing and classification


def collapse_phrases(terms: list[str], phrases: list[tuple[str, ...]] | None = None) -> list[str]:
    """Rewrite known multi-term phrases into single space-joined tokens."""
    if phrases is None:
        phrases = default_phrases()
    ordered = sorted(phrases, key=len, reverse=True)
    out: list[str] = []
    i = 0
    while i < len(terms):
        for phrase in ordered:
            if tuple(terms[i : i + len(phrase)]) == phrase:
                out.append(" ".join(phrase))
                i += len(phrase)
                break
        else:
            out.append(terms[i])
            i += 1
    return out


def _normalized_terms(seq: TermSequence) -> list[str]:
    return collapse_phrases(seq.normalized())


def diff_terms(old: TermSequence, new: TermSequence) -> tuple[Counter, Counter, Counter]:
    """Multiset difference over normalized terms: (added, removed, preserved)."""
    old_counts = Counter(_normalized_terms(old))
    new_counts = Counter(_normalized_terms(new))
    added = new_counts - old_counts
    removed = old_counts - new_counts
    preserved = old_counts & new_counts
    return added, removed, preserved


def classify_form(event: RenameEvent) -> FormCategory:
    """Structural class of a rename: formatting, reordering, simple, complex."""
    old_seq = split(event.old_name)
    new_seq = split(event.new_name)
    old_alpha = [t for t in old_seq.normalized() if not t.isdigit()]
    new_alpha = [t for t in new_seq.normalized() if not t.isdigit()]
    if old_alpha == new_alpha:
        return FormCategory.FORMATTING
    old_all = _normalized_terms(old_seq)
    new_all = _normalized_terms(new_seq)
    if Counter(old_all) == Counter(new_all):
        return FormCategory.REORDERING
    added, removed, _ = diff_terms(old_seq, new_seq)
    if sum(added.values()) <= 1 and sum(removed.values()) <= 1:
        return FormCategory.SIMPLE
    return FormCategory.COMPLEX


def term_pairs(event: RenameEvent) -> list[tuple[str, str]]:
    """Cross product of added x removed normalized terms.

    Pairs are ordered by the added term's position in the new name, then
    the removed term's position in the old name.
    """
    old_seq = split(event.old_name)
    new_seq = split(event.new_name)
    added, removed, _ = diff_terms(old_seq, new_seq)
    added_ordered = _in_name_order(_normalized_terms(new_seq), added)
    removed_ordered = _in_name_order(_normalized_terms(old_seq), removed)
    return [(a, r) for a in added_ordered for r in removed_ordered]


def _in_name_order(name_terms: list[str], counts: Counter) -> list[str]:
    remaining = Counter(counts)
    ordered: list[str] = []
    for term in name_terms:
        if remaining[term] > 0:
            ordered.append(term)
            remaining[term] -= 1
    return ordered


_PRESERVING_RELATIONS = frozenset({
    TermRelation.SYNONYM,
    TermRelation.SAME_STEM,
    TermRelation.PLURALITY_CHANGE,
    TermRelation.TENSE_CHANGE,
    TermRelation.SPELLING_FIX,
})


def _pair_relation(added: str, removed: str, provider: WordRelationProvider) -> TermRelation:
    if any(ch.isdigit() for ch in added) or any(ch.isdigit() for ch in removed):
        return TermRelation.UNRELATED
    return relate(removed, added, provider)


def _preserving_swap(added: list[str], removed: list[str], provider) -> bool:
    """True when removed and added terms match one-to-one via meaning-keeping relations."""
    if len(added) != len(removed) or len(removed) > 8:
        return False
    if not removed:
        return True

    def backtrack(i: int, used: set[int]) -> bool:
        if i == len(removed):
            return True
        for j, a in enumerate(added):
            if j in used:
                continue
            if _pair_relation(a, removed[i], provider) in _PRESERVING_RELATIONS:
                if backtrack(i + 1, used | {j}):
                    return True
        return False

    return backtrack(0, set())


def _head_noun_index(tags: tuple[PosTag, ...]) -> int | None:
    for i in range(len(tags) - 1, -1, -1):
        if tags[i] in (PosTag.NOUN, PosTag.NOUN_PLURAL):
            return i
    return None


def _changed_before_head(
    seq: TermSequence, tags: tuple[PosTag, ...], other: TermSequence
) -> bool:
    """All changed-term occurrences in ``seq`` sit before a preserved head noun.

    The diff against ``other`` is recomputed without phrase collapsing so
    positions stay aligned with the tag sequence.
    """
    name_terms = seq.normalized()
    counts = Counter(name_terms)
    other_counts = Counter(other.normalized())
    changed = counts - other_counts
    preserved = counts & other_counts
    head = _head_noun_index(tags)
    if head is None:
        return False
    if preserved[name_terms[head]] == 0:
        return False
    return all(i < head for i, term in enumerate(name_terms) if changed[term] > 0)


def classify_semantics(
    event: RenameEvent,
    provider: WordRelationProvider | None = None,
    lexicon: Lexicon | None = None,
) -> SemanticCategory:
    """Meaning-level class of a rename."""
    if provider is None:
        provider = CuratedRelationProvider.default()
    form = classify_form(event)
    if form in (FormCategory.FORMATTING, FormCategory.REORDERING):
        return SemanticCategory.PRESERVE

    old_seq = split(event.old_name)
    new_seq = split(event.new_name)
    added, removed, _ = diff_terms(old_seq, new_seq)
    added_list = list(added.elements())
    removed_list = list(removed.elements())
    if not added_list and not removed_list:
        return SemanticCategory.PRESERVE
    if added_list and removed_list and _preserving_swap(added_list, removed_list, provider):
        return SemanticCategory.PRESERVE

    n_added = len(added_list)
    n_removed = len(removed_list)
    if n_added > 0 and n_removed == 0:
        new_tagged = tag(new_seq, lexicon)
        if _changed_before_head(new_seq, new_tagged.tags, old_seq):
            return SemanticCategory.NARROW
        return SemanticCategory.ADD
    if n_removed > 0 and n_added == 0:
        old_tagged = tag(old_seq, lexicon)
        if _changed_before_head(old_seq, old_tagged.tags, new_seq):
            return SemanticCategory.BROADEN
        return SemanticCategory.REMOVE

    relations = {
        _pair_relation(a, r, provider) for a in set(added_list) for r in set(removed_list)
    }
    has_spec = TermRelation.SPECIALIZATION in relations
    has_gen = TermRelation.GENERALIZATION in relations
    if has_spec and not has_gen:
        return SemanticCategory.NARROW
    if has_gen and not has_spec:
        return SemanticCategory.BROADEN
    return SemanticCategory.CHANGE


def classify(
    event: RenameEvent,
    provider: WordRelationProvider | None = None,
    lexicon: Lexicon | None = None,
) -> RenameClassification:
    """Full classification record for a rename event."""
    if provider is None:
        provider = CuratedRelationProvider.default()
    form = classify_form(event)
    semantics = classify_semantics(event, provider, lexicon)
    pairs = tuple(
        (a, r, _pair_relation(a, r, provider)) for a, r in term_pairs(event)
    )
    return RenameClassification(event, form, semantics, pairs)
