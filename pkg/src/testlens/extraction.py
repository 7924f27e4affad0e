"""Tolerant extraction of test methods from Java-style source text.

A lexical scanner tokenizes the source (comments dropped, string literals
kept as single tokens), then a signature heuristic finds method
declarations and captures their brace-balanced bodies. No compiler
front-end is involved, so non-compiling snapshots still scan.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum


class TokenKind(Enum):
    WORD = "word"
    PUNCTUATION = "punctuation"
    STRING = "string-literal"
    NUMBER = "number"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    start: int
    end: int


@dataclass(frozen=True)
class TokenStream:
    tokens: tuple[Token, ...]

    def texts(self) -> list[str]:
        return [t.text for t in self.tokens]


@dataclass(frozen=True)
class SourceFile:
    path: str
    text: str


@dataclass(frozen=True)
class TestMethod:
    name: str
    annotations: tuple[str, ...]
    body_tokens: TokenStream
    name_span: tuple[int, int]
    body_span: tuple[int, int]


class PartialParseError(Exception):
    """Unbalanced braces at end of input; carries the methods recovered so far."""

    def __init__(self, message: str, methods: list[TestMethod]):
        super().__init__(message)
        self.methods = methods


_WORD_RE = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*")
_NUMBER_RE = re.compile(r"\d[\w.]*")

_MODIFIERS = frozenset({
    "public", "private", "protected", "static", "final", "abstract",
    "synchronized", "native", "strictfp", "default", "transient", "volatile",
})

# words that look like `name (` but never start a method declaration
_NOT_METHOD_NAMES = frozenset({
    "if", "for", "while", "switch", "catch", "do", "else", "try", "return",
    "new", "super", "this", "assert", "throw", "synchronized",
})

_TYPE_END_PUNCT = frozenset({">", "]"})


def tokenize(text: str) -> TokenStream:
    """Lex Java-ish source. Comments are skipped; literals are single tokens."""
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "/" and i + 1 < n:
            nxt = text[i + 1]
            if nxt == "/":
                end = text.find("\n", i)
                i = n if end == -1 else end + 1
                continue
            if nxt == "*":
                end = text.find("*/", i + 2)
                i = n if end == -1 else end + 2
                continue
        if ch in "\"'":
            j = i + 1
            while j < n:
                if text[j] == "\\":
                    j += 2
                    continue
                if text[j] == ch:
                    j += 1
                    break
                j += 1
            else:
                j = n
            tokens.append(Token(TokenKind.STRING, text[i:j], i, j))
            i = j
            continue
        m = _WORD_RE.match(text, i)
        if m:
            tokens.append(Token(TokenKind.WORD, m.group(), i, m.end()))
            i = m.end()
            continue
        m = _NUMBER_RE.match(text, i)
        if m:
            tokens.append(Token(TokenKind.NUMBER, m.group(), i, m.end()))
            i = m.end()
            continue
        tokens.append(Token(TokenKind.PUNCTUATION, ch, i, i + 1))
        i += 1
    return TokenStream(tuple(tokens))


def _match_balanced(tokens: tuple[Token, ...], start: int, open_text: str, close_text: str) -> int | None:
    """Index of the token closing the bracket opened at ``start``, or None."""
    depth = 0
    for i in range(start, len(tokens)):
        text = tokens[i].text
        if tokens[i].kind is TokenKind.PUNCTUATION:
            if text == open_text:
                depth += 1
            elif text == close_text:
                depth -= 1
                if depth == 0:
                    return i
    return None


def _match_balanced_back(tokens: tuple[Token, ...], end: int, open_text: str, close_text: str) -> int | None:
    depth = 0
    for i in range(end, -1, -1):
        text = tokens[i].text
        if tokens[i].kind is TokenKind.PUNCTUATION:
            if text == close_text:
                depth += 1
            elif text == open_text:
                depth -= 1
                if depth == 0:
                    return i
    return None


def _scan_return_type_back(tokens: tuple[Token, ...], i: int) -> int | None:
    """Index of the first token of the return type ending at ``i``, or None."""
    if i < 0:
        return None
    tok = tokens[i]
    if tok.kind is TokenKind.PUNCTUATION and tok.text in _TYPE_END_PUNCT:
        opener = "<" if tok.text == ">" else "["
        start = _match_balanced_back(tokens, i, opener, tok.text)
        if start is None or start == 0:
            return None
        base = tokens[start - 1]
        if base.kind is TokenKind.WORD and base.text not in _NOT_METHOD_NAMES:
            return start - 1
        return None
    if tok.kind is TokenKind.WORD and tok.text not in _MODIFIERS and tok.text not in _NOT_METHOD_NAMES:
        return i
    return None


def _collect_annotations(tokens: tuple[Token, ...], before: int, text: str) -> tuple[str, ...]:
    """Annotation texts immediately preceding token index ``before``."""
    annotations: list[str] = []
    i = before
    while i >= 0:
        tok = tokens[i]
        if tok.kind is TokenKind.WORD and tok.text in _MODIFIERS:
            i -= 1
            continue
        # remainder of a dotted return type: java.util.List
        if (
            tok.kind is TokenKind.PUNCTUATION
            and tok.text == "."
            and i >= 1
            and tokens[i - 1].kind is TokenKind.WORD
        ):
            i -= 2
            continue
        if tok.kind is TokenKind.PUNCTUATION and tok.text == ")":
            open_idx = _match_balanced_back(tokens, i, "(", ")")
            if (
                open_idx is not None
                and open_idx >= 2
                and tokens[open_idx - 1].kind is TokenKind.WORD
                and tokens[open_idx - 2].text == "@"
            ):
                annotations.append(text[tokens[open_idx - 2].start : tok.end])
                i = open_idx - 3
                continue
            break
        if tok.kind is TokenKind.WORD and i >= 1 and tokens[i - 1].text == "@":
            annotations.append(text[tokens[i - 1].start : tok.end])
            i -= 2
            continue
        break
    annotations.reverse()
    return tuple(annotations)


def _throws_clause_ok(tokens: tuple[Token, ...], start: int, brace: int) -> bool:
    """Tokens between ')' and '{' must be an optional throws clause."""
    span = tokens[start:brace]
    if not span:
        return True
    if span[0].kind is not TokenKind.WORD or span[0].text != "throws":
        return False
    for tok in span[1:]:
        if tok.kind is TokenKind.WORD:
            continue
        if tok.kind is TokenKind.PUNCTUATION and tok.text in {",", "."}:
            continue
        return False
    return True


def extract_methods(src: SourceFile) -> list[TestMethod]:
    """All method declarations found by the signature heuristic.

    Methods inside nested or anonymous classes are extracted too and
    attributed to the file. Raises PartialParseError when a method body
    never closes before end of input; the exception lists every method
    recovered before the failure.
    """
    stream = tokenize(src.text)
    tokens = stream.tokens
    methods: list[TestMethod] = []
    for i, tok in enumerate(tokens):
        if tok.kind is not TokenKind.WORD or tok.text in _NOT_METHOD_NAMES:
            continue
        if i + 1 >= len(tokens) or tokens[i + 1].text != "(":
            continue
        close = _match_balanced(tokens, i + 1, "(", ")")
        if close is None:
            continue
        type_start = _scan_return_type_back(tokens, i - 1)
        if type_start is None:
            continue
        # find the opening brace after the parameter list / throws clause
        brace = close + 1
        while brace < len(tokens) and tokens[brace].text != "{":
            if tokens[brace].text == ";":
                brace = -1
                break
            brace += 1
        if brace == -1 or brace >= len(tokens):
            continue
        if not _throws_clause_ok(tokens, close + 1, brace):
            continue
        body_close = _match_balanced(tokens, brace, "{", "}")
        if body_close is None:
            raise PartialParseError(
                f"{src.path}: unbalanced braces after method {tok.text!r}; "
                f"recovered {len(methods)} method(s)",
                methods,
            )
        annotations = _collect_annotations(tokens, type_start - 1, src.text)
        body = tokens[brace + 1 : body_close]
        methods.append(
            TestMethod(
                name=tok.text,
                annotations=annotations,
                body_tokens=TokenStream(tuple(body)),
                name_span=(tok.start, tok.end),
                body_span=(tokens[brace].start, tokens[body_close].end),
            )
        )
    return methods


_IMPORT_RE = re.compile(r"^\s*import\s+(?:static\s+)?([\w.]+(?:\.\*)?)\s*;", re.MULTILINE)


def has_junit_import(src: SourceFile) -> bool:
    return any(
        name == "org.junit" or name.startswith(("org.junit.", "junit."))
        for name in _IMPORT_RE.findall(src.text)
    )


def _annotation_name(annotation: str) -> str:
    body = annotation.lstrip("@")
    return body.split("(", 1)[0].strip()


def is_test_method(m: TestMethod) -> bool:
    """JUnit 4 style @Test annotation, or a JUnit 3 style test* name."""
    if any(_annotation_name(a) == "Test" for a in m.annotations):
        return True
    return m.name.lower().startswith("test")


def is_test_file(src: SourceFile) -> bool:
    """A JUnit import plus at least one test method."""
    if not has_junit_import(src):
        return False
    try:
        methods = extract_methods(src)
    except PartialParseError as err:
        methods = err.methods
    return any(is_test_method(m) for m in methods)
