"""The MMP hypergraph string language.

A hypergraph is written as hyperedges separated by commas and terminated by a
period, each hyperedge being the concatenation of its vertex labels::

    123,34,45,567,78,81,26.

A label is one printable ASCII character other than space, ``0``, ``+``,
``,`` and ``.``, optionally preceded by any number of ``+`` characters
(``A``, ``+A``, ``++A`` are three different vertices).

The same module reads and writes coordinatization files, one vertex per
line::

    # comment
    1 = (0,0,1)
    2 = (phi-1,0,-phi,0)
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Literal, Sequence

from .exact import Coordinatization, Ring, ScalarSyntaxError, format_vector, parse_scalar

FORBIDDEN = frozenset(" 0+,.")
PREFIX = "+"

# Label order used when new vertices have to be named: digits, upper and
# lower case letters, then the remaining printable punctuation in ASCII
# order.  After the 90 base characters the cycle repeats behind '+', '++', ...
ALPHABET = (
    "123456789"
    "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    "abcdefghijklmnopqrstuvwxyz"
    + "".join(
        c for c in map(chr, range(33, 127)) if not c.isalnum() and c not in FORBIDDEN
    )
)
assert len(ALPHABET) == 90


class MmphSyntaxError(ValueError):
    """Malformed hypergraph or coordinatization text."""

    def __init__(self, message: str, position: int | None = None) -> None:
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
        self.position = position


def label_index(label: str) -> int:
    """Position of ``label`` in the label alphabet (``'1'`` is 0)."""
    depth = len(label) - 1
    base = label[-1]
    if label[:-1] != PREFIX * depth or base not in ALPHABET:
        raise ValueError(f"not a vertex label: {label!r}")
    return depth * len(ALPHABET) + ALPHABET.index(base)


def label_at(index: int) -> str:
    depth, pos = divmod(index, len(ALPHABET))
    return PREFIX * depth + ALPHABET[pos]


def is_label(text: str) -> bool:
    try:
        label_index(text)
    except ValueError:
        return False
    return True


@dataclass(frozen=True)
class Mmph:
    """An ``n``-dimensional hypergraph given by its ordered hyperedges.

    Vertices are ordered by first appearance.  Equality is structural:
    same dimension and the same hyperedges in the same order.
    """

    dimension: int
    hyperedges: tuple[tuple[str, ...], ...] = field(default=())

    def __post_init__(self) -> None:
        edges = tuple(tuple(e) for e in self.hyperedges)
        object.__setattr__(self, "hyperedges", edges)
        if self.dimension < 1:
            raise ValueError("dimension must be positive")

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[str]], dimension: int | None = None) -> Mmph:
        edges = tuple(tuple(e) for e in edges)
        if dimension is None:
            dimension = max((len(e) for e in edges), default=1)
        return cls(dimension, edges)

    @cached_property
    def vertices(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for e in self.hyperedges:
            for v in e:
                seen.setdefault(v, None)
        return tuple(seen)

    @property
    def k(self) -> int:
        return len(self.vertices)

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.hyperedges)

    @property
    def name(self) -> str:
        return f"{self.k}-{self.l}"

    def edge_sets(self) -> list[frozenset[str]]:
        return [frozenset(e) for e in self.hyperedges]

    def with_edges(self, edges: Iterable[Iterable[str]]) -> Mmph:
        return Mmph(self.dimension, tuple(tuple(e) for e in edges))

    def __str__(self) -> str:
        return serialize_mmph(self)


def _tokenize_edges(text: str) -> list[list[tuple[str, int]]]:
    edges: list[list[tuple[str, int]]] = []
    current: list[tuple[str, int]] = []
    prefix = ""
    prefix_pos = 0
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            if prefix:
                raise MmphSyntaxError("whitespace inside a vertex label", i)
            i += 1
            continue
        if c == PREFIX:
            if not prefix:
                prefix_pos = i
            prefix += c
        elif c in ",.":
            if prefix:
                raise MmphSyntaxError("dangling '+' with no base character", prefix_pos)
            if not current:
                raise MmphSyntaxError("empty hyperedge", i)
            edges.append(current)
            current = []
            if c == ".":
                rest = text[i + 1 :]
                if rest.strip():
                    raise MmphSyntaxError("text after the terminating period", i + 1)
                return edges
        elif c == "0":
            raise MmphSyntaxError("'0' is not a valid vertex character", i)
        elif not (33 <= ord(c) <= 126):
            raise MmphSyntaxError(f"illegal character {c!r}", i)
        else:
            current.append((prefix + c, prefix_pos if prefix else i))
            prefix = ""
        i += 1
    if prefix:
        raise MmphSyntaxError("dangling '+' with no base character", prefix_pos)
    raise MmphSyntaxError("missing terminating period", n)


def parse_mmph(text: str, dimension: int | None = None) -> Mmph:
    """Parse an MMP hypergraph string.

    Whitespace between labels is ignored.  Without ``dimension`` the
    dimension is the size of the largest hyperedge.
    """
    raw = _tokenize_edges(text)
    edges: list[tuple[str, ...]] = []
    seen: dict[frozenset[str], int] = {}
    for idx, toks in enumerate(raw):
        labels = tuple(t for t, _ in toks)
        if len(set(labels)) != len(labels):
            dup = next(t for t in labels if labels.count(t) > 1)
            raise MmphSyntaxError(f"vertex {dup!r} repeated in hyperedge {idx}")
        key = frozenset(labels)
        if key in seen:
            raise MmphSyntaxError(f"hyperedge {idx} duplicates hyperedge {seen[key]}")
        seen[key] = idx
        edges.append(labels)
    largest = max(len(e) for e in edges)
    if dimension is None:
        dimension = largest
    elif dimension < largest:
        raise MmphSyntaxError(
            f"dimension {dimension} is smaller than the largest hyperedge ({largest})"
        )
    return Mmph(dimension, tuple(edges))


def serialize_mmph(h: Mmph) -> str:
    return ",".join("".join(e) for e in h.hyperedges) + "."


def parse_mmph_lines(text: str, dimension: int | None = None) -> list[Mmph]:
    """Parse newline-delimited hypergraph strings, skipping blank lines.

    There is no comment syntax: ``#`` is a legal vertex label.
    """
    return [parse_mmph(line, dimension) for line in text.splitlines() if line.strip()]


# -- validation --------------------------------------------------------------

Mode = Literal["strict", "lenient"]

VERTEX_COVERAGE = "vertex-coverage"
EDGE_SIZE = "edge-size"
SINGLE_INTERSECTION = "single-intersection"
INTERSECTION_BOUND = "intersection-bound"
REPEATED_VERTEX = "repeated-vertex"
DUPLICATE_EDGE = "duplicate-edge"

# Findings of this rule are informational: they never fail lenient validation.
INFORMATIONAL = frozenset({SINGLE_INTERSECTION})


@dataclass(frozen=True)
class Violation:
    rule: str
    edges: tuple[int, ...]
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]
    strict_pass: bool
    lenient_pass: bool

    def by_rule(self, rule: str) -> list[Violation]:
        return [v for v in self.violations if v.rule == rule]


def validate(h: Mmph, mode: Mode = "lenient") -> ValidationReport:
    """Check the structural rules of an MMP hypergraph.

    Both modes check vertex coverage, hyperedge sizes (2..n), repeated
    vertices, duplicate hyperedges and the ``n - 2`` intersection bound.
    Strict mode also lists hyperedge pairs sharing exactly one vertex; those
    findings fail ``strict_pass`` only.
    """
    if mode not in ("strict", "lenient"):
        raise ValueError(f"unknown validation mode {mode!r}")
    n = h.dimension
    found: list[Violation] = []
    covered = {v for e in h.hyperedges for v in e}
    for v in h.vertices:
        if v not in covered:  # pragma: no cover - vertices derive from edges
            found.append(Violation(VERTEX_COVERAGE, (), f"vertex {v!r} is in no hyperedge"))
    for i, e in enumerate(h.hyperedges):
        if not 2 <= len(e) <= n:
            found.append(
                Violation(EDGE_SIZE, (i,), f"hyperedge {i} has {len(e)} vertices (allowed 2..{n})")
            )
        if len(set(e)) != len(e):
            found.append(Violation(REPEATED_VERTEX, (i,), f"hyperedge {i} repeats a vertex"))
    sets = h.edge_sets()
    single = False
    for i, j in combinations(range(len(sets)), 2):
        common = len(sets[i] & sets[j])
        if sets[i] == sets[j]:
            found.append(Violation(DUPLICATE_EDGE, (i, j), f"hyperedges {i} and {j} coincide"))
        elif common > n - 2:
            found.append(
                Violation(
                    INTERSECTION_BOUND,
                    (i, j),
                    f"hyperedges {i} and {j} share {common} vertices (at most {n - 2} allowed)",
                )
            )
        elif common == 1:
            single = True
            if mode == "strict":
                found.append(
                    Violation(
                        SINGLE_INTERSECTION, (i, j), f"hyperedges {i} and {j} share one vertex"
                    )
                )
    lenient_pass = not any(v.rule not in INFORMATIONAL for v in found)
    return ValidationReport(tuple(found), lenient_pass and not single, lenient_pass)


# -- coordinatization files ---------------------------------------------------

# '#' is also a legal label, so a line is a comment only if it is not a vector line.
_LINE_RE = re.compile(r"^\s*(\S+?)\s*=\s*\(([^()]*)\)\s*(?:#.*)?$")


def parse_coordinatization(text: str, ring: Ring) -> Coordinatization:
    """Read ``<label> = (c1,...,cn)`` lines; ``#`` starts a comment."""
    vectors: dict[str, tuple] = {}
    dim: int | None = None
    for lineno, line in enumerate(text.splitlines(), 1):
        m = _LINE_RE.match(line)
        if not m:
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            raise MmphSyntaxError(f"line {lineno}: expected '<label> = (c1,...,cn)'")
        label, body = m.groups()
        if not is_label(label):
            raise MmphSyntaxError(f"line {lineno}: invalid vertex label {label!r}")
        if label in vectors:
            raise MmphSyntaxError(f"line {lineno}: duplicate label {label!r}")
        try:
            vec = tuple(parse_scalar(tok, ring) for tok in body.split(","))
        except ScalarSyntaxError as exc:
            raise MmphSyntaxError(f"line {lineno}: {exc}") from None
        if dim is None:
            dim = len(vec)
        elif len(vec) != dim:
            raise MmphSyntaxError(
                f"line {lineno}: vector for {label!r} has {len(vec)} components, expected {dim}"
            )
        vectors[label] = vec
    if dim is None:
        raise MmphSyntaxError("no vectors found")
    try:
        return Coordinatization(ring, dim, vectors)
    except ValueError as exc:
        raise MmphSyntaxError(str(exc)) from None


def serialize_coordinatization(c: Coordinatization, order: Sequence[str] | None = None) -> str:
    labels = list(order) if order is not None else list(c.vectors)
    return "".join(f"{lab} = {format_vector(c.vectors[lab])}\n" for lab in labels)
