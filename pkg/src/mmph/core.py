"""Structural operations on hypergraphs: multiplicities, stripping, filling,
vertex deletion, connected components and loop order."""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Collection, Iterable

from .lang import Mmph, label_at, label_index


class EmptyResult(ValueError):
    """An operation removed every hyperedge."""


@dataclass(frozen=True)
class Multiplicity:
    vertex: str
    m: int


def multiplicity_map(h: Mmph) -> dict[str, int]:
    counts = Counter(v for e in h.hyperedges for v in e)
    return {v: counts[v] for v in h.vertices}


def multiplicities(h: Mmph) -> list[Multiplicity]:
    """Number of hyperedges containing each vertex, in vertex order."""
    return [Multiplicity(v, m) for v, m in multiplicity_map(h).items()]


def _nonempty(h: Mmph, what: str) -> Mmph:
    if not h.hyperedges:
        raise EmptyResult(f"{what} left no hyperedges")
    return h


def strip_edges(h: Mmph, drop: Collection[int] | int, seed: int | None = None) -> Mmph:
    """Remove hyperedges, either the given indices or ``drop`` random ones.

    A count needs a ``seed``; the chosen indices are
    ``random.Random(seed).sample(range(l), drop)``.  Vertices left in no
    hyperedge disappear with them.
    """
    if isinstance(drop, int):
        if seed is None:
            raise ValueError("a random strip needs a seed")
        if not 0 <= drop <= h.l:
            raise ValueError(f"cannot strip {drop} of {h.l} hyperedges")
        victims = set(random.Random(seed).sample(range(h.l), drop))
    else:
        victims = set(drop)
        bad = [i for i in victims if not 0 <= i < h.l]
        if bad:
            raise IndexError(f"hyperedge index out of range: {sorted(bad)}")
    kept = [e for i, e in enumerate(h.hyperedges) if i not in victims]
    return _nonempty(h.with_edges(kept), "stripping")


def keep_edges(h: Mmph, indices: Iterable[int]) -> Mmph:
    """Sub-hypergraph on the given hyperedge indices, in original order."""
    wanted = set(indices)
    return h.with_edges(e for i, e in enumerate(h.hyperedges) if i in wanted)


def _remove_vertices(h: Mmph, victims: set[str]) -> Mmph:
    edges: list[tuple[str, ...]] = []
    seen: set[frozenset[str]] = set()
    for e in h.hyperedges:
        reduced = tuple(v for v in e if v not in victims)
        key = frozenset(reduced)
        if len(reduced) < 2 or key in seen:
            continue
        seen.add(key)
        edges.append(reduced)
    return h.with_edges(edges)


def drop_m1_vertices(h: Mmph, fixpoint: bool = False) -> Mmph:
    """Remove vertices of multiplicity 1 from their hyperedges.

    Hyperedges that fall below two vertices are deleted.  One pass by
    default; ``fixpoint=True`` repeats until no vertex has m=1.
    """
    while True:
        ones = {v for v, m in multiplicity_map(h).items() if m == 1}
        if not ones:
            return h
        h = _nonempty(_remove_vertices(h, ones), "dropping m=1 vertices")
        if not fixpoint:
            return h


def delete_vertices(h: Mmph, victims: Iterable[str]) -> Mmph:
    """Remove vertices everywhere.

    Hyperedges left with fewer than two vertices are deleted and exact
    duplicates merge (first occurrence kept).  A hyperedge that becomes a
    proper subset of another one is kept.
    """
    victims = set(victims)
    unknown = victims - set(h.vertices)
    if unknown:
        raise KeyError(f"not vertices of the hypergraph: {sorted(unknown)}")
    return _nonempty(_remove_vertices(h, victims), "vertex deletion")


def fresh_labels(used: Iterable[str], count: int) -> list[str]:
    """``count`` labels following the highest used one in alphabet order."""
    start = max((label_index(v) for v in used), default=-1) + 1
    return [label_at(start + i) for i in range(count)]


def fill(h: Mmph, n: int | None = None) -> Mmph:
    """Pad every hyperedge with fresh vertices up to ``n`` (default: h's dimension).

    New labels are appended to their hyperedge and handed out edge by edge.
    """
    n = h.dimension if n is None else n
    largest = max((len(e) for e in h.hyperedges), default=0)
    if n < largest:
        raise ValueError(f"cannot fill to {n}: a hyperedge already has {largest} vertices")
    need = sum(n - len(e) for e in h.hyperedges)
    pool = iter(fresh_labels(h.vertices, need))
    edges = [tuple(e) + tuple(next(pool) for _ in range(n - len(e))) for e in h.hyperedges]
    return Mmph(max(n, h.dimension), tuple(edges))


def connected_components(h: Mmph) -> list[Mmph]:
    """Split into vertex-connected parts, ordered by their first hyperedge."""
    parent = list(range(h.l))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner: dict[str, int] = {}
    for i, e in enumerate(h.hyperedges):
        for v in e:
            if v in owner:
                a, b = find(owner[v]), find(i)
                if a != b:
                    parent[max(a, b)] = min(a, b)
            else:
                owner[v] = i
    groups: dict[int, list[tuple[str, ...]]] = {}
    for i, e in enumerate(h.hyperedges):
        groups.setdefault(find(i), []).append(e)
    return [h.with_edges(edges) for _, edges in sorted(groups.items())]


# -- loops --------------------------------------------------------------------


@dataclass(frozen=True)
class LoopReport:
    """Largest loop order found and a hyperedge-index cycle realizing it.

    ``complete`` is False when the search budget ran out, in which case
    ``max_order`` is only a lower bound.
    """

    max_order: int
    witness: tuple[int, ...] | None
    complete: bool = True


def max_loop_order(h: Mmph, budget: int = 2_000_000) -> LoopReport:
    """Largest loop in the hypergraph.

    A loop of order ``r >= 3`` is a cyclic sequence of ``r`` distinct
    hyperedges in which neighbours intersect and no vertex lies in more than
    two of the ``r`` hyperedges (so the connecting vertices are distinct).
    Order 2 is a pair of hyperedges sharing at least two vertices.
    """
    sets = h.edge_sets()
    l = len(sets)
    nbrs = [[j for j in range(l) if j != i and sets[i] & sets[j]] for i in range(l)]
    best, witness = 0, None
    for i in range(l):
        for j in nbrs[i]:
            if j > i and len(sets[i] & sets[j]) >= 2:
                best, witness = 2, (i, j)
                break
        if best:
            break

    cover: Counter[str] = Counter()
    path: list[int] = []
    work = 0
    exhausted = False

    def extend(last: int) -> None:
        nonlocal best, witness, work, exhausted
        work += 1
        if work > budget:
            exhausted = True
            return
        start = path[0]
        for j in nbrs[last]:
            if exhausted:
                return
            if j <= start or j in path:
                continue
            if any(cover[v] >= 2 for v in sets[j]):
                continue
            for v in sets[j]:
                cover[v] += 1
            path.append(j)
            if len(path) >= 3 and len(path) > best and sets[j] & sets[start]:
                # closing vertex must not already be in two loop edges
                if any(cover[v] == 2 for v in sets[j] & sets[start]):
                    best, witness = len(path), tuple(path)
            if len(path) < l:
                extend(j)
            path.pop()
            for v in sets[j]:
                cover[v] -= 1

    for i in range(l):
        if exhausted or l - i <= best:
            break
        for v in sets[i]:
            cover[v] += 1
        path.append(i)
        extend(i)
        path.pop()
        for v in sets[i]:
            cover[v] -= 1
    return LoopReport(best, witness, not exhausted)
