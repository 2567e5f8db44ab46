"""0/1 assignments: binarity, classification, criticality and parity proofs.

A valid assignment puts exactly one 1 in every hyperedge.  ``find_assignment``
searches for one by backtracking on "which vertex of this hyperedge is the 1"
with unit propagation; ``enumerate_assignments`` is an independent brute-force
counter used as an oracle.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Literal, Mapping

import numpy as np

from .core import keep_edges, multiplicity_map
from .lang import Mmph, is_label

Assignment = dict[str, int]

BMMPH = "BMMPH"
KS = "KS-NBMMPH"
NON_KS = "nonKS-NBMMPH"
Kind = Literal["BMMPH", "KS-NBMMPH", "nonKS-NBMMPH"]

BRUTE_FORCE_LIMIT = 24


def _index(h: Mmph) -> tuple[list[list[int]], list[list[int]]]:
    pos = {v: i for i, v in enumerate(h.vertices)}
    edges = [[pos[v] for v in e] for e in h.hyperedges]
    incident: list[list[int]] = [[] for _ in pos]
    for j, e in enumerate(edges):
        for v in e:
            incident[v].append(j)
    return edges, incident


def _search(k: int, edges: list[list[int]], incident: list[list[int]]) -> list[int] | None:
    val = [-1] * k
    trail: list[int] = []

    def propagate(queue: list[tuple[int, int]]) -> bool:
        while queue:
            v, x = queue.pop()
            if val[v] != -1:
                if val[v] != x:
                    return False
                continue
            val[v] = x
            trail.append(v)
            for j in incident[v]:
                if x == 1:
                    for u in edges[j]:
                        if u != v:
                            if val[u] == 1:
                                return False
                            if val[u] == -1:
                                queue.append((u, 0))
                else:
                    free, last = 0, -1
                    for u in edges[j]:
                        if val[u] == 1:
                            break
                        if val[u] == -1:
                            free += 1
                            last = u
                    else:
                        if free == 0:
                            return False
                        if free == 1:
                            queue.append((last, 1))
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            val[trail.pop()] = -1

    def open_edge(start: int) -> int:
        for j in range(start, len(edges)):
            if not any(val[u] == 1 for u in edges[j]):
                return j
        return -1

    if any(not e for e in edges):
        return None
    if not propagate([(e[0], 1) for e in edges if len(e) == 1]):
        return None
    # frames: (edge, candidate vertices, next candidate, trail mark)
    stack: list[list] = []
    j = open_edge(0)
    if j < 0:
        return val
    stack.append([j, [u for u in edges[j] if val[u] == -1], 0, len(trail)])
    while stack:
        frame = stack[-1]
        j, cands, nxt, mark = frame
        undo(mark)
        if nxt >= len(cands):
            stack.pop()
            continue
        frame[2] = nxt + 1
        if not propagate([(cands[nxt], 1)]):
            continue
        j2 = open_edge(j + 1)
        if j2 < 0:
            return val
        stack.append([j2, [u for u in edges[j2] if val[u] == -1], 0, len(trail)])
    return None


def parity_certificate(h: Mmph) -> list[int] | None:
    """Indices of an odd number of hyperedges covering every vertex evenly.

    Such a subset has a parity proof, so its existence proves ``h``
    non-binary.  Found by Gaussian elimination over GF(2) on the
    edge-vertex incidence vectors: every dependency among the rows is an
    even-cover subset, and the dependencies met during elimination span all
    of them, so an odd one exists iff one of those is odd.
    """
    pos = {v: i for i, v in enumerate(h.vertices)}
    pivots: dict[int, tuple[int, int]] = {}
    for j, e in enumerate(h.hyperedges):
        vec = sum(1 << pos[v] for v in e)
        combo = 1 << j
        while vec:
            top = vec.bit_length() - 1
            if top not in pivots:
                pivots[top] = (vec, combo)
                break
            pv, pc = pivots[top]
            vec ^= pv
            combo ^= pc
        else:
            if combo.bit_count() % 2:
                return [i for i in range(h.l) if combo >> i & 1]
    return None


def find_assignment(h: Mmph) -> Assignment | None:
    """A valid 0/1 assignment, or None when the hypergraph is non-binary.

    Search order is fixed (lowest-index open hyperedge, vertices in written
    order), so the witness is reproducible.  A parity certificate, when one
    exists, settles non-binarity before any search.
    """
    if parity_certificate(h) is not None:
        return None
    edges, incident = _index(h)
    val = _search(len(h.vertices), edges, incident)
    if val is None:
        return None
    return {v: max(x, 0) for v, x in zip(h.vertices, val)}


def is_binary(h: Mmph) -> bool:
    return find_assignment(h) is not None


def is_valid_assignment(h: Mmph, a: Mapping[str, int]) -> bool:
    return all(sum(a.get(v, 0) for v in e) == 1 for e in h.hyperedges) and all(
        a.get(v) in (0, 1) for v in h.vertices
    )


def enumerate_assignments(h: Mmph, chunk_bits: int = 20) -> int:
    """Count valid assignments by scanning all ``2**k`` 0/1 vectors."""
    k = len(h.vertices)
    if k > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_LIMIT} vertices, got {k}")
    pos = {v: i for i, v in enumerate(h.vertices)}
    masks = [np.uint32(sum(1 << pos[v] for v in e)) for e in h.hyperedges]
    total = 1 << k
    step = 1 << min(chunk_bits, k)
    count = 0
    for lo in range(0, total, step):
        x = np.arange(lo, min(lo + step, total), dtype=np.uint32)
        ok = np.ones(x.shape, dtype=bool)
        for m in masks:
            y = x & m
            ok &= (y != 0) & ((y & (y - np.uint32(1))) == 0)
        count += int(ok.sum())
    return count


@dataclass(frozen=True)
class Classification:
    kind: Kind
    witness: Assignment | None = None


def classify(h: Mmph) -> Classification:
    witness = find_assignment(h)
    if witness is not None:
        return Classification(BMMPH, witness)
    if all(len(e) == h.dimension for e in h.hyperedges):
        return Classification(KS)
    return Classification(NON_KS)


def _binary_without(h: Mmph, index: int) -> bool:
    # orphaned vertices vanish with the edge; they cannot affect binarity
    return is_binary(keep_edges(h, (i for i in range(h.l) if i != index)))


def is_critical(h: Mmph) -> bool:
    """Non-binary, and removing any one hyperedge leaves a binary hypergraph."""
    if is_binary(h):
        return False
    return all(_binary_without(h, i) for i in range(h.l))


def criticalize(h: Mmph, seed: int) -> Mmph:
    """Drop hyperedges in seeded random order while the rest stays non-binary.

    One pass is enough: a removal rejected once is rejected forever, since
    every subset of a binary hypergraph is binary.
    """
    if is_binary(h):
        raise ValueError("criticalize needs a non-binary hypergraph")
    order = list(range(h.l))
    random.Random(seed).shuffle(order)
    keep = set(order)
    for i in order:
        trial = keep - {i}
        if trial and not is_binary(keep_edges(h, trial)):
            keep = trial
    return keep_edges(h, keep)


def has_parity_proof(h: Mmph) -> bool:
    """Odd number of hyperedges and every vertex in an even number of them."""
    return h.l % 2 == 1 and all(m % 2 == 0 for m in multiplicity_map(h).values())


FilterVariant = Literal["strict", "relaxed"]


def filter_full_edge_no_m1(h: Mmph, variant: FilterVariant = "strict") -> bool:
    """Some hyperedge has exactly n vertices, none of multiplicity 1.

    The relaxed variant only asks for a hyperedge of size n.
    """
    if variant not in ("strict", "relaxed"):
        raise ValueError(f"unknown filter variant {variant!r}")
    m = multiplicity_map(h)
    for e in h.hyperedges:
        if len(e) == h.dimension and (variant == "relaxed" or all(m[v] >= 2 for v in e)):
            return True
    return False


def format_assignment(a: Mapping[str, int]) -> str:
    return "".join(f"{v}={x}\n" for v, x in a.items())


def parse_assignment(text: str) -> Assignment:
    out: Assignment = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        label, sep, value = line.strip().rpartition("=")
        if not sep or not is_label(label) or value not in ("0", "1"):
            raise ValueError(f"line {lineno}: expected '<label>=0' or '<label>=1'")
        out[label] = int(value)
    return out
