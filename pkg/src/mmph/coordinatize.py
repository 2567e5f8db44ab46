"""Orthogonality checks, hyperedge completion and master generation from a
component alphabet."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .core import connected_components
from .exact import (
    Coordinatization,
    ExactScalar,
    ExactVector,
    Ring,
    RingMismatch,
    canonical,
    integral_coordinates,
    is_zero_vector,
)
from .lang import Mmph, label_at
from .solver import is_binary


def inner_product(u: Sequence[ExactScalar], v: Sequence[ExactScalar]) -> ExactScalar:
    """Hermitian product ``sum(conj(u_i) * v_i)``; plain dot product on real rings."""
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    if not u:
        raise ValueError("empty vectors")
    ring = u[0].ring
    if any(x.ring != ring for x in itertools.chain(u, v)):
        raise RingMismatch("vectors over different rings")
    total = ExactScalar.zero(ring)
    for x, y in zip(u, v):
        total = total + x.conj() * y
    return total


def are_parallel(u: Sequence[ExactScalar], v: Sequence[ExactScalar]) -> bool:
    return canonical(u) == canonical(v)


class MissingVector(KeyError):
    pass


@dataclass(frozen=True)
class OrthoReport:
    """Outcome of checking a coordinatization against a hypergraph.

    ``failures`` holds ``(edge index, (label, label), inner product)`` for
    every non-orthogonal pair; ``parallel_pairs`` holds
    ``(edge index, (label, label))`` for pairs that are scalar multiples.
    """

    failures: tuple[tuple[int, tuple[str, str], ExactScalar], ...]
    parallel_pairs: tuple[tuple[int, tuple[str, str]], ...]

    @property
    def passed(self) -> bool:
        return not self.failures and not self.parallel_pairs


def verify_coordinatization(h: Mmph, c: Coordinatization) -> OrthoReport:
    missing = [v for v in h.vertices if v not in c]
    if missing:
        raise MissingVector(f"no vector for vertices {missing}")
    canon = {v: canonical(c[v]) for v in h.vertices}
    failures = []
    parallel = []
    for j, e in enumerate(h.hyperedges):
        for a, b in itertools.combinations(e, 2):
            p = inner_product(c[a], c[b])
            if not p.is_zero():
                failures.append((j, (a, b), p))
            if canon[a] == canon[b]:
                parallel.append((j, (a, b)))
    return OrthoReport(tuple(failures), tuple(parallel))


def _primitive(v: ExactVector) -> ExactVector:
    """Scale to the smallest integral multiple of the canonical form."""
    v = canonical(v)
    a, b = integral_coordinates(v)
    g = 0
    for x in itertools.chain(a, b):
        g = gcd(g, x)
    ring = v[0].ring
    return tuple(ExactScalar(ring, Fraction(x, g), Fraction(y, g)) for x, y in zip(a, b))


def complete_hyperedge(vectors: Sequence[ExactVector], n: int) -> list[ExactVector]:
    """``n - s`` vectors spanning the orthogonal complement of ``s`` orthogonal inputs.

    Gram-Schmidt on the standard basis, exact and unnormalized.  Each output
    vector is rescaled to a primitive integral representative whose first
    nonzero component is 1.
    """
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        raise ValueError("need at least one vector to fix the ring")
    ring = vectors[0][0].ring
    for v in vectors:
        if len(v) != n:
            raise ValueError(f"vector of length {len(v)} in dimension {n}")
        if is_zero_vector(v):
            raise ValueError("zero vector among the inputs")
    for (i, u), (j, v) in itertools.combinations(enumerate(vectors), 2):
        if not inner_product(u, v).is_zero():
            raise ValueError(f"inputs {i} and {j} are not orthogonal")
    if len(vectors) > n:
        raise ValueError("more than n vectors are linearly dependent")
    basis: list[tuple[ExactVector, ExactScalar]] = [(v, inner_product(v, v)) for v in vectors]
    out: list[ExactVector] = []
    zero, one = ExactScalar.zero(ring), ExactScalar.one(ring)
    for axis in range(n):
        if len(basis) == n:
            break
        w = tuple(one if i == axis else zero for i in range(n))
        for u, uu in basis:
            coef = inner_product(u, w) / uu
            if coef:
                w = tuple(wi - coef * ui for wi, ui in zip(w, u))
        if is_zero_vector(w):
            continue
        w = _primitive(w)
        basis.append((w, inner_product(w, w)))
        out.append(w)
    return out


# -- master generation ----------------------------------------------------------


class BudgetExceeded(RuntimeError):
    pass


def _gram_zero(vectors: list[ExactVector], ring: Ring) -> np.ndarray:
    """Boolean matrix of exactly vanishing inner products."""
    coords = [integral_coordinates(v) for v in vectors]
    a = [c[0] for c in coords]
    b = [c[1] for c in coords]
    biggest = max((abs(x) for row in a + b for x in row), default=0)
    n = len(vectors[0])
    dtype = np.int64 if 3 * n * biggest * biggest < 2**62 else object
    A = np.array(a, dtype=dtype)
    B = np.array(b, dtype=dtype)
    if ring == "rational":
        return (A @ A.T) == 0
    if ring == "golden":
        # (a + b phi)(c + d phi) = (ac + bd) + (ad + bc + bd) phi
        re = A @ A.T + B @ B.T
        im = A @ B.T + B @ A.T + B @ B.T
        return (re == 0) & (im == 0)
    # conj(a + b w) = (a - b) - b w, then (p + q w)(c + d w) = (pc - qd) + (pd + qc - qd) w
    P, Q = A - B, -B
    re = P @ A.T - Q @ B.T
    im = P @ B.T + Q @ A.T - Q @ B.T
    return (re == 0) & (im == 0)


def _bitsets(adj: np.ndarray) -> list[int]:
    packed = np.packbits(adj, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def _bits(x: int) -> Iterable[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def n_cliques(adj: list[int], n: int, budget: int | None = None) -> list[tuple[int, ...]]:
    """All cliques of exactly ``n`` vertices in a graph with no larger clique.

    Pivoting Bron-Kerbosch without the excluded set: with no clique above
    size ``n`` every ``n``-clique is maximal, and moving processed vertices
    out of ``P`` already prevents duplicates.  Branches that cannot reach
    ``n`` vertices are cut.
    """
    out: list[tuple[int, ...]] = []
    work = 0

    def expand(r: list[int], p: int) -> None:
        nonlocal work
        work += 1
        if budget is not None and work > budget:
            raise BudgetExceeded(f"clique search exceeded {budget} steps")
        if len(r) == n:
            out.append(tuple(sorted(r)))
            return
        if len(r) + p.bit_count() < n:
            return
        pivot = max(_bits(p), key=lambda u: (p & adj[u]).bit_count())
        for v in list(_bits(p & ~adj[pivot])):
            r.append(v)
            expand(r, p & adj[v])
            r.pop()
            p &= ~(1 << v)
            if len(r) + p.bit_count() < n:
                return

    expand([], (1 << len(adj)) - 1)
    out.sort()
    return out


def _enumerate_projective(n: int, components: Sequence[ExactScalar]) -> list[ExactVector]:
    seen: set[ExactVector] = set()
    for combo in itertools.product(components, repeat=n):
        if not is_zero_vector(combo):
            seen.add(canonical(combo))
    return sorted(seen, key=lambda v: tuple(x.sort_key() for x in v))


def vecfind_master(
    n: int,
    components: Sequence[ExactScalar],
    ring: Ring,
    budget: int | None = None,
) -> tuple[Mmph, Coordinatization]:
    """Hypergraph of all orthonormal-basis ``n``-tuples over a component alphabet.

    Vectors are taken up to scalar multiples (first nonzero component 1),
    ordered lexicographically by component, and named in label-alphabet
    order after discarding those in no ``n``-clique.  Hyperedges are listed
    in lexicographic order of their vertex indices.
    """
    components = [c if isinstance(c, ExactScalar) else ExactScalar(ring, c) for c in components]
    if any(c.ring != ring for c in components):
        raise RingMismatch(f"components must lie in {ring}")
    if not any(c.is_zero() for c in components) or all(c.is_zero() for c in components):
        raise ValueError("components must include 0 and a nonzero value")
    vecs = _enumerate_projective(n, components)
    zero = _gram_zero(vecs, ring)
    np.fill_diagonal(zero, False)
    cliques = n_cliques(_bitsets(zero), n, budget)
    used = sorted({v for c in cliques for v in c})
    rank = {v: i for i, v in enumerate(used)}
    names = [label_at(i) for i in range(len(used))]
    edges = [tuple(names[rank[v]] for v in c) for c in cliques]
    h = Mmph(n, tuple(edges))
    coords = Coordinatization(ring, n, {names[rank[v]]: vecs[v] for v in used})
    return h, coords


def master_components(h: Mmph, nonbinary_only: bool = False) -> list[Mmph]:
    """Connected parts of a generated hypergraph, largest first.

    With ``nonbinary_only`` the parts admitting a 0/1 assignment are left
    out; those carry no contextuality and are not masters.
    """
    parts = sorted(connected_components(h), key=lambda p: (-p.k, -p.l))
    if nonbinary_only:
        parts = [p for p in parts if not is_binary(p)]
    return parts
