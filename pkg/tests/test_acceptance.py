"""Acceptance checks, one test per criterion.

Each test prints a ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line (visible in pytest output) and fails when the criterion is not met.
Run ``python tests/test_acceptance.py`` to get just the ten lines.
"""
from __future__ import annotations

import os
import random
import re
import sys
import time
from functools import cache
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

from corpus import by_role, catalog, entry, generated, mmph
from mmph.core import keep_edges, strip_edges
from mmph.coordinatize import MissingVector, master_components, verify_coordinatization
from mmph.exact import format_scalar
from mmph.generate import GenerationConfig, collect_distribution, generate
from mmph.lang import Mmph, label_at, serialize_mmph
from mmph.solver import (
    KS,
    NON_KS,
    classify,
    enumerate_assignments,
    find_assignment,
    has_parity_proof,
    is_binary,
    is_critical,
)

WORKERS = min(8, os.cpu_count() or 1)

# smallest criticals listed per dimension, both 4-dim 16-9s included
LISTED_CRITICALS = [
    "3d-8-7", "4d-4-3", "4d-16-9", "4d-16-9-phi", "5d-7-5", "6d-11-7", "7d-14-8",
    "8d-15-9", "9d-13-6", "9d-19-8", "10d-18-9", "11d-19-8", "12d-19-9", "13d-19-8",
    "14d-19-9", "15d-25-8", "16d-22-9",
]
NON_BINARY_FIXTURES = LISTED_CRITICALS + ["5d-16-9", "5d-10-9"]
MASTERS = [
    "4d-24-24", "7d-34-14", "9d-47-16", "10d-50-15", "11d-50-14", "12d-52-9",
    "13d-63-16", "14d-66-15", "15d-66-14", "16d-70-9",
]
KS_EXPECTED = ["4d-24-24", "4d-60-72", "8d-36-9", "9d-47-16", "10d-50-15", "11d-50-14",
               "12d-52-9", "13d-63-16", "14d-66-15", "15d-66-14"]
PARITY_EXPECTED = ["4d-16-9-phi", "8d-36-9", "8d-15-9", "3d-8-7"]


def report(n: int, ok: bool, detail: str) -> str:
    return f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"


@pytest.fixture
def emit(capsys):
    def _emit(n: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print("\n" + report(n, ok, detail))
        assert ok, detail

    return _emit


def criterion_1():
    t = time.perf_counter()
    bad = []
    for e in catalog().values():
        text = (Path(__file__).parent / "fixtures" / "corpus" / f"{e.id}.mmp").read_text()
        h = e.mmph
        if (h.k, h.l) != (e.k, e.l) or serialize_mmph(h) != re.sub(r"\s", "", text):
            bad.append(e.id)
    dt = time.perf_counter() - t
    ok = not bad and dt < 1
    return ok, f"{len(catalog()) - len(bad)}/{len(catalog())} strings round-trip in {dt:.2f}s" + (
        f"; mismatches {bad}" if bad else ""
    )


def criterion_2():
    slow, wrong = [], []
    worst = 0.0
    cases = [(eid, False) for eid in NON_BINARY_FIXTURES] + [("4d-8-3", True)]
    for eid, binary in cases:
        t = time.perf_counter()
        got = find_assignment(mmph(eid)) is not None
        dt = time.perf_counter() - t
        worst = max(worst, dt)
        if got != binary:
            wrong.append(eid)
        if dt >= 1:
            slow.append(eid)
    filled = mmph("3d-13-7")
    for i in range(filled.l):
        rest = keep_edges(filled, (j for j in range(filled.l) if j != i))
        if not is_binary(rest):
            wrong.append(f"13-7 minus edge {i}")
    ok = not wrong and not slow
    return ok, (
        f"{len(NON_BINARY_FIXTURES)} fixtures non-binary, 8-3 and 7 remainders of 13-7 binary; "
        f"slowest {worst:.3f}s" + (f"; wrong {wrong}" if wrong else "") + (f"; slow {slow}" if slow else "")
    )


def criterion_3():
    t = time.perf_counter()
    not_critical = [eid for eid in LISTED_CRITICALS if not is_critical(mmph(eid))]
    critical_masters = [eid for eid in MASTERS if is_critical(mmph(eid))]
    dt = time.perf_counter() - t
    ok = not not_critical and not critical_masters and dt < 300
    detail = (
        f"{len(LISTED_CRITICALS) - len(not_critical)}/{len(LISTED_CRITICALS)} listed criticals critical; "
        f"{len(MASTERS) - len(critical_masters)}/{len(MASTERS)} masters non-critical; {dt:.1f}s"
    )
    if not_critical:
        detail += f"; not critical: {not_critical}"
    if critical_masters:
        names = ", ".join(entry(e).name for e in critical_masters)
        detail += f"; masters that are critical KS sets: {names}"
    return ok, detail


def criterion_4():
    t = time.perf_counter()
    wrong = []
    for eid in KS_EXPECTED:
        kind = classify(mmph(eid)).kind
        if kind != KS:
            wrong.append(f"{entry(eid).name} is {kind}")
    for eid in LISTED_CRITICALS:
        kind = classify(mmph(eid)).kind
        if kind != NON_KS:
            wrong.append(f"{entry(eid).name} is {kind}")
    dt = time.perf_counter() - t
    ok = not wrong and dt < 60
    return ok, (
        f"{len(KS_EXPECTED) + len(LISTED_CRITICALS) - len(wrong)}/"
        f"{len(KS_EXPECTED) + len(LISTED_CRITICALS)} classified as expected in {dt:.1f}s"
        + (f"; {'; '.join(wrong)}" if wrong else "")
    )


def random_hypergraph(rng: random.Random, max_k: int, max_l: int) -> Mmph:
    k = rng.randint(2, max_k)
    labels = [label_at(i) for i in range(k)]
    edges: dict[frozenset[str], tuple[str, ...]] = {}
    for _ in range(rng.randint(1, max_l)):
        e = tuple(rng.sample(labels, rng.randint(1, min(4, k))))
        edges.setdefault(frozenset(e), e)
    return Mmph.from_edges(edges.values())


def random_parity_hypergraph(rng: random.Random) -> Mmph | None:
    """Odd number of hyperedges, every vertex in an even number of them."""
    l = rng.choice([3, 5, 7])
    k = rng.randint(3, 10)
    edges = [set() for _ in range(l)]
    for v in range(k):
        for i in rng.sample(range(l), rng.choice([2, 2, 4]) if l > 3 else 2):
            edges[i].add(label_at(v))
    if any(not e for e in edges) or len({frozenset(e) for e in edges}) < l:
        return None
    return Mmph.from_edges(sorted(e) for e in edges)


def criterion_5():
    t = time.perf_counter()
    missing = [eid for eid in PARITY_EXPECTED if not has_parity_proof(mmph(eid))]
    rng = random.Random(20251016)
    tried = with_parity = 0
    counterexamples = []
    while tried < 10_000:
        h = random_parity_hypergraph(rng) if tried % 2 else random_hypergraph(rng, 10, 8)
        if h is None:
            continue
        tried += 1
        if has_parity_proof(h):
            with_parity += 1
            if find_assignment(h) is not None or enumerate_assignments(h) != 0:
                counterexamples.append(serialize_mmph(h))
    dt = time.perf_counter() - t
    ok = not missing and not counterexamples and dt < 60
    return ok, (
        f"parity proofs for {len(PARITY_EXPECTED) - len(missing)}/{len(PARITY_EXPECTED)} named sets; "
        f"{with_parity} of 10000 random hypergraphs have one, none binary; {dt:.1f}s"
        + (f"; missing {missing}" if missing else "")
        + (f"; counterexamples {counterexamples[:3]}" if counterexamples else "")
    )


VECFIND_CASES = [
    (4, "pm1", ["24-24"], 60),
    (4, "golden", ["60-72"], 60),
    (5, "pm1", ["105-136"], 60),
    (6, "pm1", ["236-1216"], 600),
    (6, "omega", ["591-1123", "81-162"], 600),
    (7, "pm1", ["805-9936"], 3600),
]


def criterion_6():
    parts, ok = [], True
    for n, comps, want, bound in VECFIND_CASES:
        t = time.perf_counter()
        h, _ = generated.__wrapped__(n, comps)
        dt = time.perf_counter() - t
        got = list(dict.fromkeys(p.name for p in master_components(h, nonbinary_only=True)))
        good = got == want and dt < bound
        ok &= good
        parts.append(f"dim {n} {comps} -> {'+'.join(got)} ({dt:.1f}s)" + ("" if good else " MISMATCH"))
    return ok, "; ".join(parts)


def _master_for(eid: str) -> str:
    dim = entry(eid).dim
    return next(e.id for e in by_role("master", "supermaster", "filled") if e.dim == dim and e.vectors)


def criterion_7():
    t = time.perf_counter()
    checked = clean = 0
    explained, unexplained = [], []
    for e in catalog().values():
        if e.printed_coordinatization() is not None:
            printed = e.printed_coordinatization()
        elif e.derived_vectors:
            printed = entry(_master_for(e.id)).printed_coordinatization()
        else:
            continue
        checked += 1
        try:
            rep = verify_coordinatization(e.mmph, printed)
            problems = [
                f"edge {j} {''.join(e.mmph.hyperedges[j])} <{a},{b}>={format_scalar(p)}"
                for j, (a, b), p in rep.failures
            ] + [f"edge {j} {a} parallel to {b}" for j, (a, b) in rep.parallel_pairs]
        except MissingVector as exc:
            problems = [str(exc)]
        if not problems:
            clean += 1
            continue
        working = e.coordinatization()
        fixed = working is not None and verify_coordinatization(e.mmph, working).passed
        (explained if e.errata and fixed else unexplained).append((e.id, len(problems), problems[0]))
    dt = time.perf_counter() - t
    ok = not unexplained and dt < 60
    detail = f"{clean}/{checked} printed coordinatizations orthogonal; "
    detail += "; ".join(f"{i}: {n} failure(s), first {p}" for i, n, p in explained)
    detail += f" (all documented, corrected vectors verify); {dt:.1f}s"
    if unexplained:
        detail += f"; UNEXPLAINED {unexplained}"
    return ok, detail


@cache
def m1_harvest():
    master = strip_edges(mmph("4d-24-24"), 14, seed=4)
    return master, generate(GenerationConfig("M1", 1, master, runs=500), WORKERS)


@cache
def m3_harvest():
    cfg = GenerationConfig("M3", 1, mmph("7d-34-14"), runs=500, m3_stop="chain")
    return generate(cfg, WORKERS)


def _pipeline_ok(outputs, master_id):
    coords = entry(master_id).coordinatization()
    return all(
        not is_binary(h)
        and is_critical(h)
        and classify(h).kind == NON_KS
        and verify_coordinatization(h, coords.restrict(h.vertices)).passed
        for h in outputs
    )


def criterion_8():
    t = time.perf_counter()
    master, m1 = m1_harvest()
    m3 = m3_harvest()
    m1_names = {h.name for h in m1.outputs}
    m3_names = {h.name for h in m3.outputs}
    valid1 = _pipeline_ok(m1.outputs, "4d-24-24")
    valid3 = _pipeline_ok(m3.outputs, "7d-34-14")
    dt = time.perf_counter() - t
    ok = (
        bool(m1.outputs) and bool(m3.outputs) and valid1 and valid3
        and "4-3" in m1_names and "14-8" in m3_names and dt < 600
    )
    return ok, (
        f"M1 on {master.name}: {len(m1.outputs)} emitted, 4-3 {'present' if '4-3' in m1_names else 'absent'}; "
        f"M3 on 34-14: {len(m3.outputs)} emitted, 14-8 {'present' if '14-8' in m3_names else 'absent'}; "
        f"all outputs valid: {valid1 and valid3}; {dt:.1f}s"
    )


def criterion_9():
    t = time.perf_counter()
    rng = random.Random(9)
    mismatches = binary = 0
    for _ in range(10_000):
        h = random_hypergraph(rng, 14, 8)
        found = find_assignment(h) is not None
        binary += found
        mismatches += found != (enumerate_assignments(h) > 0)
    dt = time.perf_counter() - t
    ok = mismatches == 0 and dt < 120
    return ok, f"10000 random hypergraphs ({binary} binary), {mismatches} disagreements; {dt:.1f}s"


def criterion_10():
    _, m1 = m1_harvest()
    d = collect_distribution(m1.outputs)
    csv_text = d.to_csv()
    first = csv_text.splitlines()[1] if d.total else ""
    cell = d.min_l_cell()
    ok = cell == (4, 3)
    return ok, f"minimum-l cell of {d.total} harvested criticals is {cell} (CSV row '{first}')"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize(
    "n", [pytest.param(n, marks=pytest.mark.slow) if n in (6, 8) else n for n in range(1, 11)]
)
def test_criterion(n, emit):
    ok, detail = CRITERIA[n - 1]()
    emit(n, ok, detail)


if __name__ == "__main__":
    failed = 0
    for n, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        failed += not ok
        print(report(n, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
