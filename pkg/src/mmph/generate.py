"""Random generation of critical non-KS hypergraphs from masters.

Three methods share one run loop:

* M1 strips random hyperedges from the master, drops vertices of
  multiplicity 1 and criticalizes whatever is still non-binary.
* M2 first adds random hyperedges taken from a pool (normally the master the
  base came from), then continues like M1.
* M3 deletes random vertices until a non-KS non-binary hypergraph appears,
  then criticalizes it.

Every run ``r`` draws from its own ``random.Random(f"{seed}/{r}")``, so runs
can be farmed out to worker processes and merged back in run order without
changing the result.
"""
from __future__ import annotations

import csv
import io
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

from .core import EmptyResult, delete_vertices, drop_m1_vertices, strip_edges
from .lang import Mmph
from .solver import KS, NON_KS, classify, criticalize, filter_full_edge_no_m1, is_binary, is_critical

Method = Literal["M1", "M2", "M3"]
FullEdgeFilter = Literal["strict", "relaxed", "off"]
M3Stop = Literal["first", "noncritical", "chain"]


@dataclass(frozen=True)
class Filters:
    require_nonKS: bool = True
    full_edge_no_m1: FullEdgeFilter = "off"

    def __post_init__(self) -> None:
        if self.full_edge_no_m1 not in ("strict", "relaxed", "off"):
            raise ValueError(f"unknown full-edge filter {self.full_edge_no_m1!r}")

    def accept(self, h: Mmph) -> bool:
        if self.require_nonKS:
            sizes = {len(e) for e in h.hyperedges}
            if classify(h).kind != NON_KS or h.dimension not in sizes:
                return False
        if self.full_edge_no_m1 != "off":
            return filter_full_edge_no_m1(h, self.full_edge_no_m1)
        return True


@dataclass(frozen=True)
class GenerationConfig:
    """Parameters of a batch of generation runs.

    ``max_strip`` caps the number of hyperedges stripped per M1/M2 run (the
    count is uniform in ``[1, max_strip]``; default: all but one).  For M3,
    ``delete_step`` vertices are removed per step (uniform in
    ``[1, delete_step]``) and ``m3_stop`` picks when a run stops deleting:
    ``first`` at the first non-KS non-binary hypergraph, ``noncritical``
    only once that hypergraph is no longer critical.  ``chain`` ignores
    ``delete_step``: it keeps deleting single random vertices, skipping any
    whose removal would make the hypergraph binary, criticalizes whenever
    criticality is lost, and emits the last hypergraph on the way that
    passed the filters.
    """

    method: Method
    seed: int
    master: Mmph
    runs: int = 1
    filters: Filters = field(default_factory=Filters)
    max_strip: int | None = None
    addition_pool: Mmph | None = None
    max_add: int | None = None
    delete_step: int = 1
    m3_stop: M3Stop = "first"

    def __post_init__(self) -> None:
        if self.method not in ("M1", "M2", "M3"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.runs < 1:
            raise ValueError("runs must be at least 1")
        if (self.addition_pool is not None) != (self.method == "M2"):
            raise ValueError("an addition pool is required for M2 and only for M2")
        if self.method == "M2":
            assert self.addition_pool is not None
            if not set(self.addition_pool.vertices) & set(self.master.vertices):
                raise ValueError("the addition pool shares no vertex labels with the base")
        if self.max_strip is not None and self.max_strip < 1:
            raise ValueError("max_strip must be at least 1")
        if self.delete_step < 1:
            raise ValueError("delete_step must be at least 1")
        if self.m3_stop not in ("first", "noncritical", "chain"):
            raise ValueError(f"unknown M3 stop rule {self.m3_stop!r}")


# run outcomes
EMITTED = "emitted"
BINARY = "binary"
FILTERED = "filtered"
EMPTY = "empty"
EXHAUSTED = "exhausted"


@dataclass(frozen=True)
class RunResult:
    run: int
    outcome: str
    output: Mmph | None = None


def _run_seed(seed: int, run: int) -> random.Random:
    return random.Random(f"{seed}/{run}")


def _finish(h: Mmph, rng: random.Random, filters: Filters, run: int) -> RunResult:
    critical = criticalize(h, rng.getrandbits(64))
    if not filters.accept(critical):
        return RunResult(run, FILTERED)
    return RunResult(run, EMITTED, critical)


def _strip_phase(h: Mmph, cfg: GenerationConfig, rng: random.Random, run: int) -> RunResult:
    cap = h.l - 1 if cfg.max_strip is None else min(cfg.max_strip, h.l - 1)
    try:
        if cap >= 1:
            h = strip_edges(h, rng.randint(1, cap), rng.getrandbits(64))
        h = drop_m1_vertices(h)
    except EmptyResult:
        return RunResult(run, EMPTY)
    if is_binary(h):
        return RunResult(run, BINARY)
    return _finish(h, rng, cfg.filters, run)


def _m1(cfg: GenerationConfig, run: int) -> RunResult:
    return _strip_phase(cfg.master, cfg, _run_seed(cfg.seed, run), run)


def _m2(cfg: GenerationConfig, run: int) -> RunResult:
    rng = _run_seed(cfg.seed, run)
    assert cfg.addition_pool is not None
    present = set(cfg.master.edge_sets())
    candidates = [e for e in cfg.addition_pool.hyperedges if frozenset(e) not in present]
    h = cfg.master
    if candidates:
        cap = len(candidates) if cfg.max_add is None else min(cfg.max_add, len(candidates))
        chosen = sorted(rng.sample(range(len(candidates)), rng.randint(1, cap)))
        h = h.with_edges(h.hyperedges + tuple(candidates[i] for i in chosen))
    return _strip_phase(h, cfg, rng, run)


def _m3_chain(cfg: GenerationConfig, rng: random.Random, run: int) -> RunResult:
    h = cfg.master
    if is_binary(h):
        return RunResult(run, BINARY)
    protected: set[str] = set()
    best: Mmph | None = None
    while True:
        candidates = [v for v in h.vertices if v not in protected]
        if not candidates:
            break
        v = rng.choice(candidates)
        try:
            trial = delete_vertices(h, [v])
        except EmptyResult:
            protected.add(v)
            continue
        if is_binary(trial):
            protected.add(v)
            continue
        h = trial if is_critical(trial) else criticalize(trial, rng.getrandbits(64))
        if cfg.filters.accept(h):
            best = h
    if best is None:
        return RunResult(run, FILTERED)
    return RunResult(run, EMITTED, best)


def _m3(cfg: GenerationConfig, run: int) -> RunResult:
    rng = _run_seed(cfg.seed, run)
    if cfg.m3_stop == "chain":
        return _m3_chain(cfg, rng, run)
    h = cfg.master
    while True:
        kind = classify(h).kind
        if kind == NON_KS and (cfg.m3_stop == "first" or not is_critical(h)):
            return _finish(h, rng, cfg.filters, run)
        if kind not in (KS, NON_KS):
            return RunResult(run, BINARY)
        if h.k <= 2:
            return RunResult(run, EXHAUSTED)
        count = min(rng.randint(1, cfg.delete_step), h.k - 1)
        victims = rng.sample(h.vertices, count)
        try:
            h = delete_vertices(h, victims)
        except EmptyResult:
            return RunResult(run, EMPTY)


_METHODS = {"M1": _m1, "M2": _m2, "M3": _m3}


def _run_block(cfg: GenerationConfig, runs: Sequence[int]) -> list[RunResult]:
    fn = _METHODS[cfg.method]
    return [fn(cfg, r) for r in runs]


@dataclass(frozen=True)
class GenerationResult:
    results: tuple[RunResult, ...]

    @property
    def outputs(self) -> list[Mmph]:
        return [r.output for r in self.results if r.output is not None]

    @property
    def summary(self) -> Counter[str]:
        return Counter(r.outcome for r in self.results)


def generate(cfg: GenerationConfig, workers: int = 1) -> GenerationResult:
    """Execute ``cfg.runs`` runs, optionally over several processes.

    The result is identical for any ``workers`` value.
    """
    runs = list(range(cfg.runs))
    if workers <= 1 or cfg.runs == 1:
        return GenerationResult(tuple(_run_block(cfg, runs)))
    blocks = [runs[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_run_block, [cfg] * len(blocks), blocks)
        merged = sorted((r for part in parts for r in part), key=lambda r: r.run)
    return GenerationResult(tuple(merged))


def run_m1(master: Mmph, seed: int, filters: Filters = Filters(), runs: int = 1, **kw) -> list[Mmph]:
    return generate(GenerationConfig("M1", seed, master, runs, filters, **kw)).outputs


def run_m2(
    base: Mmph, pool: Mmph, seed: int, filters: Filters = Filters(), runs: int = 1, **kw
) -> list[Mmph]:
    cfg = GenerationConfig("M2", seed, base, runs, filters, addition_pool=pool, **kw)
    return generate(cfg).outputs


def run_m3(master: Mmph, seed: int, filters: Filters = Filters(), runs: int = 1, **kw) -> list[Mmph]:
    return generate(GenerationConfig("M3", seed, master, runs, filters, **kw)).outputs


# -- distributions -----------------------------------------------------------------


@dataclass(frozen=True)
class Distribution:
    cells: dict[tuple[int, int], int]
    total: int

    def min_l_cell(self) -> tuple[int, int] | None:
        """``(k, l)`` with the fewest hyperedges (then fewest vertices)."""
        if not self.cells:
            return None
        return min(self.cells, key=lambda kl: (kl[1], kl[0]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "l", "count"])
        for (k, l), n in sorted(self.cells.items(), key=lambda item: (item[0][1], item[0][0])):
            w.writerow([k, l, n])
        return buf.getvalue()


def collect_distribution(results: Iterable[Mmph]) -> Distribution:
    cells = Counter((h.k, h.l) for h in results)
    return Distribution(dict(cells), sum(cells.values()))
