"""``mmph`` command line.

Every subcommand reads newline-delimited hypergraph strings (a path or ``-``
for stdin) and is a thin wrapper over one library call.  Exit status: 0 on
success, 1 when ``--assert`` is given and some answer is negative, 2 on
usage, input or I/O errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Sequence, TextIO

from . import core, solver
from .coordinatize import (
    BudgetExceeded,
    MissingVector,
    complete_hyperedge,
    master_components,
    vecfind_master,
    verify_coordinatization,
)
from .exact import RINGS, RingMismatch, ScalarSyntaxError, format_scalar, format_vector, parse_scalar
from .generate import Filters, GenerationConfig, collect_distribution, generate
from .lang import (
    Mmph,
    MmphSyntaxError,
    parse_coordinatization,
    parse_mmph_lines,
    serialize_coordinatization,
    serialize_mmph,
    validate,
)


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load(args: argparse.Namespace) -> list[Mmph]:
    hs = parse_mmph_lines(_read(args.input), args.dim)
    if not hs:
        raise UsageError(f"{args.input}: no hypergraphs")
    return hs


def _load_one(args: argparse.Namespace) -> Mmph:
    hs = _load(args)
    if len(hs) != 1:
        raise UsageError(f"{args.input}: expected one hypergraph, found {len(hs)}")
    return hs[0]


def _labels(text: str) -> list[str]:
    return [t for t in text.split(",") if t]


# -- subcommands: each writes to ``out`` and returns True for a positive answer


def cmd_parse(args, out: TextIO) -> bool:
    for h in _load(args):
        out.write(serialize_mmph(h) + "\n")
    return True


def cmd_validate(args, out: TextIO) -> bool:
    ok = True
    for h in _load(args):
        report = validate(h, args.mode)
        passed = report.strict_pass if args.mode == "strict" else report.lenient_pass
        ok &= passed
        out.write(("valid" if passed else "invalid") + "\n")
        for v in report.violations:
            edges = ",".join(map(str, v.edges))
            out.write(f"  {v.rule} [{edges}] {v.message}\n")
    return ok


def cmd_info(args, out: TextIO) -> bool:
    for h in _load(args):
        out.write(f"k={h.k} l={h.l} n={h.dimension}\n")
        if args.multiplicities:
            out.write(" ".join(f"{m.vertex}:{m.m}" for m in core.multiplicities(h)) + "\n")
    return True


def cmd_solve(args, out: TextIO) -> bool:
    ok = True
    for i, h in enumerate(_load(args)):
        if i:
            out.write("\n")
        a = solver.find_assignment(h)
        if a is None:
            ok = False
            out.write("non-binary\n")
        else:
            out.write(solver.format_assignment(a))
    return ok


def cmd_classify(args, out: TextIO) -> bool:
    ok = True
    for h in _load(args):
        kind = solver.classify(h).kind
        ok &= args.expect is None or kind == args.expect
        out.write(kind + "\n")
    return ok


def cmd_critical(args, out: TextIO) -> bool:
    ok = True
    for h in _load(args):
        c = solver.is_critical(h)
        ok &= c
        out.write(("critical" if c else "not critical") + "\n")
    return ok


def cmd_criticalize(args, out: TextIO) -> bool:
    for h in _load(args):
        out.write(serialize_mmph(solver.criticalize(h, args.seed)) + "\n")
    return True


def cmd_strip(args, out: TextIO) -> bool:
    if (args.edges is None) == (args.count is None):
        raise UsageError("give exactly one of --edges and --count")
    if args.count is not None and args.seed is None:
        raise UsageError("--count needs --seed")
    for h in _load(args):
        if args.count is not None:
            r = core.strip_edges(h, args.count, args.seed)
        else:
            r = core.strip_edges(h, [int(t) for t in args.edges.split(",") if t])
        out.write(serialize_mmph(r) + "\n")
    return True


def cmd_fill(args, out: TextIO) -> bool:
    for h in _load(args):
        out.write(serialize_mmph(core.fill(h, args.n)) + "\n")
    return True


def cmd_drop_m1(args, out: TextIO) -> bool:
    for h in _load(args):
        out.write(serialize_mmph(core.drop_m1_vertices(h, args.fixpoint)) + "\n")
    return True


def cmd_delete_vertices(args, out: TextIO) -> bool:
    victims = _labels(args.vertices)
    for h in _load(args):
        out.write(serialize_mmph(core.delete_vertices(h, victims)) + "\n")
    return True


def cmd_parity(args, out: TextIO) -> bool:
    ok = True
    for h in _load(args):
        proof = solver.has_parity_proof(h)
        ok &= proof
        line = "parity proof" if proof else "no parity proof"
        if args.certificate:
            cert = solver.parity_certificate(h)
            line += " certificate=" + ("none" if cert is None else ",".join(map(str, cert)))
        out.write(line + "\n")
    return ok


def cmd_loops(args, out: TextIO) -> bool:
    for h in _load(args):
        r = core.max_loop_order(h, args.budget)
        witness = ",".join(map(str, r.witness)) if r.witness else "-"
        out.write(f"max_order={r.max_order} witness={witness} complete={str(r.complete).lower()}\n")
    return True


def cmd_components(args, out: TextIO) -> bool:
    for h in _load(args):
        for part in master_components(h, args.nonbinary_only):
            out.write(serialize_mmph(part) + "\n")
    return True


def _components(text: str, ring: str) -> list:
    try:
        return [parse_scalar(t, ring) for t in text.split(",")]
    except ScalarSyntaxError as exc:
        raise UsageError(str(exc)) from None


def cmd_vecfind(args, out: TextIO) -> bool:
    h, c = vecfind_master(args.n, _components(args.components, args.ring), args.ring, args.budget)
    out.write(serialize_mmph(h) + "\n")
    if args.vec:
        Path(args.vec).write_text(serialize_coordinatization(c, h.vertices))
    return True


def _load_vec(path: str, ring: str):
    return parse_coordinatization(_read(path), ring)


def cmd_verify_coord(args, out: TextIO) -> bool:
    c = _load_vec(args.vec, args.ring)
    ok = True
    for h in _load(args):
        report = verify_coordinatization(h, c)
        ok &= report.passed
        out.write(("orthogonal" if report.passed else "failed") + "\n")
        for j, (a, b), p in report.failures:
            out.write(f"  edge {j} {''.join(h.hyperedges[j])}: <{a},{b}> = {format_scalar(p)}\n")
        for j, (a, b) in report.parallel_pairs:
            out.write(f"  edge {j} {''.join(h.hyperedges[j])}: {a} parallel to {b}\n")
    return ok


def cmd_complete(args, out: TextIO) -> bool:
    c = _load_vec(args.vec, args.ring)
    labels = _labels(args.labels) if args.labels else list(c.vectors)
    missing = [v for v in labels if v not in c]
    if missing:
        raise UsageError(f"no vectors for {missing}")
    for v in complete_hyperedge([c[v] for v in labels], c.dimension):
        out.write(format_vector(v) + "\n")
    return True


def cmd_generate(args, out: TextIO) -> bool:
    master = _load_one(args)
    pool = None
    if args.pool:
        pools = parse_mmph_lines(_read(args.pool), master.dimension)
        if len(pools) != 1:
            raise UsageError(f"{args.pool}: expected one hypergraph")
        pool = pools[0]
    cfg = GenerationConfig(
        method=args.method,
        seed=args.seed,
        master=master,
        runs=args.runs,
        filters=Filters(not args.allow_ks, args.full_edge),
        max_strip=args.max_strip,
        addition_pool=pool,
        max_add=args.max_add,
        delete_step=args.delete_step,
        m3_stop=args.m3_stop,
    )
    result = generate(cfg, args.workers)
    for h in result.outputs:
        out.write(serialize_mmph(h) + "\n")
    summary = " ".join(f"{k}={v}" for k, v in sorted(result.summary.items()))
    if args.log:
        Path(args.log).write_text(summary + "\n")
    else:
        print(summary, file=sys.stderr)
    if args.csv:
        Path(args.csv).write_text(collect_distribution(result.outputs).to_csv())
    return bool(result.outputs)


def cmd_stats(args, out: TextIO) -> bool:
    text = _read(args.input)
    out.write(collect_distribution(parse_mmph_lines(text, args.dim)).to_csv())
    return True


# -- parser ------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mmph", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, fn: Callable, help: str, *, source: bool = True, check: bool = False):
        sp = sub.add_parser(name, help=help, description=help)
        if source:
            sp.add_argument("input", help="file of newline-delimited hypergraph strings, or -")
            sp.add_argument("--dim", type=int, help="dimension n (default: largest hyperedge)")
        sp.add_argument("-o", "--output", help="write results here instead of stdout")
        if check:
            sp.add_argument("--assert", dest="assert_", action="store_true",
                            help="exit 1 unless every answer is positive")
        sp.set_defaults(func=fn)
        return sp

    add("parse", cmd_parse, "parse and re-serialize")
    sp = add("validate", cmd_validate, "check structural rules", check=True)
    sp.add_argument("--mode", choices=("strict", "lenient"), default="lenient")
    sp = add("info", cmd_info, "print k, l and n")
    sp.add_argument("--multiplicities", action="store_true", help="also list vertex multiplicities")
    add("solve", cmd_solve, "print a 0/1 assignment or 'non-binary'", check=True)
    sp = add("classify", cmd_classify, "BMMPH, KS-NBMMPH or nonKS-NBMMPH", check=True)
    sp.add_argument("--expect", choices=(solver.BMMPH, solver.KS, solver.NON_KS),
                    help="with --assert, the kind every input must have")
    add("critical", cmd_critical, "check criticality", check=True)
    sp = add("criticalize", cmd_criticalize, "reduce to a critical sub-hypergraph")
    sp.add_argument("--seed", type=int, required=True)
    sp = add("strip", cmd_strip, "remove hyperedges")
    sp.add_argument("--edges", help="comma-separated hyperedge indices")
    sp.add_argument("--count", type=int, help="number of random hyperedges")
    sp.add_argument("--seed", type=int)
    sp = add("fill", cmd_fill, "pad hyperedges with fresh vertices")
    sp.add_argument("--n", type=int, help="target size (default: the dimension)")
    sp = add("drop-m1", cmd_drop_m1, "remove vertices of multiplicity 1")
    sp.add_argument("--fixpoint", action="store_true", help="repeat until none is left")
    sp = add("delete-vertices", cmd_delete_vertices, "remove vertices everywhere")
    sp.add_argument("--vertices", required=True, help="comma-separated labels")
    sp = add("parity", cmd_parity, "check for a parity proof", check=True)
    sp.add_argument("--certificate", action="store_true",
                    help="also print an odd even-cover hyperedge subset, if any")
    sp = add("loops", cmd_loops, "largest loop order")
    sp.add_argument("--budget", type=int, default=2_000_000)
    sp = add("components", cmd_components, "connected components, largest first")
    sp.add_argument("--nonbinary-only", action="store_true")

    sp = add("vecfind", cmd_vecfind, "master from a vector-component alphabet", source=False)
    sp.add_argument("--n", type=int, required=True, help="dimension")
    sp.add_argument("--components", required=True, help="comma-separated scalars, e.g. 0,1,-1")
    sp.add_argument("--ring", choices=RINGS, default="rational")
    sp.add_argument("--vec", help="write the coordinatization to this file")
    sp.add_argument("--budget", type=int, help="clique-search step limit")

    sp = add("verify-coord", cmd_verify_coord, "check hyperedge orthogonality", check=True)
    sp.add_argument("--vec", required=True)
    sp.add_argument("--ring", choices=RINGS, default="rational")
    sp = add("complete", cmd_complete, "vectors completing an orthogonal set", source=False)
    sp.add_argument("--vec", required=True)
    sp.add_argument("--ring", choices=RINGS, default="rational")
    sp.add_argument("--labels", help="comma-separated labels (default: all)")

    sp = add("generate", cmd_generate, "run M1, M2 or M3 from a master")
    sp.add_argument("--method", choices=("M1", "M2", "M3"), required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--runs", type=int, default=100)
    sp.add_argument("--pool", help="hyperedge pool for M2")
    sp.add_argument("--max-strip", type=int)
    sp.add_argument("--max-add", type=int)
    sp.add_argument("--delete-step", type=int, default=1)
    sp.add_argument("--m3-stop", choices=("first", "noncritical", "chain"), default="first")
    sp.add_argument("--allow-ks", action="store_true", help="do not require non-KS outputs")
    sp.add_argument("--full-edge", choices=("strict", "relaxed", "off"), default="off")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--csv", help="write the (k,l) distribution here")
    sp.add_argument("--log", help="write run outcome counters here instead of stderr")
    add("stats", cmd_stats, "(k,l) distribution as CSV")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    out: TextIO = sys.stdout
    try:
        if args.output:
            out = open(args.output, "w")
        positive = args.func(args, out)
    except (UsageError, MmphSyntaxError, RingMismatch, MissingVector, BudgetExceeded,
            OSError, ValueError, KeyError, IndexError) as exc:
        print(f"mmph {args.command}: {exc}", file=sys.stderr)
        return 2
    finally:
        if out is not sys.stdout:
            out.close()
    if getattr(args, "assert_", False) and not positive:
        return 1
    return 0
