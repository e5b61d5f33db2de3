"""Command-line entry point.

Exit codes: 0 ok, 1 verification failed, 2 input error, 3 instance too large
for exhaustive search, 4 a produced colouring failed its own check.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from . import generators
from .baker import RSequence, make_strategy, ptas_solve, STRATEGIES
from .colouring import (
    Instance,
    composable_violation,
    first_violation,
    matching_colouring,
    relabel_zero_free,
    spread_nonzero,
    spread_total,
)
from .exact import InstanceTooLarge, SolveLimits, bounds, exact_composable_spread
from .formats import FormatError, GraphDoc, format_colouring, format_graph, parse_colouring, parse_graph
from .reductions import CnfError, lemma4_reduce, parse_cnf, pendant_transform

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_TOO_LARGE, EXIT_INTERNAL = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


class InvariantBreach(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    q: int = 2
    p: int = 2
    r_seq: Optional[Tuple[int, ...]] = None
    strategy: str = "planar-bfs"
    apex: Tuple[int, ...] = ()
    limits: SolveLimits = field(default_factory=SolveLimits)
    depth_budget: int = 16
    seed: int = 0
    json: bool = False
    timing: bool = False
    workers: int = 0


@dataclass
class ResultReport:
    spread_nonzero: int
    spread_total: int
    colouring: Dict[Tuple[int, int], int]
    lower_bound: Optional[int]
    upper_bound: Optional[int]
    certified_ratio: Optional[Fraction]
    aposteriori_ratio: Optional[Fraction]
    optimal: bool
    rounds_used: int
    elapsed_ms: Optional[float] = None

    def to_json(self) -> str:
        doc = {
            "spread_nonzero": self.spread_nonzero,
            "spread_total": self.spread_total,
            "colouring": [[u, v, c] for (u, v), c in sorted(self.colouring.items())],
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "certified_ratio": _num(self.certified_ratio),
            "aposteriori_ratio": _num(self.aposteriori_ratio),
            "optimal": self.optimal,
            "rounds_used": self.rounds_used,
            "elapsed_ms": self.elapsed_ms,
        }
        return json.dumps(doc)

    def to_text(self) -> str:
        lines = [
            f"non-zero colours: {self.spread_nonzero}",
            f"distinct colours: {self.spread_total}",
            f"bounds: [{self.lower_bound}, {self.upper_bound}]",
            f"optimal: {'yes' if self.optimal else 'no'}",
        ]
        if self.certified_ratio is not None:
            lines.append(f"certified ratio: {float(self.certified_ratio):.6f}")
        if self.aposteriori_ratio is not None:
            lines.append(f"a-posteriori ratio (value/upper): {float(self.aposteriori_ratio):.6f}")
        if self.rounds_used:
            lines.append(f"rounds used: {self.rounds_used}")
        if self.elapsed_ms is not None:
            lines.append(f"elapsed: {self.elapsed_ms:.1f} ms")
        lines.append("colouring:")
        lines.append(format_colouring(self.colouring).rstrip("\n"))
        return "\n".join(lines)


def _num(x):
    return None if x is None else float(x)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _int_list(text: Optional[str]) -> Tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def load_instance(path: str, q: int, s_file: Optional[str] = None) -> Tuple[GraphDoc, Instance]:
    doc = parse_graph(_read(path))
    s_set = set(doc.s_set)
    if s_file:
        toks = [t for line in _read(s_file).splitlines() if not line.startswith("c") for t in line.split()]
        s_set.update(_int_list(" ".join(t for t in toks if t != "s")))
    try:
        return doc, Instance(doc.graph, frozenset(s_set), q)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _presented(inst: Instance, f):
    # the plain problem never shows the reserved colour
    return relabel_zero_free(f) if not inst.s_set else dict(f)


def _check(inst: Instance, f) -> None:
    bad = composable_violation(inst, f)
    if bad is not None:
        v, pal = bad
        raise InvariantBreach(f"produced colouring violates the budget at vertex {v}: {sorted(pal)}")


def _bounds_or_none(inst: Instance):
    if inst.q < 2:
        return None, None
    lo, hi, _ = bounds(inst)
    return lo, hi


def cmd_exact(path: str, cfg: RunConfig, s_file: Optional[str] = None) -> ResultReport:
    _, inst = load_instance(path, cfg.q, s_file)
    res = exact_composable_spread(inst, cfg.limits)
    _check(inst, res.witness)
    lo, hi = _bounds_or_none(inst)
    return ResultReport(
        spread_nonzero=res.value,
        spread_total=spread_total(res.witness),
        colouring=_presented(inst, res.witness),
        lower_bound=lo,
        upper_bound=hi,
        certified_ratio=Fraction(1) if res.optimal else None,
        aposteriori_ratio=Fraction(res.value, hi) if hi else None,
        optimal=res.optimal,
        rounds_used=0,
    )


def _matching_report(inst: Instance) -> ResultReport:
    if inst.q < 2:
        raise InputError("matching bounds need q >= 2")
    lo, hi, m = bounds(inst)
    f = matching_colouring(inst.graph, m)
    _check(inst, f)
    return ResultReport(
        spread_nonzero=spread_nonzero(f),
        spread_total=spread_total(f),
        colouring=_presented(inst, f),
        lower_bound=lo,
        upper_bound=hi,
        certified_ratio=None,
        aposteriori_ratio=Fraction(lo, hi) if hi else None,
        optimal=lo == hi,
        rounds_used=0,
    )


def cmd_bounds(path: str, cfg: RunConfig, s_file: Optional[str] = None) -> ResultReport:
    _, inst = load_instance(path, cfg.q, s_file)
    return _matching_report(inst)


def cmd_greedy(path: str, cfg: RunConfig, s_file: Optional[str] = None) -> ResultReport:
    _, inst = load_instance(path, cfg.q, s_file)
    return _matching_report(inst)


def cmd_ptas(path: str, cfg: RunConfig, s_file: Optional[str] = None) -> ResultReport:
    doc, inst = load_instance(path, cfg.q, s_file)
    if inst.q < 2:
        raise InputError("ptas needs q >= 2")
    if cfg.p < 2:
        raise InputError("ptas needs p >= 2")
    rs = RSequence(p=cfg.p, q=cfg.q, values=cfg.r_seq) if cfg.r_seq else RSequence(p=cfg.p, q=cfg.q)
    apex = set(cfg.apex) | set(doc.apex)
    unknown = apex - inst.graph.vertex_set
    if unknown:
        raise InputError(f"apex vertices {sorted(unknown)} are not in the graph")
    strategy = make_strategy(cfg.strategy, apex)
    rep = ptas_solve(inst, rs, strategy, cfg.depth_budget, cfg.limits, workers=cfg.workers)
    _check(inst, rep.witness)
    lo, hi = _bounds_or_none(inst)
    return ResultReport(
        spread_nonzero=rep.value,
        spread_total=spread_total(rep.witness),
        colouring=_presented(inst, rep.witness),
        lower_bound=lo,
        upper_bound=hi,
        certified_ratio=rep.certified_ratio,
        aposteriori_ratio=rep.aposteriori_ratio,
        optimal=rep.certified_ratio == 1,
        rounds_used=rep.rounds_used,
    )


@dataclass
class VerifyResult:
    ok: bool
    vertex: Optional[int] = None
    palette: Optional[List[int]] = None

    def to_json(self) -> str:
        return json.dumps({"pass": self.ok, "vertex": self.vertex, "palette": self.palette})

    def to_text(self) -> str:
        if self.ok:
            return "PASS"
        return f"FAIL at vertex {self.vertex}: palette {self.palette}"


def cmd_verify(graph_path: str, colouring_path: str, mode: str, q: int = 2, s_file: Optional[str] = None) -> VerifyResult:
    doc, inst = load_instance(graph_path, q, s_file)
    f = parse_colouring(_read(colouring_path), doc.graph)
    g = doc.graph
    if mode == "q":
        bad = first_violation(g, f, {v: q for v in g.vertices})
    elif mode == "composable":
        bad = composable_violation(inst, f)
    elif mode == "g":
        if doc.budgets is None:
            raise InputError("mode g needs 'g <v> <budget>' lines in the graph file")
        bad = first_violation(g, f, doc.budgets)
    else:
        raise InputError(f"unknown verify mode {mode!r}")
    if bad is None:
        return VerifyResult(True)
    return VerifyResult(False, bad[0], sorted(bad[1]))


PLANARITY_NOTE = "note: planarity of the formula's incidence graph is not checked"


def cmd_reduce(cnf_path: str, q: Optional[int] = None, out: Optional[str] = None) -> Dict[str, str]:
    """Return the emitted documents keyed by file name (or ``'-'`` for stdout)."""
    phi = parse_cnf(_read(cnf_path))
    art = lemma4_reduce(phi)
    base = format_graph(
        art.graph,
        budgets=art.budgets,
        comments=[f"edge {{1,2}}-colouring instance from {phi.num_vars} variables, {phi.num_clauses} clauses", PLANARITY_NOTE]
        + art.comments(),
    )
    if q is None:
        return {(out + ".g.txt") if out else "-": base}
    if q < 2:
        raise InputError("--q must be at least 2")
    if not out:
        raise InputError("--q needs --out PREFIX to hold both instances")
    lifted, threshold = pendant_transform(art.graph, art.budgets, q, art.threshold)
    r = sum(1 for b in art.budgets.values() if b == 1)
    lifted_doc = format_graph(
        lifted,
        comments=[
            f"edge {q}-colouring instance lifted by pendant vertices",
            f"q {q}",
            f"threshold {threshold}",
            f"from t {art.threshold}, r {r}, n {len(art.graph.vertices)}",
            PLANARITY_NOTE,
        ],
    )
    return {out + ".g.txt": base, f"{out}.q{q}.txt": lifted_doc}


def cmd_gen(family: str, sizes: Sequence[int], seed: int = 0, keep: float = 0.7, apexes: int = 1, density: float = 0.5) -> str:
    def need(k):
        if len(sizes) != k:
            raise InputError(f"family {family!r} takes {k} size parameter(s), got {len(sizes)}")

    try:
        if family == "grid":
            need(2)
            return format_graph(generators.grid(*sizes), comments=[f"grid {sizes[0]}x{sizes[1]}"])
        if family in ("path", "cycle", "star", "complete"):
            need(1)
            g = getattr(generators, family)(sizes[0])
            return format_graph(g, comments=[f"{family} {sizes[0]}"])
        if family == "random-planar-sub":
            need(2)
            g = generators.random_planar_sub(sizes[0], sizes[1], keep, seed)
            return format_graph(g, comments=[f"random subgraph of grid {sizes[0]}x{sizes[1]}, keep {keep}, seed {seed}"])
        if family == "apex":
            need(2)
            g, apex = generators.apex_grid(sizes[0], sizes[1], apexes, density, seed)
            return format_graph(
                g, comments=[f"grid {sizes[0]}x{sizes[1]} plus {apexes} apex vertices, density {density}, seed {seed}"], apex=apex
            )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    raise InputError(f"unknown family {family!r}")


FAMILIES = ["grid", "path", "cycle", "star", "complete", "random-planar-sub", "apex"]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="maxedgecol", description="Maximum edge q-colouring tools.")
    sub = ap.add_subparsers(dest="command", required=True)

    def solver(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("graph")
        sp.add_argument("--q", type=int, default=2)
        sp.add_argument("--s-file")
        sp.add_argument("--max-edges", type=int, default=SolveLimits().max_edges_exhaustive)
        sp.add_argument("--json", action="store_true", help="structured single-object output")
        sp.add_argument("--timing", action="store_true", help="include elapsed_ms (breaks byte-identical output)")
        sp.add_argument("--seed", type=int, default=0)
        return sp

    solver("exact", "exhaustive optimum")
    solver("bounds", "maximal-matching bounds")
    solver("greedy", "matching colouring with its a-posteriori ratio")
    pt = solver("ptas", "Baker-game approximation scheme")
    pt.add_argument("--p", type=int, default=2)
    pt.add_argument("--r-seq", help="comma-separated r_1,r_2,...; the last value repeats")
    pt.add_argument("--strategy", default="planar-bfs", choices=sorted(STRATEGIES))
    pt.add_argument("--apex", help="comma-separated apex vertex ids")
    pt.add_argument("--depth-budget", type=int, default=16)
    pt.add_argument("--workers", type=int, default=0, help="processes for the root branches")

    vf = sub.add_parser("verify", help="check a colouring file")
    vf.add_argument("graph")
    vf.add_argument("colouring")
    vf.add_argument("--mode", choices=["q", "composable", "g"], default="q")
    vf.add_argument("--q", type=int, default=2)
    vf.add_argument("--s-file")
    vf.add_argument("--json", action="store_true")

    rd = sub.add_parser("reduce", help="SAT formula to colouring instances")
    rd.add_argument("cnf")
    rd.add_argument("--q", type=int)
    rd.add_argument("--out", help="file prefix; required with --q")

    gn = sub.add_parser("gen", help="generate an instance")
    gn.add_argument("family", choices=FAMILIES)
    gn.add_argument("sizes", type=int, nargs="+")
    gn.add_argument("--seed", type=int, default=0)
    gn.add_argument("--keep", type=float, default=0.7, help="edge keep probability (random-planar-sub)")
    gn.add_argument("--apexes", type=int, default=1, help="apex count (apex family)")
    gn.add_argument("--density", type=float, default=0.5, help="apex attachment probability")
    gn.add_argument("--out")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command)
    cfg.q = getattr(ns, "q", 2)
    cfg.json = getattr(ns, "json", False)
    cfg.timing = getattr(ns, "timing", False)
    cfg.seed = getattr(ns, "seed", 0)
    if hasattr(ns, "max_edges"):
        if ns.max_edges < 0:
            raise InputError("--max-edges must be non-negative")
        cfg.limits = SolveLimits(max_edges_exhaustive=ns.max_edges)
    if ns.command == "ptas":
        cfg.p = ns.p
        cfg.r_seq = _int_list(ns.r_seq) or None
        cfg.strategy = ns.strategy
        cfg.apex = _int_list(ns.apex)
        cfg.depth_budget = ns.depth_budget
        cfg.workers = ns.workers
        if cfg.r_seq and any(r < 2 for r in cfg.r_seq):
            raise InputError("every r_i must be at least 2")
        if cfg.depth_budget < 1:
            raise InputError("--depth-budget must be at least 1")
    if cfg.q < 1:
        raise InputError("--q must be at least 1")
    return cfg


SOLVERS = {"exact": cmd_exact, "bounds": cmd_bounds, "greedy": cmd_greedy, "ptas": cmd_ptas}


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if ns.command in SOLVERS:
            cfg = config_from_args(ns)
            t0 = time.perf_counter()
            rep = SOLVERS[ns.command](ns.graph, cfg, ns.s_file)
            if cfg.timing:
                rep.elapsed_ms = round((time.perf_counter() - t0) * 1000.0, 3)
            print(rep.to_json() if cfg.json else rep.to_text(), file=stdout)
            return EXIT_OK
        if ns.command == "verify":
            res = cmd_verify(ns.graph, ns.colouring, ns.mode, ns.q, ns.s_file)
            print(res.to_json() if ns.json else res.to_text(), file=stdout)
            return EXIT_OK if res.ok else EXIT_FAIL
        if ns.command == "reduce":
            docs = cmd_reduce(ns.cnf, ns.q, ns.out)
            for name, text in docs.items():
                if name == "-":
                    stdout.write(text)
                else:
                    Path(name).write_text(text)
                    print(f"wrote {name}", file=stdout)
            return EXIT_OK
        if ns.command == "gen":
            text = cmd_gen(ns.family, ns.sizes, ns.seed, ns.keep, ns.apexes, ns.density)
            if ns.out:
                Path(ns.out).write_text(text)
            else:
                stdout.write(text)
            return EXIT_OK
    except (InputError, FormatError, CnfError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except InstanceTooLarge as exc:
        print(f"error: {exc}; try 'ptas' or 'greedy', or raise --max-edges", file=stderr)
        return EXIT_TOO_LARGE
    except InvariantBreach as exc:
        print(f"internal error: {exc}", file=stderr)
        return EXIT_INTERNAL
    return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
