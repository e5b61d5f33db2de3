"""Exit criteria. Each ``test_criterion_NN_*`` is one criterion; the terminal
summary (see conftest) prints a PASS/FAIL line per criterion."""

import io
import itertools
import math
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from maxedgecol.baker import default_r_sequence, guarantee_product, ptas_solve
from maxedgecol.cli import run
from maxedgecol.colouring import Instance, composable_violation, is_composable, is_valid_g_colouring, spread_nonzero, spread_total
from maxedgecol.exact import SolveLimits, bounded_solver, bounds, clear_cache, exact_composable_spread, exact_g_spread
from maxedgecol.formats import format_graph
from maxedgecol.generators import complete, cycle, grid, path, random_graph, random_planar_sub, star
from maxedgecol.graph import bfs_layering, delete_vertex, stratify
from maxedgecol.reductions import CnfError, CnfFormula, assignment_to_colouring, brute_sat, lemma4_reduce, pendant_transform

from conftest import random_formula
from oracles import brute_composable

pytestmark = pytest.mark.acceptance

WIDE = SolveLimits(max_edges_exhaustive=80)


def opt(g, s=frozenset(), q=2):
    return exact_composable_spread(Instance(g, frozenset(s), q), WIDE).value


def test_criterion_01_oracle_ground_truth():
    t0 = time.perf_counter()
    assert opt(complete(3)) == 3
    assert opt(star(3)) == 2
    assert opt(star(3), {0}) == 1
    for q in (2, 3):
        for g in [cycle(4), cycle(5), path(2), path(5), path(9)] + ([star(3), complete(4)] if q == 3 else []):
            assert max(g.degree(v) for v in g.vertices) <= q
            assert opt(g, q=q) == len(g.edges)
    k4 = complete(4)
    assert opt(k4) == brute_composable(k4.edges, set(), 2)
    assert time.perf_counter() - t0 < 10.0


def test_criterion_02_matching_sandwich(corpus200):
    assert len(corpus200) == 200
    for inst in corpus200:
        assert len(inst.graph.edges) <= 12
        lower, upper, _ = bounds(inst)
        value = exact_composable_spread(inst).value
        assert lower <= value <= upper, (inst, lower, value, upper)


def test_criterion_03_bounded_solver(corpus200):
    for inst in corpus200:
        best = exact_composable_spread(inst).value
        for s in range(1, 7):
            res = bounded_solver(inst, s)
            assert is_composable(inst, res.witness)
            assert spread_nonzero(res.witness) >= min(best, s)


@pytest.mark.parametrize("r", [13, 20])
def test_criterion_04_stratification(corpus100_q2, r):
    assert len(corpus100_q2) == 100
    for inst in corpus100_q2:
        g, s_set, q = inst.graph, inst.s_set, inst.q
        whole = opt(g, s_set, q)
        lam = bfs_layering(g)
        values = []
        for m in range(r):
            st = stratify(g, lam, r, m)
            values.append(opt(st.residual_graph, s_set | st.boundary, q))
        assert max(values) <= whole
        assert max(values) >= math.ceil(Fraction(r - 6 * q, r) * whole)


def test_criterion_05_vertex_deletion(corpus100_q2):
    for inst in corpus100_q2:
        g, s_set, q = inst.graph, inst.s_set, inst.q
        whole = opt(g, s_set, q)
        for v in g.vertices:
            s_next = (s_set - {v}) | set(g.neighbours(v))
            after = opt(delete_vertex(g, v), s_next, q)
            assert whole >= after >= whole - q


def test_criterion_06_ratio_bound():
    for p in (2, 3, 4):
        for q in (2, 3, 4):
            rs = default_r_sequence(p, q)
            floor = 1.0 - 1.0 / p
            prod = 1.0
            for k in range(1, 10_001):
                prod *= 1.0 - 6.0 * q / rs[k]
                assert prod >= floor - 1e-9, (p, q, k, prod)
            assert abs(prod - guarantee_product(rs, 10_000, q, exact=False)) < 1e-12
            # exact rationals on a prefix
            for k in (0, 1, 2, 5, 50, 200):
                assert guarantee_product(rs, k, q) >= 1 - Fraction(1, p)


def _planar_corpus():
    items = [grid(r, c) for r in range(1, 4) for c in range(1, 4)]
    for seed in range(40):
        g = random_planar_sub(3, 4, 0.75, seed) if seed % 2 else random_planar_sub(4, 4, 0.55, seed)
        if len(g.edges) <= 14:
            items.append(g)
    return items


def test_criterion_07_ptas_end_to_end():
    t0 = time.perf_counter()
    p, q = 2, 2
    corpus = _planar_corpus()
    assert len(corpus) >= 25
    for g in corpus:
        inst = Instance(g, frozenset(), q)
        best = opt(g, q=q)
        rep = ptas_solve(inst, default_r_sequence(p, q))
        assert composable_violation(inst, rep.witness) is None
        assert rep.value >= math.ceil((1 - Fraction(1, p)) * best)
        if rep.certified_ratio is not None:
            assert rep.value >= rep.certified_ratio * best
    assert time.perf_counter() - t0 < 300.0


def _all_small_formulas():
    for n in (1, 2):
        lits = [(x,) for x in range(1, n + 1)] + [(-x,) for x in range(1, n + 1)]
        if n == 2:
            lits += [(a, b) for a in (1, -1) for b in (2, -2)]
        for m in range(1, 5):
            for clauses in itertools.product(lits, repeat=m):
                phi = CnfFormula(n, clauses)
                try:
                    yield phi.validate()
                except CnfError:
                    continue


def _check_lemma4(phi):
    art = lemma4_reduce(phi)
    value, _ = exact_g_spread(art.graph, art.budgets, WIDE)
    sat, model = brute_sat(phi)
    assert sat == (value >= phi.num_clauses + 1), phi
    if sat:
        f = assignment_to_colouring(phi, art, model)
        assert is_valid_g_colouring(art.graph, art.budgets, f)
        assert spread_total(f) == phi.num_clauses + 1
    return sat


def test_criterion_08_lemma4_equivalence():
    exhaustive = [_check_lemma4(phi) for phi in _all_small_formulas()]
    assert len(exhaustive) > 2000 and any(exhaustive) and not all(exhaustive)
    rng = random.Random(404)
    seeded = [_check_lemma4(random_formula(rng, rng.randint(1, 3))) for _ in range(150)]
    assert any(seeded) and not all(seeded)


def test_criterion_09_pendant_lift_equivalence():
    rng = random.Random(909)
    for _ in range(100):
        n = rng.randint(2, 6)
        g = random_graph(n, 8, rng)
        budgets = {v: rng.choice((1, 2)) for v in g.vertices}
        q = rng.choice((2, 3))
        base, _ = exact_g_spread(g, budgets, WIDE)
        lifted, shift = pendant_transform(g, budgets, q, 0)
        lifted_opt, _ = exact_g_spread(lifted, {v: q for v in lifted.vertices}, WIDE)
        for t in range(1, len(g.edges) + 2):
            _, threshold = pendant_transform(g, budgets, q, t)
            assert threshold == t + shift
            assert (base >= t) == (lifted_opt >= threshold), (g.edges, budgets, q, t)


def _cli(argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], stdout=out, stderr=io.StringIO())
    return code, out.getvalue()


def test_criterion_10_determinism(tmp_path):
    gpath = tmp_path / "g.txt"
    gpath.write_text(format_graph(random_planar_sub(3, 4, 0.8, seed=5), s_set=[2]))
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 2 3\n1 -2 0\n-1 0\n2 1 0\n")
    commands = [
        ["exact", gpath, "--json"],
        ["bounds", gpath, "--q", 3, "--json"],
        ["greedy", gpath, "--json"],
        ["ptas", gpath, "--json"],
        ["ptas", gpath, "--r-seq", "3,5", "--json"],
        ["ptas", gpath, "--r-seq", "4", "--workers", 2, "--json"],
        ["gen", "random-planar-sub", 4, 4, "--seed", 3],
        ["gen", "apex", 3, 3, "--seed", 9],
        ["reduce", cnf],
    ]
    for argv in commands:
        first = _cli(argv)
        clear_cache()
        second = _cli(argv)
        assert first == second and first[0] == 0, argv
    # separate interpreters with different hash seeds
    outs = set()
    for seed in ("0", "1", "12345"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        proc = subprocess.run(
            [sys.executable, "-m", "maxedgecol", "ptas", str(gpath), "--r-seq", "3,5", "--json"],
            capture_output=True, env=env, check=True,
        )
        outs.add(proc.stdout)
    assert len(outs) == 1
