"""Hardness reductions: (<=3,3)-SAT to edge {1,2}-colouring on a 1-apex graph,
and the pendant lift from {1,2}-budgets to a uniform budget q.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from .colouring import EdgeColouring, first_violation
from .graph import Graph, norm_edge


class CnfError(ValueError):
    pass


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def occurrences(self) -> Dict[int, List[Tuple[int, int]]]:
        """Variable -> list of ``(clause index, literal)`` in clause order."""
        occ: Dict[int, List[Tuple[int, int]]] = {}
        for i, clause in enumerate(self.clauses):
            for lit in clause:
                occ.setdefault(abs(lit), []).append((i, lit))
        return occ

    def validate(self) -> "CnfFormula":
        """Enforce 1-3 literals over distinct variables and at most 3 occurrences."""
        for i, clause in enumerate(self.clauses, start=1):
            if not 1 <= len(clause) <= 3:
                raise CnfError(f"clause {i} has {len(clause)} literals; allowed 1 to 3")
            vars_ = [abs(l) for l in clause]
            if 0 in vars_:
                raise CnfError(f"clause {i} contains literal 0")
            if len(set(vars_)) != len(vars_):
                raise CnfError(f"clause {i} repeats a variable")
            for x in vars_:
                if x > self.num_vars:
                    raise CnfError(f"clause {i} uses variable {x} > {self.num_vars}")
        for x, occ in self.occurrences().items():
            if len(occ) > 3:
                raise CnfError(f"variable {x} occurs in {len(occ)} clauses; at most 3 allowed")
        return self

    def satisfied_by(self, assignment: Mapping[int, bool]) -> bool:
        return all(any(assignment[abs(l)] == (l > 0) for l in c) for c in self.clauses)


def parse_cnf(text: str) -> CnfFormula:
    """DIMACS CNF; clauses may span lines and end with 0."""
    header = None
    clauses = []
    current: List[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split()
        if not toks or toks[0] == "c":
            continue
        if toks[0] == "%":
            break
        if toks[0] == "p":
            if header is not None:
                raise CnfError(f"line {lineno}: second header")
            if len(toks) != 4 or toks[1] != "cnf":
                raise CnfError(f"line {lineno}: header must read 'p cnf <n> <m>'")
            try:
                header = (int(toks[2]), int(toks[3]))
            except ValueError:
                raise CnfError(f"line {lineno}: malformed header") from None
            continue
        if header is None:
            raise CnfError(f"line {lineno}: clause before header")
        for tok in toks:
            try:
                lit = int(tok)
            except ValueError:
                raise CnfError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if header is None:
        raise CnfError("missing 'p cnf' header")
    if current:
        raise CnfError("last clause is not terminated by 0")
    n, m = header
    if len(clauses) != m:
        raise CnfError(f"header announces {m} clauses, found {len(clauses)}")
    return CnfFormula(n, tuple(clauses)).validate()


def format_cnf(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.num_vars} {phi.num_clauses}"]
    lines += [" ".join(str(l) for l in c) + " 0" for c in phi.clauses]
    return "\n".join(lines) + "\n"


def brute_sat(phi: CnfFormula, max_vars: int = 24) -> Tuple[bool, Optional[Dict[int, bool]]]:
    """Scan all 2^n assignments; variable x is bit x-1 of the counter."""
    n = phi.num_vars
    if n > max_vars:
        raise ValueError(f"{n} variables exceeds the brute-force limit of {max_vars}")
    masks = []
    for c in phi.clauses:
        pos = neg = 0
        for l in c:
            if l > 0:
                pos |= 1 << (l - 1)
            else:
                neg |= 1 << (-l - 1)
        masks.append((pos, neg))
    full = (1 << n) - 1
    for x in range(1 << n):
        nx = full & ~x
        if all((x & pos) or (nx & neg) for pos, neg in masks):
            return True, {v: bool(x >> (v - 1) & 1) for v in range(1, n + 1)}
    return False, None


@dataclass(frozen=True)
class ReductionArtifact:
    """The {1,2}-colouring instance built from a formula.

    ``role`` maps each vertex to ``("apex",)``, ``("clause", i)``,
    ``("var_copy", j, a)`` or ``("conflict", j, a, b)``; clause and copy
    indices are 1-based.
    """

    graph: Graph
    budgets: Dict[int, int]
    threshold: int
    role: Dict[int, tuple]
    apex: int
    clause_vertex: Tuple[int, ...]
    copy_vertex: Dict[Tuple[int, int], int]
    copy_clause: Dict[Tuple[int, int], Tuple[int, int]]

    def comments(self) -> List[str]:
        lines = [f"t {self.threshold}"]
        for v in self.graph.vertices:
            lines.append("role " + str(v) + " " + " ".join(str(x) for x in self.role[v]))
        return lines


def lemma4_reduce(phi: CnfFormula) -> ReductionArtifact:
    """Build the 1-apex gadget graph H, budgets g and threshold t = m + 1.

    One copy vertex per occurrence of a variable; a conflict vertex per pair
    of occurrences of the same variable, joined to both copies only when the
    signs differ; an apex joined to every clause and conflict vertex.
    """
    phi.validate()
    m = phi.num_clauses
    if m < 1:
        raise CnfError("formula has no clauses")
    role: Dict[int, tuple] = {0: ("apex",)}
    budgets = {0: 1}
    clause_vertex = tuple(range(1, m + 1))
    for i, v in enumerate(clause_vertex, start=1):
        role[v] = ("clause", i)
        budgets[v] = 2
    nxt = m + 1
    occ = phi.occurrences()
    copy_vertex: Dict[Tuple[int, int], int] = {}
    copy_clause: Dict[Tuple[int, int], Tuple[int, int]] = {}
    edges = []
    for j in sorted(occ):
        for a, (ci, lit) in enumerate(occ[j], start=1):
            copy_vertex[(j, a)] = nxt
            copy_clause[(j, a)] = (ci + 1, lit)
            role[nxt] = ("var_copy", j, a)
            budgets[nxt] = 1
            edges.append((clause_vertex[ci], nxt))
            nxt += 1
    conflict_edges = []
    apex_edges = [(0, c) for c in clause_vertex]
    for j in sorted(occ):
        k = len(occ[j])
        for a in range(1, k + 1):
            for b in range(a + 1, k + 1):
                w = nxt
                nxt += 1
                role[w] = ("conflict", j, a, b)
                budgets[w] = 2
                if (occ[j][a - 1][1] > 0) != (occ[j][b - 1][1] > 0):
                    conflict_edges.append((w, copy_vertex[(j, a)]))
                    conflict_edges.append((w, copy_vertex[(j, b)]))
                apex_edges.append((0, w))
    graph = Graph.from_edges(nxt, edges + conflict_edges + apex_edges)
    return ReductionArtifact(
        graph=graph,
        budgets=budgets,
        threshold=m + 1,
        role=role,
        apex=0,
        clause_vertex=clause_vertex,
        copy_vertex=copy_vertex,
        copy_clause=copy_clause,
    )


def assignment_to_colouring(
    phi: CnfFormula, artifact: ReductionArtifact, assignment: Mapping[int, bool]
) -> EdgeColouring:
    """Colour i on the edges of one true-literal copy of clause i; 0 elsewhere."""
    g = artifact.graph
    f = {e: 0 for e in g.edges}
    for i, clause in enumerate(phi.clauses, start=1):
        chosen = None
        for (j, a), (ci, lit) in artifact.copy_clause.items():
            if ci == i and assignment.get(j) == (lit > 0):
                chosen = artifact.copy_vertex[(j, a)]
                break
        if chosen is None:
            raise ValueError(f"assignment leaves clause {i} unsatisfied")
        for e in g.incident[chosen]:
            f[e] = i
    bad = first_violation(g, f, artifact.budgets)
    if bad is not None:
        v, pal = bad
        raise ValueError(f"vertex {v} {artifact.role[v]} would see colours {sorted(pal)}")
    return f


def pendant_transform(
    g: Graph, budgets: Mapping[int, int], q: int, t: int
) -> Tuple[Graph, int]:
    """Attach q - g(v) pendant vertices to every v.

    The new threshold is ``t + r + (q - 2) n`` with r the number of budget-1
    vertices; pendant ids follow the largest existing id.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    for v in g.vertices:
        if budgets[v] not in (1, 2):
            raise ValueError(f"budget of vertex {v} must be 1 or 2")
    nxt = max(g.vertices, default=-1) + 1
    vertices = list(g.vertices)
    edges = list(g.edges)
    for v in g.vertices:
        for _ in range(q - budgets[v]):
            vertices.append(nxt)
            edges.append(norm_edge(v, nxt))
            nxt += 1
    r = sum(1 for v in g.vertices if budgets[v] == 1)
    return Graph(tuple(vertices), tuple(edges)), t + r + (q - 2) * len(g.vertices)
