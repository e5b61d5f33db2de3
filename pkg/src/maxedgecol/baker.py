"""Baker-game approximation scheme for composable edge q-colourings.

The engine follows a Destroyer strategy down the game tree. At every state it
first tries the bounded solver with ``s = ceil(r/3)``; an exact answer ends the
branch. Otherwise a vertex deletion recurses once, with the deleted vertex's
neighbours joining S, and a layering recurses into every window of every
``(lambda, r, m)``-stratification, keeping the best ``m``.

The general minor-free Destroyer strategy is not implemented; strategies here
are simple stand-ins selected by name, and a depth budget bounds the game.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple, Union

from .colouring import (
    EdgeColouring,
    Instance,
    extend_with_zero,
    matching_colouring,
    merge_disjoint,
    spread_nonzero,
)
from .exact import DEFAULT_LIMITS, InstanceTooLarge, SolveLimits, bounded_solver
from .graph import (
    Graph,
    GraphError,
    Layering,
    bfs_layering,
    delete_vertex,
    greedy_maximal_matching,
    is_layering,
    stratify,
)


@dataclass(frozen=True)
class RSequence:
    """The sequence r_1, r_2, ... of layer-window widths.

    Without ``values`` the rule is ``r_i = 10 p q i^2``. An explicit list is
    used as given and then continues with its last entry. ``offset`` counts
    the rounds already consumed, so ``tail()`` is cheap.
    """

    p: int = 2
    q: int = 2
    values: Optional[Tuple[int, ...]] = None
    offset: int = 0

    def __post_init__(self):
        if self.values is not None:
            object.__setattr__(self, "values", tuple(self.values))
            if not self.values:
                raise ValueError("explicit r-sequence must not be empty")
            if any(r < 2 for r in self.values):
                raise ValueError("every r_i must be at least 2")
        elif self.p < 2 or self.q < 2:
            raise ValueError("the default rule needs p, q >= 2")

    def __getitem__(self, i: int) -> int:
        """r_i for 1-based ``i`` relative to the current head."""
        if i < 1:
            raise IndexError("r-sequence is 1-based")
        j = i + self.offset
        if self.values is None:
            return 10 * self.p * self.q * j * j
        return self.values[min(j, len(self.values)) - 1]

    @property
    def head(self) -> int:
        return self[1]

    def tail(self) -> "RSequence":
        return RSequence(self.p, self.q, self.values, self.offset + 1)

    def prefix(self, k: int) -> List[int]:
        return [self[i] for i in range(1, k + 1)]


def default_r_sequence(p: int, q: int) -> RSequence:
    return RSequence(p=p, q=q)


def guarantee_product(rs: RSequence, k: int, q: int, exact: bool = True) -> Union[Fraction, float]:
    """prod_{i<=k} (1 - 6q/r_i); 0 once any factor is non-positive."""
    acc: Union[Fraction, float] = Fraction(1) if exact else 1.0
    for i in range(1, k + 1):
        r = rs[i]
        if r <= 6 * q:
            return Fraction(0) if exact else 0.0
        acc *= Fraction(r - 6 * q, r) if exact else (1.0 - 6.0 * q / r)
    return acc


@dataclass(frozen=True)
class DeleteVertex:
    v: int


@dataclass(frozen=True)
class LayeringMove:
    level: Tuple[Tuple[int, int], ...]

    @classmethod
    def of(cls, lam: Layering) -> "LayeringMove":
        return cls(tuple(sorted(lam.items())))

    @property
    def lam(self) -> Layering:
        return dict(self.level)


DestroyerMove = Union[DeleteVertex, LayeringMove]


@dataclass(frozen=True)
class GameState:
    graph: Graph
    s_set: FrozenSet[int] = frozenset()
    depth: int = 1
    trace: Tuple[DestroyerMove, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "s_set", frozenset(self.s_set))
        if not self.s_set <= self.graph.vertex_set:
            raise ValueError("S must be a subset of the vertices")
        if self.depth < 1:
            raise ValueError("depth is 1-based")

    @property
    def finished(self) -> bool:
        return not self.graph.vertices


@dataclass(frozen=True)
class Branch:
    """One outcome of a Destroyer move.

    A deletion has a single branch with ``m = None``; a layering has one
    branch per residue ``m`` whose states are the windows of the
    stratification. ``removed_edges`` must be coloured 0 when merging back.
    """

    m: Optional[int]
    states: Tuple[GameState, ...]
    removed_edges: Tuple[Tuple[int, int], ...]


def apply_destroyer_move(state: GameState, move: DestroyerMove, r: int) -> Tuple[Branch, ...]:
    g = state.graph
    trace = state.trace + (move,)
    if isinstance(move, DeleteVertex):
        v = move.v
        if v not in g.vertex_set:
            raise GraphError(f"cannot delete unknown vertex {v}")
        s_next = (state.s_set - {v}) | frozenset(g.neighbours(v))
        nxt = GameState(delete_vertex(g, v), s_next, state.depth + 1, trace)
        return (Branch(None, (nxt,), g.incident[v]),)
    if isinstance(move, LayeringMove):
        lam = move.lam
        if not is_layering(g, lam):
            raise ValueError("not a layering of the current graph")
        branches = []
        for m in range(r):
            st = stratify(g, lam, r, m)
            s_m = state.s_set | st.boundary
            states = tuple(
                GameState(st.residual_graph.induced(part), s_m & part, state.depth + 1, trace)
                for part in st.parts
            )
            branches.append(Branch(m, states, st.removed_edges))
        return tuple(branches)
    raise TypeError(f"unknown move {move!r}")


@dataclass(frozen=True)
class PlanarDestroyer:
    """Stand-in Destroyer: apex vertices, then one BFS layering, then hubs.

    1. delete the lowest-id declared apex vertex still present;
    2. if this branch has not seen a layering yet, play the BFS layering;
    3. delete a vertex of maximum degree (lowest id on ties).

    Rules can be switched off to obtain the other named strategies.
    """

    apex: FrozenSet[int] = frozenset()
    use_apex: bool = True
    use_layering: bool = True

    def __call__(self, state: GameState, r: int) -> DestroyerMove:
        g = state.graph
        if self.use_apex:
            present = sorted(self.apex & g.vertex_set)
            if present:
                return DeleteVertex(present[0])
        if self.use_layering and not any(isinstance(mv, LayeringMove) for mv in state.trace):
            return LayeringMove.of(bfs_layering(g))
        return DeleteVertex(min(g.vertices, key=lambda v: (-g.degree(v), v)))


def planar_destroyer(state: GameState, config: Optional[Dict] = None) -> DestroyerMove:
    config = config or {}
    strategy = PlanarDestroyer(apex=frozenset(config.get("apex", ())))
    return strategy(state, config.get("r", 2))


STRATEGIES: Dict[str, Callable[[FrozenSet[int]], PlanarDestroyer]] = {
    "planar-bfs": lambda apex: PlanarDestroyer(apex=apex),
    "apex-first": lambda apex: PlanarDestroyer(apex=apex, use_layering=False),
    "delete-max-degree": lambda apex: PlanarDestroyer(use_apex=False, use_layering=False),
}


def make_strategy(name: str, apex=()) -> PlanarDestroyer:
    try:
        return STRATEGIES[name](frozenset(apex))
    except KeyError:
        raise ValueError(f"unknown strategy {name!r}; choose from {sorted(STRATEGIES)}") from None


@dataclass
class PtasReport:
    value: int
    witness: EdgeColouring
    certified_ratio: Optional[Fraction]
    rounds_used: int
    base_cases_optimal: bool
    upper_bound: int
    aposteriori_ratio: Optional[Fraction]
    nodes: int = 0
    root_move: Optional[DestroyerMove] = None


@dataclass
class _Node:
    colouring: EdgeColouring
    certified: bool
    rounds: int
    nodes: int = 1
    move: Optional[DestroyerMove] = None


@dataclass(frozen=True)
class _Engine:
    q: int
    rs: RSequence
    strategy: Callable
    depth_budget: int
    limits: SolveLimits

    def solve(self, state: GameState, workers: int = 0) -> _Node:
        g = state.graph
        if state.finished:
            return _Node({}, True, 0)
        inst = Instance(g, state.s_set, self.q)
        r = self.rs[state.depth]
        s = math.ceil(r / 3)
        try:
            base = bounded_solver(inst, s, self.limits)
        except InstanceTooLarge:
            base = None
        if base is not None and base.optimal:
            return _Node(base.witness, True, 0)
        matching = base.witness if base is not None else matching_colouring(g, greedy_maximal_matching(g))
        if state.depth > self.depth_budget:
            return _Node(matching, False, 0)

        move = self.strategy(state, r)
        branches = apply_destroyer_move(state, move, r)
        if workers > 1 and len(branches) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(self.solve_branch, branches))
        else:
            results = [self.solve_branch(b) for b in branches]

        best_f, best_val = None, -1
        certified = base is not None
        rounds = 0
        nodes = 1
        for f, node_cert, node_rounds, node_count in results:
            certified = certified and node_cert
            rounds = max(rounds, node_rounds)
            nodes += node_count
            val = spread_nonzero(f)
            if val > best_val:
                best_f, best_val = f, val
        f = extend_with_zero(g, best_f)
        # never report less than the matching colouring already in hand
        if spread_nonzero(matching) > best_val:
            f = matching
        return _Node(f, certified, rounds + 1, nodes, move)

    def solve_branch(self, branch: Branch):
        parts = [self.solve(st) for st in branch.states]
        f = merge_disjoint(p.colouring for p in parts)
        for e in branch.removed_edges:
            f[e] = 0
        return (
            f,
            all(p.certified for p in parts),
            max((p.rounds for p in parts), default=0),
            sum(p.nodes for p in parts),
        )


def ptas_solve(
    inst: Instance,
    rs: Optional[RSequence] = None,
    strategy: Optional[Callable] = None,
    depth_budget: int = 16,
    limits: SolveLimits = DEFAULT_LIMITS,
    workers: int = 0,
) -> PtasReport:
    """Approximate the composable q-colouring optimum by playing the Baker game.

    ``certified_ratio`` is the product guarantee over the rounds actually
    played, reported only if every leaf was solved exactly and the depth
    budget was never hit. ``workers > 1`` evaluates the root's branches in
    separate processes; the merge is order-independent so results match the
    sequential run.
    """
    if inst.q < 2:
        raise ValueError("ptas_solve requires q >= 2")
    if depth_budget < 1:
        raise ValueError("depth_budget must be at least 1")
    rs = rs if rs is not None else default_r_sequence(2, inst.q)
    strategy = strategy if strategy is not None else PlanarDestroyer()
    engine = _Engine(inst.q, rs, strategy, depth_budget, limits)
    node = engine.solve(GameState(inst.graph, inst.s_set), workers=workers)
    f = {e: node.colouring[e] for e in inst.graph.edges}
    value = spread_nonzero(f)
    ratio = None
    if node.certified:
        prod = guarantee_product(rs, node.rounds, inst.q)
        ratio = prod if prod > 0 else None
    upper = 2 * inst.q * len(greedy_maximal_matching(inst.graph))
    return PtasReport(
        value=value,
        witness=f,
        certified_ratio=ratio,
        rounds_used=node.rounds,
        base_cases_optimal=node.certified,
        upper_bound=upper,
        aposteriori_ratio=Fraction(value, upper) if upper else None,
        nodes=node.nodes,
        root_move=node.move,
    )
