"""Brute-force reference implementations used only by the tests.

Nothing here shares code with the package's solvers beyond the Graph type.
"""

from itertools import product


def restricted_growth(m, zero=True):
    """Yield every assignment of m edges to classes in first-occurrence form.

    With ``zero`` an extra class 0 may appear anywhere and is never renamed.
    """

    def rec(prefix, k):
        if len(prefix) == m:
            yield tuple(prefix)
            return
        choices = ([0] if zero else []) + list(range(1, k + 2))
        for c in choices:
            prefix.append(c)
            yield from rec(prefix, max(k, c))
            prefix.pop()

    yield from rec([], 0)


def _palettes(edges, assign):
    pal = {}
    for (u, v), c in zip(edges, assign):
        pal.setdefault(u, set()).add(c)
        pal.setdefault(v, set()).add(c)
    return pal


def brute_composable(edges, s_set, q):
    """Largest number of non-zero classes of any S-composable q-colouring."""
    edges = list(edges)
    best = 0
    for assign in restricted_growth(len(edges), zero=True):
        pal = _palettes(edges, assign)
        if all(len(p) <= q and (v not in s_set or len(p - {0}) <= q - 1) for v, p in pal.items()):
            best = max(best, len(set(assign) - {0}))
    return best


def brute_g_spread(edges, budgets):
    """Largest number of distinct colours of any edge g-colouring."""
    edges = list(edges)
    best = 0
    for assign in restricted_growth(len(edges), zero=False):
        pal = _palettes(edges, assign)
        if all(len(p) <= budgets[v] for v, p in pal.items()):
            best = max(best, len(set(assign)))
    return best


def brute_sat(n, clauses):
    for bits in product((False, True), repeat=n):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
            return True
    return False
