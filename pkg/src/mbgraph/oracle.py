"""Brute-force and numerical ground truth for the fast engines.

Everything here enumerates: simple trails, vertex subsets, full joint
tables.  Guards raise :class:`TooLarge` rather than running forever.  None of
it calls the reachability kernels.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable

import networkx as nx
import numpy as np

from .causal import DiscreteModel, Distribution, Factor, cpt_scope
from .errors import NoMinimum, NoSeparator, NotUnique, TooLarge
from .graph import Graph, VertexSet, ancestor_ids
from .separation import active_trail_ids

MAX_VERTICES = 12
MAX_JOINT = 2 ** 20


def _guard(g: Graph):
    if g.n > MAX_VERTICES:
        raise TooLarge(f"brute force is limited to {MAX_VERTICES} vertices, got {g.n}")


def _adjacent(g: Graph, u: int) -> tuple[int, ...]:
    return tuple(sorted(set(g.succ[u]) | set(g.pred[u])))


def enumerate_trails(g: Graph, u: str, v: str, max_len: int | None = None) -> list[tuple[str, ...]]:
    """All simple trails from ``u`` to ``v``, ignoring arc orientation.

    ``max_len`` bounds the number of edges.  Sorted lexicographically by label.
    """
    _guard(g)
    s, t = g.id(u), g.id(v)
    found = []
    path = [s]
    on_path = {s}

    def extend():
        x = path[-1]
        if x == t:
            found.append(tuple(g.labels[i] for i in path))
            return
        if max_len is not None and len(path) - 1 >= max_len:
            return
        for y in _adjacent(g, x):
            if y not in on_path:
                path.append(y)
                on_path.add(y)
                extend()
                on_path.discard(y)
                path.pop()

    if s != t:
        extend()
    return sorted(found)


def _locally_open(g: Graph, prev: int, mid: int, nxt: int, Z, anc_z) -> bool:
    if not g.directed:
        return mid not in Z
    if mid in g.succ[prev] and mid in g.succ[nxt]:
        return mid in anc_z
    return mid not in Z


@lru_cache(maxsize=1 << 18)
def _bf_separated(g: Graph, X: frozenset, Y: frozenset, Z: frozenset) -> bool:
    if (X & Y) - Z:
        return False
    targets = Y - Z
    if not targets:
        return True
    anc_z = ancestor_ids(g, Z, closed=True) if g.directed else frozenset()
    # depth-first over simple trails; a prefix whose newest interior vertex
    # blocks cannot be extended into an active trail
    for x in sorted(X - Z):
        path = [x]
        on_path = {x}
        stack = [iter(_adjacent(g, x))]
        while stack:
            for y in stack[-1]:
                if y in on_path:
                    continue
                if len(path) >= 2 and not _locally_open(g, path[-2], path[-1], y, Z, anc_z):
                    continue
                if y in targets:
                    trail = path + [y]
                    if active_trail_ids(g, trail, Z, anc_z):
                        return False
                    continue
                if y in Z and not g.directed:
                    continue
                path.append(y)
                on_path.add(y)
                stack.append(iter(_adjacent(g, y)))
                break
            else:
                stack.pop()
                on_path.discard(path.pop())
    return True


def bf_separated_ids(g: Graph, X, Y, Z) -> bool:
    _guard(g)
    return _bf_separated(g, frozenset(X), frozenset(Y), frozenset(Z))


def is_d_separated_bruteforce(g: Graph, X: Iterable[str], Y: Iterable[str], Z: Iterable[str] = ()) -> bool:
    """Separation decided by listing every simple trail between ``X`` and ``Y``."""
    return bf_separated_ids(g, g.ids(X), g.ids(Y), g.ids(Z))


def _subsets(items):
    items = sorted(items)
    for k in range(len(items) + 1):
        for combo in combinations(items, k):
            yield frozenset(combo)


def separators_ids(g: Graph, B, D, E) -> list[frozenset]:
    """Every subset of ``V - (B | D | E)`` that separates ``B`` and ``D`` given ``E``."""
    _guard(g)
    B, D, E = frozenset(B), frozenset(D), frozenset(E)
    pool = set(range(g.n)) - B - D - E
    return [M for M in _subsets(pool) if _bf_separated(g, B, D, M | E)]


def minimal_separators_ids(g: Graph, B, D, E) -> list[frozenset]:
    seps = separators_ids(g, B, D, E)
    sep_set = set(seps)
    minimal = []
    for M in seps:
        # every strict subset, not just single deletions
        if not any(S in sep_set for S in _subsets(M) if S != M):
            minimal.append(M)
    return minimal


def _canonical(g: Graph, sets) -> list[VertexSet]:
    return sorted((g.to_labels(s) for s in sets), key=lambda s: (len(s), sorted(s)))


def all_minimal_separators(g: Graph, B: Iterable[str], D: Iterable[str], E: Iterable[str] = ()) -> list[VertexSet]:
    return _canonical(g, minimal_separators_ids(g, g.ids(B), g.ids(D), g.ids(E)))


def mb_in_set_bruteforce_ids(g: Graph, B, C, E) -> frozenset:
    _guard(g)
    B, C, E = frozenset(B), frozenset(C), frozenset(E)
    satisfying = [M for M in _subsets(C - B) if _bf_separated(g, B, C - B - M, M | E)]
    if not satisfying:
        raise NoMinimum("no subset satisfies the blanket condition")
    smallest = frozenset.intersection(*satisfying)
    if smallest not in satisfying:
        raise NoMinimum("satisfying subsets have no least element")
    return smallest


def mb_in_set_bruteforce(g: Graph, B: Iterable[str], C: Iterable[str], E: Iterable[str] = ()) -> VertexSet:
    return g.to_labels(mb_in_set_bruteforce_ids(g, g.ids(B), g.ids(C), g.ids(E)))


def directional_bruteforce_ids(g: Graph, B, D, E) -> frozenset:
    B, D, E = frozenset(B), frozenset(D), frozenset(E)
    seps = separators_ids(g, B, D, E)
    if not seps:
        raise NoSeparator("no separator between the source and target sets")
    nearest = [M for M in minimal_separators_ids(g, B, D, E)
               if all(_bf_separated(g, D, M, S | E) for S in seps)]
    if len(nearest) != 1:
        raise NotUnique(f"{len(nearest)} minimal separators satisfy the nearness condition")
    return nearest[0]


def directional_bruteforce(g: Graph, B: Iterable[str], D: Iterable[str], E: Iterable[str] = ()) -> VertexSet:
    return g.to_labels(directional_bruteforce_ids(g, g.ids(B), g.ids(D), g.ids(E)))


def is_minimal_separator_bruteforce(g: Graph, B: Iterable[str], D: Iterable[str],
                                    E: Iterable[str], M: Iterable[str]) -> bool:
    B, D, E, M = g.ids(B), g.ids(D), g.ids(E), g.ids(M)
    _guard(g)
    if not _bf_separated(g, B, D, M | E):
        return False
    return not any(_bf_separated(g, B, D, S | E) for S in _subsets(M) if S != M)


def sample_model(g: Graph, seed: int, max_domain: int = 2) -> DiscreteModel:
    """Random model on ``g``: Dirichlet(1) CPT rows, or Exp(1) clique potentials.

    Domain sizes are drawn uniformly from ``2..max_domain``.  Undirected
    models get one potential per maximal clique.
    """
    rng = np.random.default_rng(seed)
    cards = [int(k) for k in rng.integers(2, max_domain + 1, size=g.n)]
    factors = []
    if g.directed:
        for v in range(g.n):
            scope = cpt_scope(g, v)
            shape = tuple(cards[u] for u in scope)
            rows = rng.dirichlet(np.ones(shape[-1]), size=shape[:-1])
            factors.append(Factor(scope, rows.reshape(shape)))
    else:
        ug = nx.Graph()
        ug.add_nodes_from(range(g.n))
        ug.add_edges_from((u, v) for u in range(g.n) for v in g.succ[u] if u < v)
        for clique in sorted(tuple(sorted(c)) for c in nx.find_cliques(ug)):
            shape = tuple(cards[u] for u in clique)
            factors.append(Factor(clique, rng.exponential(1.0, size=shape)))
    return DiscreteModel(g, cards, factors)


def exact_joint(model: DiscreteModel) -> Distribution:
    """Full joint table by multiplying every factor and normalizing."""
    g = model.graph
    if int(np.prod(model.cardinality, dtype=np.int64)) > MAX_JOINT:
        raise TooLarge("joint table would exceed 2**20 entries")
    table = np.ones(model.cardinality)
    for f in model.factors:
        shape = [1] * g.n
        order = np.argsort(f.scope)
        for v in f.scope:
            shape[v] = model.cardinality[v]
        table = table * np.transpose(f.table, order).reshape(shape)
    return Distribution(g.labels, table / table.sum())


def check_ci(joint: Distribution, X: Iterable[str], Y: Iterable[str], Z: Iterable[str] = (),
             tol: float = 1e-9) -> bool:
    """Whether ``X`` and ``Y`` are independent given ``Z`` under ``joint``.

    Returns True iff, for every ``z`` with positive probability, the total
    variation between ``P(x, y | z)`` and ``P(x | z) P(y | z)`` is at most ``tol``.
    """
    return ci_gap(joint, X, Y, Z) <= tol


def ci_gap(joint: Distribution, X, Y, Z=()) -> float:
    axis = {v: i for i, v in enumerate(joint.variables)}
    Z = sorted(set(Z), key=axis.__getitem__)
    X = sorted(set(X) - set(Z), key=axis.__getitem__)
    Y = sorted(set(Y) - set(Z), key=axis.__getitem__)
    if not X or not Y:
        return 0.0
    xy = sorted(set(X) | set(Y), key=axis.__getitem__)
    keep = xy + Z
    drop = tuple(i for v, i in axis.items() if v not in set(keep))
    p = joint.table.sum(axis=drop)
    # p has axes in joint order restricted to ``keep``; move Z to the front
    remaining = [v for v in joint.variables if v in set(keep)]
    p = np.moveaxis(p, [remaining.index(z) for z in Z], list(range(len(Z))))
    inner = [v for v in remaining if v not in set(Z)]
    nz = len(Z)
    worst = 0.0
    for z in np.ndindex(*p.shape[:nz]):
        pxy = p[z]
        pz = pxy.sum()
        if pz <= 0:
            continue
        pxy = pxy / pz
        x_axes = tuple(i for i, v in enumerate(inner) if v not in X)
        y_axes = tuple(i for i, v in enumerate(inner) if v not in Y)
        px = pxy.sum(axis=x_axes, keepdims=True)
        py = pxy.sum(axis=y_axes, keepdims=True)
        worst = max(worst, 0.5 * float(np.abs(pxy - px * py).sum()))
    return worst


def random_graph(seed: int, n: int, density: float, directed: bool) -> Graph:
    """Seeded random graph; each of the ``n (n - 1) / 2`` pairs is an edge with prob ``density``.

    Directed graphs orient every edge along a random vertex permutation.
    """
    from .graph import build_graph

    rng = np.random.default_rng(seed)
    labels = [f"v{i}" for i in range(n)]
    order = rng.permutation(n)
    pairs = []
    for i, j in combinations(range(n), 2):
        if rng.random() < density:
            a, b = labels[order[i]], labels[order[j]]
            pairs.append((a, b))
    return build_graph("directed" if directed else "undirected", labels, pairs)
