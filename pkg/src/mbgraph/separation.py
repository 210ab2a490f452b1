"""Separation in undirected graphs and d-separation in DAGs.

A trail is active given ``Z`` when every interior vertex that is not the
middle of a v-structure lies outside ``Z``, and every v-structure middle has
itself or a descendant in ``Z``.  Trail endpoints are never tested against
``Z``; instead a query vertex that belongs to ``Z`` is observed and starts no
trail.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from . import kernels
from .errors import KindMismatch, NotATrail
from .graph import Graph, VertexSet, ancestor_ids


def reachable_ids(g: Graph, sources: Iterable[int], cond: Iterable[int]) -> set[int]:
    mask = kernels.reach_ids(g, list(sources), g.mask(cond))
    return {i for i, m in enumerate(mask) if m}


def separated_ids(g: Graph, X, Y, Z) -> bool:
    """Kind-agnostic separation test on id sets."""
    X, Y, Z = set(X), set(Y), set(Z)
    if (X & Y) - Z:
        return False
    Y = Y - Z
    if not Y:
        return True
    mask = kernels.reach_ids(g, sorted(X - Z), g.mask(Z))
    return not any(mask[y] for y in Y)


def reachable(g: Graph, B: Iterable[str], Z: Iterable[str]) -> VertexSet:
    """Vertices not in ``Z`` joined to ``B`` by an active trail (or path) given ``Z``.

    Members of ``B`` outside ``Z`` are included through the trivial trail.
    Runs in O(|V| + |A|).
    """
    return g.to_labels(reachable_ids(g, sorted(g.ids(B)), g.ids(Z)))


def is_d_separated(g: Graph, X: Iterable[str], Y: Iterable[str], Z: Iterable[str] = ()) -> bool:
    if not g.directed:
        raise KindMismatch("d-separation needs a directed graph; use is_separated")
    return separated_ids(g, g.ids(X), g.ids(Y), g.ids(Z))


def is_separated(g: Graph, X: Iterable[str], Y: Iterable[str], Z: Iterable[str] = ()) -> bool:
    if g.directed:
        raise KindMismatch("separation needs an undirected graph; use is_d_separated")
    return separated_ids(g, g.ids(X), g.ids(Y), g.ids(Z))


def separated(g: Graph, X: Iterable[str], Y: Iterable[str], Z: Iterable[str] = ()) -> bool:
    """d-separation on a DAG, plain separation on an undirected graph."""
    return separated_ids(g, g.ids(X), g.ids(Y), g.ids(Z))


def is_active_trail(g: Graph, trail: Sequence[str], Z: Iterable[str] = ()) -> bool:
    ids = [g.id(x) for x in trail]
    if not ids:
        raise NotATrail("empty trail")
    for a, b in zip(ids, ids[1:]):
        if b not in g.succ[a] and a not in g.succ[b]:
            raise NotATrail(f"{g.labels[a]!r} and {g.labels[b]!r} are not adjacent")
    return active_trail_ids(g, ids, g.ids(Z))


def active_trail_ids(g: Graph, ids: Sequence[int], Z, anc_z=None) -> bool:
    """Activity of a vertex sequence already known to be a trail.

    ``anc_z`` may carry the closed ancestor set of ``Z`` to avoid recomputing it.
    """
    interior = range(1, len(ids) - 1)
    if not g.directed:
        return not any(ids[i] in Z for i in interior)
    for i in interior:
        prev, mid, nxt = ids[i - 1], ids[i], ids[i + 1]
        collider = mid in g.succ[prev] and mid in g.succ[nxt]
        if collider:
            if anc_z is None:
                anc_z = ancestor_ids(g, Z, closed=True)
            if mid not in anc_z:
                return False
        elif mid in Z:
            return False
    return True
