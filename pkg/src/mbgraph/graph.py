"""Immutable graphs with interned vertices.

Vertices are stored as dense integer ids ``0..n-1``; every public function
takes and returns sets of *labels* (strings).  A ``VertexSet`` is simply a
``frozenset`` of labels, serialized in sorted order.

Vocabulary: what some texts call "ascendants" are called
ancestors here, ``An(S)`` (S together with its ancestors) is
:func:`ancestral_closure`, and descendants keep their name.
"""

from __future__ import annotations

import enum
from collections import deque
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CycleDetected,
    DuplicateLabel,
    KindMismatch,
    SelfLoop,
    UnknownLabel,
    UnknownVertex,
)

VertexSet = frozenset


class GraphKind(enum.Enum):
    DIRECTED = "directed"
    UNDIRECTED = "undirected"


class Graph:
    """A frozen directed-acyclic or undirected graph.

    ``succ[v]`` holds the children of ``v`` (neighbors when undirected) and
    ``pred[v]`` its parents (again neighbors when undirected), both as sorted
    tuples of ids.  Use :func:`build_graph` rather than calling this directly.
    """

    __slots__ = ("kind", "labels", "succ", "pred", "_index", "__dict__")

    def __init__(self, kind: GraphKind, labels: tuple[str, ...],
                 succ: tuple[tuple[int, ...], ...], pred: tuple[tuple[int, ...], ...]):
        self.kind = kind
        self.labels = labels
        self.succ = succ
        self.pred = pred
        self._index = {label: i for i, label in enumerate(labels)}

    @property
    def directed(self) -> bool:
        return self.kind is GraphKind.DIRECTED

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"Graph({self.kind.value}, {self.n} vertices, {self.num_edges} edges)"

    @property
    def num_edges(self) -> int:
        total = sum(len(s) for s in self.succ)
        return total if self.directed else total // 2

    def edges(self) -> list[tuple[str, str]]:
        """Arcs ``(tail, head)``, or edges ``(u, v)`` with ``u`` declared first."""
        out = []
        for u, nbrs in enumerate(self.succ):
            for v in nbrs:
                if self.directed or u < v:
                    out.append((self.labels[u], self.labels[v]))
        return out

    def id(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {label!r}") from None

    def ids(self, labels: Iterable[str]) -> frozenset[int]:
        if isinstance(labels, str):
            labels = (labels,)
        return frozenset(self.id(x) for x in labels)

    def to_labels(self, ids: Iterable[int]) -> VertexSet:
        return frozenset(self.labels[i] for i in ids)

    def has_edge(self, u: str, v: str) -> bool:
        return self.id(v) in self.succ[self.id(u)]

    def mask(self, ids: Iterable[int]) -> bytearray:
        m = bytearray(self.n)
        for i in ids:
            m[i] = 1
        return m

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """``(succ_ptr, succ_idx, pred_ptr, pred_idx)`` as int32 arrays."""
        return _to_csr(self.succ) + _to_csr(self.pred)

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        if not self.directed:
            raise KindMismatch("topological order needs a directed graph")
        order = _kahn(self.succ, self.pred)
        assert order is not None
        return tuple(order)


def _to_csr(adj):
    ptr = np.zeros(len(adj) + 1, dtype=np.int32)
    ptr[1:] = np.cumsum([len(a) for a in adj])
    idx = np.fromiter((v for a in adj for v in a), dtype=np.int32, count=int(ptr[-1]))
    return ptr, idx


def _kahn(succ, pred):
    """Topological order, or ``None`` when the arcs contain a cycle."""
    order = list(_kahn_partial(succ, pred))
    return order if len(order) == len(succ) else None


def _find_cycle(succ, alive):
    # vertices left over by Kahn's algorithm all lie on or downstream of a cycle
    color = {}
    for start in sorted(alive):
        if start in color:
            continue
        stack = [(start, iter(succ[start]))]
        path = [start]
        color[start] = 1
        while stack:
            u, it = stack[-1]
            for v in it:
                if v not in alive:
                    continue
                if color.get(v) == 1:
                    return path[path.index(v):] + [v]
                if v not in color:
                    color[v] = 1
                    path.append(v)
                    stack.append((v, iter(succ[v])))
                    break
            else:
                color[u] = 2
                path.pop()
                stack.pop()
    raise AssertionError("no cycle among leftover vertices")


def build_graph(kind, labels: Sequence[str], pairs: Iterable[tuple[str, str]]) -> Graph:
    """Build a frozen graph from vertex labels and ``(u, v)`` pairs.

    ``kind`` is a :class:`GraphKind` or one of ``"directed"``/``"undirected"``.
    Directed input is checked for cycles with a topological sort.
    """
    kind = GraphKind(kind)
    labels = tuple(labels)
    index = {}
    for i, label in enumerate(labels):
        if label in index:
            raise DuplicateLabel(f"duplicate vertex label {label!r}")
        index[label] = i
    n = len(labels)
    succ = [set() for _ in range(n)]
    pred = [set() for _ in range(n)]
    for u, v in pairs:
        for x in (u, v):
            if x not in index:
                raise UnknownLabel(f"edge endpoint {x!r} is not a declared vertex")
        if u == v:
            raise SelfLoop(f"self-loop on {u!r}")
        a, b = index[u], index[v]
        succ[a].add(b)
        pred[b].add(a)
        if kind is GraphKind.UNDIRECTED:
            succ[b].add(a)
            pred[a].add(b)
    succ = tuple(tuple(sorted(s)) for s in succ)
    pred = tuple(tuple(sorted(p)) for p in pred)
    if kind is GraphKind.DIRECTED and _kahn(succ, pred) is None:
        order = set(_kahn_partial(succ, pred))
        alive = set(range(n)) - order
        raise CycleDetected([labels[i] for i in _find_cycle(succ, alive)])
    return Graph(kind, labels, succ, pred)


def _kahn_partial(succ, pred):
    indeg = [len(p) for p in pred]
    queue = deque(i for i, d in enumerate(indeg) if d == 0)
    while queue:
        u = queue.popleft()
        yield u
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)


def _require_directed(g: Graph, what: str):
    if not g.directed:
        raise KindMismatch(f"{what} is only defined on directed graphs")


def _closure(adj, seeds: Iterable[int]) -> set[int]:
    seen = set(seeds)
    stack = list(seen)
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def ancestor_ids(g: Graph, ids: Iterable[int], closed: bool = False) -> set[int]:
    """Ancestors of the id set; includes the set itself when ``closed``."""
    if closed:
        return _closure(g.pred, ids)
    return _closure(g.pred, {p for i in ids for p in g.pred[i]})


def descendant_ids(g: Graph, ids: Iterable[int], closed: bool = False) -> set[int]:
    if closed:
        return _closure(g.succ, ids)
    return _closure(g.succ, {c for i in ids for c in g.succ[i]})


def parents(g: Graph, S: Iterable[str]) -> VertexSet:
    """Vertices with an arc into some member of ``S``."""
    _require_directed(g, "parents")
    return g.to_labels(p for i in g.ids(S) for p in g.pred[i])


def children(g: Graph, S: Iterable[str]) -> VertexSet:
    _require_directed(g, "children")
    return g.to_labels(c for i in g.ids(S) for c in g.succ[i])


def neighbors(g: Graph, S: Iterable[str]) -> VertexSet:
    ids = g.ids(S)
    return g.to_labels({v for i in ids for v in g.succ[i]} | {v for i in ids for v in g.pred[i]})


def ancestors(g: Graph, S: Iterable[str]) -> VertexSet:
    """Strict ancestors: vertices with a non-empty directed path into ``S``.

    A member of ``S`` is included only if it is an ancestor of another member.
    """
    _require_directed(g, "ancestors")
    return g.to_labels(ancestor_ids(g, g.ids(S)))


def descendants(g: Graph, S: Iterable[str]) -> VertexSet:
    _require_directed(g, "descendants")
    return g.to_labels(descendant_ids(g, g.ids(S)))


def ancestral_closure(g: Graph, S: Iterable[str]) -> VertexSet:
    """``S`` together with all of its ancestors."""
    _require_directed(g, "ancestral_closure")
    return g.to_labels(ancestor_ids(g, g.ids(S), closed=True))


def _rebuild(g: Graph, keep) -> Graph:
    pairs = [(g.labels[u], g.labels[v]) for u, nbrs in enumerate(g.succ) for v in nbrs if keep(u, v)]
    return build_graph(g.kind, g.labels, pairs)


def remove_outgoing(g: Graph, B: Iterable[str]) -> Graph:
    """Copy of ``g`` without the arcs leaving ``B``."""
    _require_directed(g, "remove_outgoing")
    ids = g.ids(B)
    if not ids:
        return g
    return _rebuild(g, lambda u, v: u not in ids)


def remove_incoming(g: Graph, B: Iterable[str]) -> Graph:
    """Copy of ``g`` without the arcs entering ``B``."""
    _require_directed(g, "remove_incoming")
    ids = g.ids(B)
    if not ids:
        return g
    return _rebuild(g, lambda u, v: v not in ids)
