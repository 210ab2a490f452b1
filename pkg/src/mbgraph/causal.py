"""Discrete models, exact inference and back-door adjustment.

The adjustment set for the effect of ``B`` on ``D`` is the directional
blanket of ``T = (de(B) & an(D)) | D`` toward ``B`` in the graph without the
arcs leaving ``B``.  The effect is then

    P(D | do(B=b)) = sum_s P(D | S=s, B=b) P(S=s)

evaluated by variable elimination.  :func:`causal_effect_truncated` computes
the same quantity from the truncated factorization and serves as reference.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .blankets import directional_ids
from .errors import BadRowSum, KindMismatch, ZeroEvidenceProbability
from .graph import Graph, VertexSet, ancestor_ids, descendant_ids, remove_incoming, remove_outgoing

ROW_SUM_TOL = 1e-12


class PositivityWarning(UserWarning):
    """An adjustment stratum has positive weight but zero probability jointly with the treatment."""


@dataclass(frozen=True)
class Factor:
    scope: tuple[int, ...]
    table: np.ndarray


@dataclass(frozen=True)
class Distribution:
    """Dense probability table; axis ``k`` indexes ``variables[k]``."""

    variables: tuple[str, ...]
    table: np.ndarray

    @property
    def cardinalities(self) -> tuple[int, ...]:
        return self.table.shape

    def __getitem__(self, assignment: Mapping[str, int]) -> float:
        return float(self.table[tuple(assignment[v] for v in self.variables)])

    def to_dict(self) -> dict:
        return {
            "variables": list(self.variables),
            "cardinalities": list(self.cardinalities),
            "probabilities": [float(x) for x in self.table.ravel()],
        }


class DiscreteModel:
    """A graph with finite-domain variables and its factors.

    Directed models carry one CPT per vertex whose scope is the parents
    sorted by label followed by the vertex itself.  Undirected models carry
    non-negative potentials over cliques; the normalizer stays implicit.
    """

    def __init__(self, graph: Graph, cardinality: Sequence[int], factors: Sequence[Factor]):
        self.graph = graph
        self.cardinality = tuple(int(k) for k in cardinality)
        self.factors = tuple(factors)
        if len(self.cardinality) != graph.n:
            raise ValueError("one cardinality per vertex is required")
        if any(k < 2 for k in self.cardinality):
            raise ValueError("domains need at least two values")
        for f in self.factors:
            if f.table.shape != tuple(self.cardinality[v] for v in f.scope):
                raise ValueError(f"factor over {self._names(f.scope)} has shape {f.table.shape}")
            if np.any(f.table < 0):
                raise ValueError(f"negative entry in factor over {self._names(f.scope)}")
        if graph.directed:
            self._check_cpts()
        else:
            self._check_cliques()

    def _names(self, ids):
        return [self.graph.labels[i] for i in ids]

    def _check_cpts(self):
        g = self.graph
        if len(self.factors) != g.n:
            raise ValueError("directed models need exactly one CPT per vertex")
        for v, f in enumerate(self.factors):
            if f.scope != cpt_scope(g, v):
                raise ValueError(f"CPT of {g.labels[v]!r} has scope {self._names(f.scope)}")
            rows = f.table.sum(axis=-1)
            if np.any(np.abs(rows - 1.0) > ROW_SUM_TOL):
                raise BadRowSum(f"CPT of {g.labels[v]!r} has a row summing to {rows.ravel()[np.argmax(np.abs(rows - 1.0))]!r}")

    def _check_cliques(self):
        g = self.graph
        for f in self.factors:
            for a, b in itertools.combinations(f.scope, 2):
                if b not in g.succ[a]:
                    raise ValueError(f"potential scope {self._names(f.scope)} is not a clique")

    @classmethod
    def from_cpts(cls, graph: Graph, cpts: Mapping[str, np.ndarray],
                  cardinality: Mapping[str, int] | None = None) -> "DiscreteModel":
        """Build a directed model from ``{label: array}``.

        Each array has one axis per parent (sorted by label) and a last axis
        for the vertex.  Cardinalities default to the array shapes.
        """
        if not graph.directed:
            raise KindMismatch("CPTs need a directed graph")
        cards = [0] * graph.n
        tables = [None] * graph.n
        for label, table in cpts.items():
            tables[graph.id(label)] = np.asarray(table, dtype=float)
        for v, t in enumerate(tables):
            if t is None:
                raise ValueError(f"missing CPT for {graph.labels[v]!r}")
            cards[v] = t.shape[-1]
        if cardinality:
            for label, k in cardinality.items():
                cards[graph.id(label)] = k
        return cls(graph, cards, [Factor(cpt_scope(graph, v), tables[v]) for v in range(graph.n)])

    @classmethod
    def from_potentials(cls, graph: Graph, cardinality: Mapping[str, int],
                        potentials: Iterable[tuple[Sequence[str], np.ndarray]]) -> "DiscreteModel":
        cards = [cardinality[label] for label in graph.labels]
        factors = [Factor(tuple(graph.id(x) for x in scope), np.asarray(t, dtype=float))
                   for scope, t in potentials]
        return cls(graph, cards, factors)

    def cpt(self, label: str) -> np.ndarray:
        return self.factors[self.graph.id(label)].table


def cpt_scope(g: Graph, v: int) -> tuple[int, ...]:
    return tuple(sorted(g.pred[v], key=lambda p: g.labels[p])) + (v,)


def _einsum(factors: Sequence[Factor], keep: Sequence[int]) -> Factor:
    """Multiply factors and sum out everything outside ``keep``."""
    local = {}
    args = []
    for f in factors:
        args.append(f.table)
        args.append([local.setdefault(v, len(local)) for v in f.scope])
    for v in keep:
        local.setdefault(v, len(local))
    if len(local) > 52:
        raise ValueError("too many variables in a single elimination step")
    if not factors:
        return Factor(tuple(keep), np.ones(()))
    args.append([local[v] for v in keep])
    return Factor(tuple(keep), np.einsum(*args, optimize=False))


def _reduce(f: Factor, evidence: Mapping[int, int]) -> Factor:
    if not any(v in evidence for v in f.scope):
        return f
    index = tuple(evidence.get(v, slice(None)) for v in f.scope)
    return Factor(tuple(v for v in f.scope if v not in evidence), f.table[index])


def _min_degree_order(factors: list[Factor], eliminate: set[int]) -> list[int]:
    nbrs = {v: set() for v in eliminate}
    for f in factors:
        for v in f.scope:
            if v in nbrs:
                nbrs[v].update(f.scope)
    for v in nbrs:
        nbrs[v].discard(v)
    order = []
    remaining = set(eliminate)
    while remaining:
        v = min(remaining, key=lambda x: (len(nbrs[x]), x))
        order.append(v)
        remaining.discard(v)
        for a in nbrs[v]:
            if a in nbrs:
                nbrs[a].discard(v)
                nbrs[a].update(u for u in nbrs[v] if u != a)
    return order


def _validate_assignment(model: DiscreteModel, assignment: Mapping[str, int]) -> dict[int, int]:
    g = model.graph
    out = {}
    for label, value in assignment.items():
        v = g.id(label)
        if not 0 <= int(value) < model.cardinality[v]:
            raise ValueError(f"value {value!r} outside the domain of {label!r}")
        out[v] = int(value)
    return out


def marginal(model: DiscreteModel, query_vars: Sequence[str],
             evidence: Mapping[str, int] | None = None, order: Sequence[str] | None = None) -> Distribution:
    """Exact ``P(query_vars | evidence)`` by variable elimination.

    The elimination order defaults to the min-degree heuristic; ``order``
    overrides it (it must list exactly the eliminated variables).
    """
    g = model.graph
    query = [g.id(x) for x in query_vars]
    if len(set(query)) != len(query):
        raise ValueError("query variables must be distinct")
    ev = _validate_assignment(model, evidence or {})
    if set(query) & set(ev):
        raise ValueError("query and evidence variables overlap")
    factors = [_reduce(f, ev) for f in model.factors]
    covered = {v for f in model.factors for v in f.scope}
    factors += [Factor((v,), np.ones(model.cardinality[v])) for v in query if v not in covered]
    eliminate = set(range(g.n)) - set(query) - set(ev)
    if order is None:
        elim_order = _min_degree_order(factors, eliminate)
    else:
        elim_order = [g.id(x) for x in order]
        if set(elim_order) != eliminate or len(elim_order) != len(eliminate):
            raise ValueError("elimination order must list every non-query, non-evidence variable once")
    for v in elim_order:
        touching = [f for f in factors if v in f.scope]
        factors = [f for f in factors if v not in f.scope]
        scope = sorted({u for f in touching for u in f.scope} - {v})
        factors.append(_einsum(touching, scope))
    result = _einsum(factors, query)
    total = result.table.sum()
    if total <= 0:
        raise ZeroEvidenceProbability("the evidence has probability zero")
    return Distribution(tuple(query_vars), result.table / total)


def adjustment_set(g: Graph, B: Iterable[str], D: Iterable[str]) -> VertexSet:
    """Back-door adjustment set for the effect of ``B`` on ``D``.

    Raises :class:`~mbgraph.errors.NoSeparator` when this recipe cannot
    separate the target side from ``B``; that does not prove the effect is
    unidentifiable.
    """
    if not g.directed:
        raise KindMismatch("adjustment sets need a directed graph")
    B, D = g.ids(B), g.ids(D)
    if B & D:
        raise ValueError("treatment and outcome sets must be disjoint")
    target = (descendant_ids(g, B) & ancestor_ids(g, D)) | D
    cut = remove_outgoing(g, g.to_labels(B))
    S, _ = directional_ids(cut, target, B, set())
    return g.to_labels(S)


def _treatment(model: DiscreteModel, B: Iterable[str], b_assignment: Mapping[str, int]) -> dict[str, int]:
    B = set(B)
    if set(b_assignment) != B:
        raise ValueError("the assignment must give a value to every treatment variable")
    _validate_assignment(model, b_assignment)
    return dict(b_assignment)


def causal_effect_adjustment(model: DiscreteModel, B: Iterable[str], b_assignment: Mapping[str, int],
                             D: Sequence[str]) -> Distribution:
    """``P(D | do(B=b))`` through the back-door formula.

    Strata with ``P(S=s) > 0`` but ``P(S=s, B=b) = 0`` are skipped with a
    :class:`PositivityWarning` and the remaining weight is renormalized.
    """
    b = _treatment(model, B, b_assignment)
    D = list(D)
    S = sorted(adjustment_set(model.graph, b, D))
    treat = sorted(b)
    joint = marginal(model, D + S + treat).table
    nd, ns = len(D), len(S)
    joint = joint[(Ellipsis,) + tuple(b[x] for x in treat)]  # axes: D..., S...
    p_s = joint.sum(axis=tuple(range(nd))) if nd else joint
    p_s_total = marginal(model, S).table if S else np.ones(())
    out = np.zeros(joint.shape[:nd])
    weight = 0.0
    skipped = 0
    for s in np.ndindex(*p_s_total.shape):
        w = p_s_total[s]
        if w <= 0:
            continue
        if p_s[s] <= 0:
            skipped += 1
            continue
        out += joint[(Ellipsis,) + s] / p_s[s] * w
        weight += w
    if weight <= 0:
        raise ZeroEvidenceProbability("every adjustment stratum has zero probability jointly with the treatment")
    if skipped:
        warnings.warn(f"{skipped} adjustment strata are not estimable from this model "
                      "(zero probability jointly with the treatment)", PositivityWarning, stacklevel=2)
    return Distribution(tuple(D), out / weight)


def causal_effect_truncated(model: DiscreteModel, B: Iterable[str], b_assignment: Mapping[str, int],
                            D: Sequence[str]) -> Distribution:
    """``P(D | do(B=b))`` from the truncated factorization.

    Arcs into ``B`` are removed and each treatment CPT becomes a point mass
    on its assigned value.
    """
    if not model.graph.directed:
        raise KindMismatch("interventions need a directed model")
    b = _treatment(model, B, b_assignment)
    g = model.graph
    cut = remove_incoming(g, list(b))
    factors = []
    for v in range(g.n):
        label = g.labels[v]
        if label in b:
            t = np.zeros(model.cardinality[v])
            t[b[label]] = 1.0
            factors.append(Factor((v,), t))
        else:
            factors.append(model.factors[v])
    mutilated = DiscreteModel(cut, model.cardinality, factors)
    return marginal(mutilated, list(D))
