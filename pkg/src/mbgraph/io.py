"""Graph and model text formats.

Graph file::

    # comment
    directed            (or: undirected)
    t -> u              (undirected files use: t -- u)
    lonely              (a bare label declares an isolated vertex)

Model file: a graph block followed by ``domain v = k`` lines (default 2)
and one ``cpt v: p p p ...`` line per vertex, probabilities listed row by
row with the parents sorted by label, the first parent varying slowest.
"""

from __future__ import annotations

import re

import numpy as np

from .causal import ROW_SUM_TOL, DiscreteModel, Factor, cpt_scope
from .errors import BadRowSum, CycleDetected, GraphError, MissingCPT, ParseError
from .graph import Graph, GraphKind, build_graph

LABEL = r"[A-Za-z0-9_]+"
_EDGE = re.compile(rf"^({LABEL})\s*(->|--|<-)\s*({LABEL})$")
_VERTEX = re.compile(rf"^{LABEL}$")
_DOMAIN = re.compile(rf"^domain\s+({LABEL})\s*=\s*(\d+)$")
_CPT = re.compile(rf"^cpt\s+({LABEL})\s*:(.*)$")


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if stripped:
            yield lineno, len(body) - len(body.lstrip()) + 1, stripped


class _GraphBlock:
    def __init__(self):
        self.kind = None
        self.labels = {}
        self.pairs = []

    def add_label(self, label):
        self.labels.setdefault(label, len(self.labels))

    def feed(self, lineno, col, line) -> bool:
        """Consume a graph line; False when the line is not part of the graph block."""
        if self.kind is None:
            if line not in ("directed", "undirected"):
                raise ParseError("expected 'directed' or 'undirected'", lineno, col)
            self.kind = GraphKind(line)
            return True
        m = _EDGE.match(line)
        if m:
            u, arrow, v = m.groups()
            want = "->" if self.kind is GraphKind.DIRECTED else "--"
            if arrow != want:
                raise ParseError(f"{self.kind.value} graphs use '{want}', found '{arrow}'",
                                 lineno, col + line.index(arrow))
            self.add_label(u)
            self.add_label(v)
            self.pairs.append((u, v, lineno))
            return True
        if _VERTEX.match(line) and line not in ("domain", "cpt"):
            self.add_label(line)
            return True
        return False

    def build(self) -> Graph:
        if self.kind is None:
            raise ParseError("empty file: expected 'directed' or 'undirected'", 1, 1)
        seen = set()
        for u, v, lineno in self.pairs:
            if u == v:
                raise ParseError(f"self-loop on {u!r}", lineno, 1)
            key = (u, v) if self.kind is GraphKind.DIRECTED else frozenset((u, v))
            if key in seen:
                raise ParseError(f"duplicate edge {u} {v}", lineno, 1)
            seen.add(key)
        return build_graph(self.kind, list(self.labels), [(u, v) for u, v, _ in self.pairs])


def parse_graph_file(text: str) -> Graph:
    block = _GraphBlock()
    for lineno, col, line in _lines(text):
        if not block.feed(lineno, col, line):
            raise ParseError(f"cannot parse {line!r}", lineno, col)
    return block.build()


def serialize_graph(g: Graph) -> str:
    arrow = "->" if g.directed else "--"
    lines = [g.kind.value]
    edges = g.edges()
    touched = {x for e in edges for x in e}
    isolated = [label for label in g.labels if label not in touched]
    implied = dict.fromkeys(isolated + [x for e in edges for x in e])
    # declare every vertex when edge order alone would permute the labels
    lines += list(g.labels) if list(implied) != list(g.labels) else isolated
    lines += [f"{u} {arrow} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def parse_model_file(text: str) -> DiscreteModel:
    block = _GraphBlock()
    domains = {}
    cpts = {}
    in_graph = True
    for lineno, col, line in _lines(text):
        if in_graph and block.feed(lineno, col, line):
            continue
        in_graph = False
        m = _DOMAIN.match(line)
        if m:
            label, k = m.group(1), int(m.group(2))
            if k < 2:
                raise ParseError(f"domain of {label!r} needs at least two values", lineno, col)
            domains[label] = (k, lineno)
            continue
        m = _CPT.match(line)
        if m:
            label = m.group(1)
            try:
                values = [float(tok) for tok in m.group(2).split()]
            except ValueError as exc:
                raise ParseError(f"bad probability in cpt of {label!r}: {exc}", lineno, col) from None
            if label in cpts:
                raise ParseError(f"second cpt for {label!r}", lineno, col)
            cpts[label] = (values, lineno)
            continue
        raise ParseError(f"cannot parse {line!r}", lineno, col)

    try:
        g = block.build()
    except CycleDetected:
        raise
    except GraphError as exc:
        raise ParseError(str(exc)) from None
    known = set(g.labels)
    for label, (_, lineno) in list(domains.items()) + list(cpts.items()):
        if label not in known:
            raise ParseError(f"unknown vertex {label!r}", lineno, 1)
    cards = [domains.get(label, (2, None))[0] for label in g.labels]
    factors = []
    for v, label in enumerate(g.labels):
        if label not in cpts:
            raise MissingCPT(f"no cpt line for {label!r}")
        values, lineno = cpts[label]
        scope = cpt_scope(g, v)
        shape = tuple(cards[u] for u in scope)
        if len(values) != int(np.prod(shape)):
            raise ParseError(f"cpt of {label!r} needs {int(np.prod(shape))} values, got {len(values)}", lineno, 1)
        table = np.array(values).reshape(shape)
        if np.any(table < 0):
            raise ParseError(f"negative probability in cpt of {label!r}", lineno, 1)
        rows = table.sum(axis=-1)
        bad = np.abs(rows - 1.0) > ROW_SUM_TOL
        if np.any(bad):
            raise BadRowSum(f"cpt of {label!r} has a row summing to {rows[bad].ravel()[0]:.12g}", lineno, 1)
        factors.append(Factor(scope, table))
    return DiscreteModel(g, cards, factors)


def serialize_model(model: DiscreteModel) -> str:
    g = model.graph
    lines = [serialize_graph(g).rstrip("\n")]
    lines += [f"domain {label} = {k}" for label, k in zip(g.labels, model.cardinality)]
    for label, f in zip(g.labels, model.factors):
        lines.append(f"cpt {label}: " + " ".join(repr(float(x)) for x in f.table.ravel()))
    return "\n".join(lines) + "\n"
