"""Command-line front end; every query prints exactly one JSON object.

Exit codes: 0 success, 2 when no separator exists, 1 for usage and
parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import oracle
from .blankets import (
    directional_blanket,
    directional_blanket_extended,
    markov_blanket,
    markov_blanket_in,
    separator_exists_ids,
)
from .causal import adjustment_set, causal_effect_adjustment, causal_effect_truncated
from .errors import GraphError, NoSeparator
from .graph import ancestors, descendants, remove_outgoing
from .io import parse_graph_file, parse_model_file
from .separation import separated

KINDS = ("dsep", "mb", "mb-in", "mb-dir", "mb-dir-ext", "adjust", "effect")
EFFECT_TOL = 1e-9


class UsageError(Exception):
    pass


@dataclass
class Query:
    kind: str
    graph: str | None = None
    model: str | None = None
    B: list[str] = field(default_factory=list)
    C: list[str] = field(default_factory=list)
    D: list[str] = field(default_factory=list)
    E: list[str] = field(default_factory=list)
    X: list[str] = field(default_factory=list)
    Y: list[str] = field(default_factory=list)
    Z: list[str] = field(default_factory=list)
    oracle: bool = False
    seed: int | None = None


def _labels(values) -> list[str]:
    out = []
    for chunk in values or ():
        for tok in chunk.split(","):
            tok = tok.strip()
            if tok and tok not in out:
                out.append(tok)
    return out


def _assignment(items) -> dict[str, int]:
    out = {}
    for item in items:
        label, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"effect treatments are written label=value, got {item!r}")
        try:
            out[label] = int(value)
        except ValueError:
            raise UsageError(f"treatment value for {label!r} is not an integer") from None
    return out


def _load_graph(q: Query):
    if q.graph:
        return parse_graph_file(Path(q.graph).read_text(encoding="utf-8"))
    if q.model:
        return parse_model_file(Path(q.model).read_text(encoding="utf-8")).graph
    raise UsageError("--graph (or --model) is required")


def _check(q: Query, needed: str):
    for name in needed:
        if not getattr(q, name):
            raise UsageError(f"{q.kind} needs -{name}")


def run_query(q: Query) -> tuple[str, int]:
    """Execute ``q`` and return ``(json_text, exit_code)``."""
    try:
        payload, code = _dispatch(q), 0
    except NoSeparator as exc:
        payload, code = {"kind": q.kind, "error": "NoSeparator", "message": str(exc),
                         "separator_exists": False}, 2
    except (UsageError, GraphError, OSError, ValueError) as exc:
        payload, code = {"kind": q.kind, "error": type(exc).__name__, "message": str(exc)}, 1
    return json.dumps(payload), code


def _dispatch(q: Query) -> dict:
    if q.kind not in KINDS:
        raise UsageError(f"unknown query kind {q.kind!r}")
    if q.kind == "effect":
        return _effect(q)
    g = _load_graph(q)
    out = {"kind": q.kind}

    if q.kind == "dsep":
        _check(q, "XY")
        result = separated(g, q.X, q.Y, q.Z)
        out.update(result=result, method="d-separation" if g.directed else "separation",
                   separator_exists=result)
        if q.oracle:
            check = {"agrees": oracle.is_d_separated_bruteforce(g, q.X, q.Y, q.Z) == result}
            if q.seed is not None and result:
                joint = oracle.exact_joint(oracle.sample_model(g, q.seed))
                check["ci_gap"] = oracle.ci_gap(joint, q.X, q.Y, q.Z)
            out["oracle"] = check
        return out

    if q.kind in ("mb", "mb-in"):
        _check(q, "BC" if q.kind == "mb-in" else "B")
        if q.kind == "mb":
            res = markov_blanket(g, q.B, q.E)
            universe = g.labels
        else:
            res = markov_blanket_in(g, q.B, q.C, q.E)
            universe = q.C
        out.update(result=sorted(res.blanket), method=res.method.value, branch=res.branch,
                   separator_exists=True)
        if q.oracle:
            out["oracle"] = {"agrees": oracle.mb_in_set_bruteforce(g, q.B, universe, q.E) == res.blanket}
        return out

    if q.kind in ("mb-dir", "mb-dir-ext"):
        _check(q, "BD")
        exists = separator_exists_ids(g, g.ids(q.B), g.ids(q.D), g.ids(q.E))
        if q.kind == "mb-dir":
            res = directional_blanket(g, q.B, q.D, q.E)
            result = sorted(res.blanket)
        else:
            res = directional_blanket_extended(g, q.B, q.D, q.E)
            result = {"dep": sorted(res.dep), "blanket": sorted(res.blanket)}
        out.update(result=result, method=res.method.value, branch=res.branch, separator_exists=exists)
        if q.oracle:
            agrees = None
            if exists:
                agrees = oracle.directional_bruteforce(g, q.B, q.D, q.E) == res.blanket
            out["oracle"] = {"agrees": agrees}
        return out

    # adjust
    _check(q, "BD")
    S = adjustment_set(g, q.B, q.D)
    out.update(result=sorted(S), method="back-door", separator_exists=True)
    if q.oracle:
        out["oracle"] = {"agrees": _adjust_oracle(g, q.B, q.D) == S}
    return out


def _adjust_oracle(g, B, D):
    target = (descendants(g, B) & ancestors(g, D)) | set(D)
    return oracle.directional_bruteforce(remove_outgoing(g, B), target, B)


def _effect(q: Query) -> dict:
    if not q.model:
        raise UsageError("effect needs --model")
    _check(q, "BD")
    model = parse_model_file(Path(q.model).read_text(encoding="utf-8"))
    b = _assignment(q.B)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        dist = causal_effect_adjustment(model, list(b), b, q.D)
    S = adjustment_set(model.graph, list(b), q.D)
    out = {"kind": "effect", "result": dist.to_dict(), "method": "back-door-adjustment",
           "adjustment_set": sorted(S), "separator_exists": True}
    if caught:
        out["warnings"] = [str(w.message) for w in caught]
    if q.oracle:
        ref = causal_effect_truncated(model, list(b), b, q.D)
        gap = float(np.max(np.abs(ref.table - dist.table))) if dist.table.size else 0.0
        out["oracle"] = {"agrees": gap <= EFFECT_TOL, "max_abs_diff": gap}
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mbgraph", description="Markov blanket and d-separation queries.")
    sub = parser.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    for kind in KINDS:
        p = sub.add_parser(kind)
        p.add_argument("--graph")
        p.add_argument("--model")
        for flag in "BCDEXYZ":
            p.add_argument(f"-{flag}", action="append", metavar="LABELS",
                           help="comma-separated labels; repeatable")
        p.add_argument("--oracle", action="store_true",
                       help="cross-check against brute force (at most 12 vertices)")
        p.add_argument("--seed", type=int, help="seed for oracle model sampling")
    return parser


def parse_args(argv) -> Query:
    ns = build_parser().parse_args(argv)
    return Query(kind=ns.kind, graph=ns.graph, model=ns.model,
                 **{f: _labels(getattr(ns, f)) for f in "BCDEXYZ"},
                 oracle=ns.oracle, seed=ns.seed)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        q = parse_args(argv)
    except UsageError as exc:
        print(json.dumps({"error": "UsageError", "message": str(exc)}))
        return 1
    text, code = run_query(q)
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
