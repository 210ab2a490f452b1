"""Markov blankets: classic, in a set, directional, and extended directional.

All functions accept label iterables and return label sets.  Each candidate
of a set-restricted blanket costs one linear reachability sweep, so
``markov_blanket_in`` runs in O(|C| (|V| + |A|)).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from . import kernels
from .errors import KindMismatch, NoSeparator
from .graph import Graph, VertexSet, ancestor_ids
from .separation import separated_ids


class Method(enum.Enum):
    CLASSIC = "classic"
    IN_SET = "in-set"
    DIRECTIONAL = "directional"
    DIRECTIONAL_EXTENDED = "directional-extended"


@dataclass(frozen=True)
class BlanketResult:
    """A blanket plus how it was obtained.

    ``dep`` is only populated by the extended directional blanket: the part
    of the target set that cannot be separated from the source.  ``branch``
    says whether the directed or the undirected formula was used.
    """

    blanket: VertexSet
    method: Method
    branch: str
    dep: VertexSet = frozenset()

    def sorted(self) -> list[str]:
        return sorted(self.blanket)


def _branch(g: Graph) -> str:
    return "directed" if g.directed else "undirected"


def mb_in_ids(g: Graph, B, C, E) -> set[int]:
    """Id-level blanket of ``B`` in ``C`` given ``E``.

    Candidates are ``C - B``; evidence vertices are observed and never join.
    """
    B, E = set(B), set(E)
    candidates = sorted(set(C) - B - E)
    sources = sorted(B - E)
    if not candidates or not sources:
        return set()
    cond = g.mask(E.union(candidates))
    flags = kernels.blanket_flags(g, sources, candidates, cond)
    return {v for v, f in zip(candidates, flags) if f}


def markov_blanket_in(g: Graph, B: Iterable[str], C: Iterable[str],
                      E: Iterable[str] = ()) -> BlanketResult:
    """Smallest ``M`` within ``C`` such that ``B`` is independent of the rest of ``C`` given ``M`` and ``E``."""
    ids = mb_in_ids(g, g.ids(B), g.ids(C), g.ids(E))
    return BlanketResult(g.to_labels(ids), Method.IN_SET, _branch(g))


def markov_blanket(g: Graph, B: Iterable[str], E: Iterable[str] = ()) -> BlanketResult:
    """Classic Markov blanket of ``B`` given ``E``: the blanket in ``V``."""
    ids = mb_in_ids(g, g.ids(B), range(g.n), g.ids(E))
    return BlanketResult(g.to_labels(ids), Method.CLASSIC, _branch(g))


def _universe(g: Graph, B, D, E) -> set[int]:
    # candidate region for the first blanket of the closed formula
    if g.directed:
        return ancestor_ids(g, B | D | E, closed=True)
    return set(range(g.n))


def separator_exists_ids(g: Graph, B, D, E) -> bool:
    """Whether some vertex set separates ``B`` and ``D`` given ``E``.

    Conditioning on everything in ``An(B | D | E)`` outside ``B`` and ``D`` is
    the strongest candidate for DAGs; for undirected graphs the whole
    complement is.
    """
    B, D, E = set(B), set(D), set(E)
    rest = _universe(g, B, D, E) - B - D
    return separated_ids(g, B, D, rest | E)


def directional_ids(g: Graph, B, D, E, extended: bool = False) -> tuple[set[int], set[int]]:
    """``(blanket, dep)`` for the directional blanket of ``B`` toward ``D``."""
    B, D, E = set(B), set(D), set(E)
    if not extended and not separator_exists_ids(g, B, D, E):
        raise NoSeparator("no separator between the source and target sets given the evidence")
    inner = mb_in_ids(g, B, _universe(g, B, D, E), E)
    if not extended:
        return mb_in_ids(g, D, inner, E), set()
    dep = D & inner
    return dep | mb_in_ids(g, D - dep, inner, E), dep


def directional_blanket(g: Graph, B: Iterable[str], D: Iterable[str],
                        E: Iterable[str] = ()) -> BlanketResult:
    """The minimal separator between ``B`` and ``D`` that lies nearest to ``B``.

    Raises :class:`NoSeparator` when ``B`` and ``D`` cannot be separated
    given ``E``; see :func:`directional_blanket_extended` for the total variant.
    """
    blanket, _ = directional_ids(g, g.ids(B), g.ids(D), g.ids(E))
    return BlanketResult(g.to_labels(blanket), Method.DIRECTIONAL, _branch(g))


def directional_blanket_extended(g: Graph, B: Iterable[str], D: Iterable[str],
                                 E: Iterable[str] = ()) -> BlanketResult:
    """Directional blanket that also exists when no separator does.

    The vertices of ``D`` entangled with ``B`` (``dep``) join the blanket;
    the remainder of ``D`` is handled as in :func:`directional_blanket`.
    """
    blanket, dep = directional_ids(g, g.ids(B), g.ids(D), g.ids(E), extended=True)
    return BlanketResult(g.to_labels(blanket), Method.DIRECTIONAL_EXTENDED, _branch(g),
                         dep=g.to_labels(dep))


def is_minimal_separator_ids(g: Graph, B, D, E, M) -> bool:
    B, D, E, M = set(B), set(D), set(E), set(M)
    if g.directed and not M <= ancestor_ids(g, B | D | E, closed=True):
        # its ancestral part is a strictly smaller separator, or none separates
        return False
    if not separated_ids(g, B, D, M | E):
        return False
    return not any(separated_ids(g, B, D, (M - {v}) | E) for v in M)


def is_minimal_separator(g: Graph, B: Iterable[str], D: Iterable[str],
                         E: Iterable[str], M: Iterable[str]) -> bool:
    """True iff ``M`` with ``E`` separates ``B`` and ``D`` and no strict subset does."""
    B, D, M = g.ids(B), g.ids(D), g.ids(M)
    if M & (B | D):
        raise ValueError("candidate separator must avoid both endpoint sets")
    return is_minimal_separator_ids(g, B, D, g.ids(E), M)


def _ancestral_part(g: Graph, B, D, E, M) -> set[int]:
    if not g.directed:
        raise KindMismatch("ancestral restriction is only defined on directed graphs")
    return set(M) & ancestor_ids(g, set(B) | set(D) | set(E), closed=True)


def restrict_to_ancestral(g: Graph, B: Iterable[str], D: Iterable[str],
                          E: Iterable[str], M: Iterable[str]) -> VertexSet:
    """``M`` restricted to ``An(B | D | E)``; still a d-separator whenever ``M`` is."""
    return g.to_labels(_ancestral_part(g, g.ids(B), g.ids(D), g.ids(E), g.ids(M)))


def has_separating_subset(g: Graph, B: Iterable[str], D: Iterable[str],
                          E: Iterable[str], M: Iterable[str]) -> bool:
    """Whether some subset of ``M`` d-separates ``B`` and ``D`` given ``E``."""
    B, D, E = g.ids(B), g.ids(D), g.ids(E)
    part = _ancestral_part(g, B, D, E, g.ids(M))
    return separated_ids(g, B, D, part | E)
