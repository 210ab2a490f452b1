"""Markov blankets in a set, directional Markov blankets and (d-)separation.

Quick tour::

    >>> from mbgraph import build_graph, markov_blanket_in, directional_blanket
    >>> g = build_graph("directed", "tuvw", [("t", "u"), ("t", "v"), ("u", "w"), ("v", "w")])
    >>> sorted(markov_blanket_in(g, {"t"}, {"t", "u", "w"}).blanket)
    ['u', 'w']
"""

from .blankets import (
    BlanketResult,
    Method,
    directional_blanket,
    directional_blanket_extended,
    has_separating_subset,
    is_minimal_separator,
    markov_blanket,
    markov_blanket_in,
    restrict_to_ancestral,
)
from .causal import (
    DiscreteModel,
    Distribution,
    adjustment_set,
    causal_effect_adjustment,
    causal_effect_truncated,
    marginal,
)
from .errors import *  # noqa: F401,F403
from .graph import (
    Graph,
    GraphKind,
    VertexSet,
    ancestors,
    ancestral_closure,
    build_graph,
    descendants,
    parents,
    remove_incoming,
    remove_outgoing,
)
from .io import parse_graph_file, parse_model_file, serialize_graph, serialize_model
from .separation import is_active_trail, is_d_separated, is_separated, reachable, separated

__version__ = "0.1.0"
