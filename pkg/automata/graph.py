"""
Graph analysis of finite automata with networkx: trimming, strongly
connected components, liveness and cycle structure.
"""
import logging
from typing import Dict, Hashable, Iterable, List, Set

import networkx as nx

from automata.base import DEAD, AutomatonSpec, require_finite

logger = logging.getLogger(__name__)


def transition_graph(spec: AutomatonSpec) -> nx.MultiDiGraph:
    """One node per state, one edge per letter (parallel letters kept as parallel edges)."""
    states = require_finite(spec, "graph analysis")
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(states)
    for state in states:
        for letter, target in spec.successors(state):
            if target is not DEAD:
                graph.add_edge(state, target, letter=letter)
    return graph


def final_states(spec: AutomatonSpec) -> Set[Hashable]:
    return {state for state in require_finite(spec, "graph analysis") if spec.is_final(state)}


def accessible_states(graph: nx.MultiDiGraph, initial: Hashable) -> Set[Hashable]:
    return nx.descendants(graph, initial) | {initial}


def coaccessible_states(graph: nx.MultiDiGraph, finals: Iterable[Hashable]) -> Set[Hashable]:
    reached: Set[Hashable] = set()
    for state in finals:
        if state not in reached:
            reached |= nx.ancestors(graph, state) | {state}
    return reached


def trim_graph(spec: AutomatonSpec, graph: nx.MultiDiGraph = None) -> nx.MultiDiGraph:
    """Subgraph of states both accessible and coaccessible."""
    graph = graph if graph is not None else transition_graph(spec)
    keep = accessible_states(graph, spec.initial) & coaccessible_states(graph, final_states(spec))
    return graph.subgraph(keep).copy()


def internal_edge_count(graph: nx.MultiDiGraph, component: Set[Hashable]) -> int:
    return graph.subgraph(component).number_of_edges()


def is_cyclic_component(graph: nx.MultiDiGraph, component: Set[Hashable]) -> bool:
    """A strongly connected component lies on a cycle iff it has an internal edge."""
    return internal_edge_count(graph, component) > 0


def is_multicyclic_component(graph: nx.MultiDiGraph, component: Set[Hashable]) -> bool:
    """
    Two distinct cycles run through a strongly connected component iff it has
    more internal edges than vertices.
    """
    return internal_edge_count(graph, component) > len(component)


def cyclic_components(graph: nx.MultiDiGraph) -> List[Set[Hashable]]:
    return [set(c) for c in nx.strongly_connected_components(graph) if is_cyclic_component(graph, c)]


def live_states(spec: AutomatonSpec, graph: nx.MultiDiGraph = None) -> Set[Hashable]:
    """
    States from which infinitely many words are accepted.

    A state is live iff it reaches, through coaccessible states, a
    coaccessible state lying on a cycle.
    """
    graph = graph if graph is not None else transition_graph(spec)
    coaccessible = graph.subgraph(coaccessible_states(graph, final_states(spec))).copy()
    on_cycle: Set[Hashable] = set()
    for component in cyclic_components(coaccessible):
        on_cycle |= component
    live = set(on_cycle)
    for state in on_cycle:
        live |= nx.ancestors(coaccessible, state)
    logger.debug(f"{len(live)} of {graph.number_of_nodes()} states are live")
    return live


def cyclic_depth(graph: nx.MultiDiGraph) -> int:
    """Largest number of cyclic components met along one path of the condensation."""
    condensed = nx.condensation(graph)
    cyclic: Dict[int, int] = {
        node: int(is_cyclic_component(graph, condensed.nodes[node]["members"]))
        for node in condensed.nodes
    }
    best: Dict[int, int] = {}
    for node in reversed(list(nx.topological_sort(condensed))):
        below = max((best[child] for child in condensed.successors(node)), default=0)
        best[node] = cyclic[node] + below
    return max(best.values(), default=0)
