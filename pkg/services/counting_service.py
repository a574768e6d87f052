"""
Counting service: the complexity functions u_q(n), v_q(n) and the growth
classification of finite automata.
"""
import logging
import threading
from math import comb
from typing import Callable, Dict, List, Tuple

import networkx as nx

from automata.base import DEAD, AutomatonSpec, StateRef, require_finite
from automata.graph import (accessible_states, cyclic_depth, final_states, is_multicyclic_component,
                            transition_graph, trim_graph)
from models.errors import InputError
from models.values import GrowthClass

logger = logging.getLogger(__name__)


class _Series:
    """
    Counts of words accepted from one state, extendable in length.

    ``frontier`` maps each state reachable by words of length ``len(u) - 1``
    to the number of such words.
    """

    __slots__ = ("u", "v", "frontier")

    def __init__(self, spec: AutomatonSpec, state: StateRef):
        self.frontier: Dict[StateRef, int] = {state: 1}
        first = 1 if spec.is_final(state) else 0
        self.u: List[int] = [first]
        self.v: List[int] = [first]

    def extend(self, spec: AutomatonSpec, targets: Callable[[StateRef], Tuple[StateRef, ...]], length: int) -> None:
        frontier = self.frontier
        while len(self.u) <= length:
            following: Dict[StateRef, int] = {}
            for state, multiplicity in frontier.items():
                for target in targets(state):
                    following[target] = following.get(target, 0) + multiplicity
            frontier = following
            accepted = sum(m for s, m in frontier.items() if spec.is_final(s))
            # v first: readers index v once u has grown
            self.v.append(self.v[-1] + accepted)
            self.u.append(accepted)
        self.frontier = frontier


class CountCache:
    """
    Memoized u and v for every state of one automaton.

    Series are created under an insert-if-absent discipline and only ever
    grow, so readers never observe a changed value.
    """

    def __init__(self, spec: AutomatonSpec):
        self.spec = spec
        self._series: Dict[StateRef, _Series] = {}
        self._lock = threading.Lock()
        self._targets: Dict[StateRef, Tuple[StateRef, ...]] = {}

    def targets(self, state: StateRef) -> Tuple[StateRef, ...]:
        """Non-dead successors of a state, one entry per letter."""
        found = self._targets.get(state)
        if found is None:
            found = tuple(t for _, t in self.spec.successors(state) if t is not DEAD)
            self._targets[state] = found
        return found

    def _series_for(self, state: StateRef, length: int) -> _Series:
        series = self._series.get(state)
        if series is not None and len(series.u) > length:
            return series
        with self._lock:
            series = self._series.get(state)
            if series is None:
                series = self._series.setdefault(state, _Series(self.spec, state))
                logger.debug(f"New count series for state {self.spec.label(state)}")
            if len(series.u) <= length:
                series.extend(self.spec, self.targets, length)
        return series

    def u(self, state, length: int) -> int:
        """Number of words of length exactly ``length`` accepted from ``state``."""
        if state is DEAD or length < 0:
            return 0
        return self._series_for(state, length).u[length]

    def v(self, state, length: int) -> int:
        """Number of words of length at most ``length`` accepted from ``state``."""
        if state is DEAD or length < 0:
            return 0
        return self._series_for(state, length).v[length]

    def __len__(self) -> int:
        return len(self._series)


def _check_length(n: int) -> int:
    if n < 0:
        raise InputError(f"Length must be nonnegative, got {n}")
    return n


def count_u(system, state: StateRef, n: int) -> int:
    """
    Exact number of length-n words accepted from a state.

    Args:
        system: A numeration system (anything with a ``cache``)
        state: The starting state
        n: Word length

    Returns:
        u_state(n)
    """
    return system.cache.u(state, _check_length(n))


def count_v(system, state: StateRef, n: int) -> int:
    """Exact number of words of length at most n accepted from a state."""
    return system.cache.v(state, _check_length(n))


def dyck_u_closed(m: int, n: int) -> int:
    """Words w of length n with a^m w a Dyck word: (m+1)/(n+1) C(n+1, (n-m)/2)."""
    if m < 0 or n < 0:
        raise InputError("Dyck closed forms take nonnegative arguments")
    if n < m or (n - m) % 2:
        return 0
    return (m + 1) * comb(n + 1, (n - m) // 2) // (n + 1)


def dyck_prefix_u_closed(m: int, n: int) -> int:
    """Words of length n readable from level m without going below zero."""
    if m < 0 or n < 0:
        raise InputError("Dyck closed forms take nonnegative arguments")
    if n <= m:
        return 2 ** n
    # subtract the words whose first descent below zero happens after i letters
    return 2 ** n - sum(dyck_u_closed(m, i) * 2 ** (n - i - 1) for i in range(m, n))


def balanced_u_closed(n: int) -> int:
    """Length-n words with ||w|_a - |w|_b| <= 1."""
    _check_length(n)
    if n % 2 == 0:
        return comb(n, n // 2)
    return 2 * comb(n, (n - 1) // 2)


def classify(spec: AutomatonSpec) -> GrowthClass:
    """
    Classify the growth of the language of a finite automaton.

    Exponential iff a trim strongly connected component carries two distinct
    cycles, which also decides uncountability of the adherence. L-infinity
    is uncountable iff an accessible such component holds a final state.

    Raises:
        UnsupportedOperationError: For infinite automata
    """
    require_finite(spec, "classify")
    graph = transition_graph(spec)
    trimmed = trim_graph(spec, graph)
    multicyclic = [c for c in nx.strongly_connected_components(trimmed)
                   if is_multicyclic_component(trimmed, c)]

    accessible = graph.subgraph(accessible_states(graph, spec.initial)).copy()
    finals = final_states(spec)
    linfty = any(is_multicyclic_component(accessible, c) and c & finals
                 for c in nx.strongly_connected_components(accessible))

    if multicyclic:
        result = GrowthClass(kind="Exponential", uncountable_adherence=True, uncountable_linfty=linfty)
    else:
        degree = max(cyclic_depth(trimmed) - 1, 0)
        result = GrowthClass(kind="Polynomial", degree_bound=degree,
                             uncountable_adherence=False, uncountable_linfty=linfty)
    logger.info(f"Classified {spec.name}: {result}")
    return result
