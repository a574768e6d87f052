"""
Finite deterministic automata and the line-oriented DFA text format.

    # comment
    alphabet: a b
    states: q0 q1          (optional)
    initial: q0
    finals: q0 q1
    trans: q0 a q1
    trans: q1 b q0

The alphabet line fixes the letter order. Missing transitions go to Dead.
"""
import logging
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from pydantic import ValidationError

from automata.base import DEAD, AutomatonSpec, Liveness, StateRef, Target
from automata.graph import coaccessible_states, live_states, transition_graph
from models.errors import DfaSyntaxError, InputError
from models.words import Alphabet

logger = logging.getLogger(__name__)

_KEYWORDS = ("alphabet", "states", "initial", "finals", "trans")


class FiniteAutomaton(AutomatonSpec):
    """Explicit finite DFA; liveness is derived from the transition graph."""

    def __init__(self,
                 alphabet: Alphabet,
                 states: Iterable[str],
                 initial: str,
                 finals: Iterable[str],
                 transitions: Dict[Tuple[str, str], str],
                 name: str = "dfa"):
        super().__init__(alphabet, initial)
        self.name = name
        self._states: Tuple[str, ...] = tuple(states)
        self._finals: FrozenSet[str] = frozenset(finals)
        self._transitions = dict(transitions)
        self.prefix_closed = self._finals >= set(self._coaccessible_names())
        self._live = frozenset(live_states(self))
        logger.debug(f"Built automaton {name} with {len(self._states)} states, {len(self._live)} live")

    def _coaccessible_names(self) -> List[str]:
        graph = transition_graph(self)
        return list(coaccessible_states(graph, self._finals))

    @property
    def finite_states(self) -> Tuple[StateRef, ...]:
        return self._states

    @property
    def finals(self) -> FrozenSet[str]:
        return self._finals

    @property
    def transitions(self) -> Dict[Tuple[str, str], str]:
        return dict(self._transitions)

    def step(self, state: StateRef, letter: str) -> Target:
        return self._transitions.get((state, letter), DEAD)

    def is_final(self, state: StateRef) -> bool:
        return state in self._finals

    def liveness(self, state: StateRef) -> Liveness:
        return Liveness.LIVE if state in self._live else Liveness.DEAD

    def with_finals(self, finals: Iterable[str], name: Optional[str] = None) -> "FiniteAutomaton":
        return FiniteAutomaton(self.alphabet, self._states, self.initial, finals,
                               self._transitions, name=name or self.name)

    def to_text(self) -> str:
        """Serialize back to the DFA text format."""
        lines = [
            f"alphabet: {' '.join(self.alphabet.letters)}",
            f"states: {' '.join(self._states)}",
            f"initial: {self.initial}",
            f"finals: {' '.join(s for s in self._states if s in self._finals)}",
        ]
        for state in self._states:
            for letter in self.alphabet.letters:
                target = self._transitions.get((state, letter))
                if target is not None:
                    lines.append(f"trans: {state} {letter} {target}")
        return "\n".join(lines) + "\n"


def parse_dfa_file(text: str, name: str = "dfa") -> FiniteAutomaton:
    """
    Parse the DFA text format.

    Args:
        text: File contents
        name: Name given to the automaton

    Returns:
        The finite automaton with computed liveness

    Raises:
        DfaSyntaxError: On malformed lines, duplicate transitions or unknown names
    """
    letters: Optional[Tuple[str, ...]] = None
    declared_states: Optional[List[str]] = None
    initial: Optional[str] = None
    finals: Optional[List[Tuple[int, str]]] = None
    raw_transitions: List[Tuple[int, str, str, str]] = []

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, sep, rest = line.partition(":")
        keyword = keyword.strip().lower()
        if not sep or keyword not in _KEYWORDS:
            raise DfaSyntaxError(f"expected one of {', '.join(_KEYWORDS)} followed by ':'", number)
        fields = rest.split()
        if keyword == "alphabet":
            if letters is not None:
                raise DfaSyntaxError("alphabet declared twice", number)
            letters = tuple(fields)
        elif keyword == "states":
            declared_states = fields
        elif keyword == "initial":
            if len(fields) != 1:
                raise DfaSyntaxError("initial expects exactly one state", number)
            if initial is not None:
                raise DfaSyntaxError("initial state declared twice", number)
            initial = fields[0]
        elif keyword == "finals":
            finals = (finals or []) + [(number, state) for state in fields]
        else:
            if len(fields) != 3:
                raise DfaSyntaxError("trans expects: <source> <letter> <target>", number)
            raw_transitions.append((number, fields[0], fields[1], fields[2]))

    if letters is None:
        raise DfaSyntaxError("missing alphabet line")
    if initial is None:
        raise DfaSyntaxError("missing initial line")
    try:
        alphabet = Alphabet(letters=letters)
    except ValidationError as e:
        raise DfaSyntaxError(f"invalid alphabet: {e.errors()[0]['msg']}")

    # Without a states line, states appear in order of first mention
    order: List[str] = list(declared_states) if declared_states is not None else []
    known = set(order)

    def mention(state: str, number: Optional[int]) -> None:
        if state in known:
            return
        if declared_states is not None:
            raise DfaSyntaxError(f"unknown state {state!r}", number)
        order.append(state)
        known.add(state)

    if declared_states is not None and len(set(declared_states)) != len(declared_states):
        raise DfaSyntaxError("states line lists a state twice")
    mention(initial, None)
    transitions: Dict[Tuple[str, str], str] = {}
    for number, source, letter, target in raw_transitions:
        if letter not in alphabet.rank:
            raise DfaSyntaxError(f"unknown letter {letter!r}", number)
        mention(source, number)
        mention(target, number)
        if (source, letter) in transitions:
            raise DfaSyntaxError(
                f"transition {source} {letter} listed twice "
                f"(to {transitions[(source, letter)]} and {target})", number)
        transitions[(source, letter)] = target
    for number, state in finals or []:
        # without a states line a final state must also appear as initial or in a transition
        if declared_states is None and state not in known:
            raise DfaSyntaxError(f"final state {state!r} appears in no transition", number)
        mention(state, number)

    automaton = FiniteAutomaton(alphabet, order, initial, [state for _, state in finals or []], transitions,
                                name=name)
    logger.info(f"Parsed DFA {name}: {len(order)} states, {len(transitions)} transitions")
    return automaton


def load_dfa_file(path: str) -> FiniteAutomaton:
    """Read and parse a DFA file; the file stem names the automaton."""
    file_path = Path(path)
    try:
        text = file_path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"Cannot read DFA file {path}: {e.strerror or e}")
    return parse_dfa_file(text, name=file_path.stem)
