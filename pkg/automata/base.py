"""
Deterministic automata over an ordered alphabet.

An automaton is either finite (``finite_states`` lists every state) or
generated lazily from canonical hashable state labels. A missing
transition is reported as the ``DEAD`` sentinel rather than as a sink state.
"""
import logging
from abc import ABC, abstractmethod
from enum import Enum
from typing import Hashable, List, Optional, Tuple, Union

from models.errors import UnsupportedOperationError
from models.words import Alphabet, UPWord, Word

logger = logging.getLogger(__name__)

StateRef = Hashable


class _DeadState:
    """Absorbing sentinel returned by ``step`` when no transition exists."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Dead"

    def __reduce__(self):
        return (_DeadState, ())


DEAD = _DeadState()

Target = Union[StateRef, _DeadState]


class Liveness(str, Enum):
    """Live iff infinitely many words are accepted from the state."""

    LIVE = "Live"
    DEAD = "Dead"


class AutomatonSpec(ABC):
    """
    Base class of every automaton used by a numeration system.

    Subclasses supply ``step``, ``is_final`` and ``liveness``; the optional
    hooks let lazily generated automata answer questions that a finite
    state walk cannot settle.
    """

    name: str = "automaton"
    prefix_closed: bool = False
    # False when adh(L) provably contains no ultimately periodic word
    periodic_adherence: bool = True
    # Known answer to "is adh(L) uncountable" for builtins, None when unknown
    uncountable_adherence: Optional[bool] = None

    def __init__(self, alphabet: Alphabet, initial: StateRef):
        self.alphabet = alphabet
        self.initial = initial

    @abstractmethod
    def step(self, state: StateRef, letter: str) -> Target:
        """Target of ``letter`` from ``state``, or ``DEAD``."""

    @abstractmethod
    def is_final(self, state: StateRef) -> bool:
        ...

    @abstractmethod
    def liveness(self, state: StateRef) -> Liveness:
        ...

    @property
    def finite_states(self) -> Optional[Tuple[StateRef, ...]]:
        """Every state of a finite automaton, None for lazily generated ones."""
        return None

    @property
    def is_finite(self) -> bool:
        return self.finite_states is not None

    def label(self, state: Target) -> str:
        """Human-readable state name."""
        return str(state)

    def is_live(self, state: Target) -> bool:
        return state is not DEAD and self.liveness(state) == Liveness.LIVE

    def successors(self, state: StateRef) -> List[Tuple[str, Target]]:
        """(letter, target) pairs in alphabet order, ``DEAD`` targets included."""
        return [(letter, self.step(state, letter)) for letter in self.alphabet.letters]

    def certify_periodic(self, state: StateRef, period: Word) -> Optional[bool]:
        """
        Decide whether ``period`` repeated forever from ``state`` stays in adh(L).

        Returns None when the automaton has no certificate, so callers fall
        back to detecting a repeated state.
        """
        return None

    def closed_form_adherence(self, prefix: Word, state: StateRef, maximal: bool) -> Optional[UPWord]:
        """Least (or greatest) adherence word with ``prefix``, when known in closed form."""
        return None

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r})"


def step_from(spec: AutomatonSpec, state: Target, word: Word) -> Target:
    """Read ``word`` from ``state``; ``DEAD`` is absorbing."""
    for letter in word:
        if state is DEAD:
            return DEAD
        state = spec.step(state, letter)
    return state


def step_word(spec: AutomatonSpec, word: Word) -> Target:
    """
    State reached from the initial state by reading a word.

    Args:
        spec: The automaton
        word: Letters of the automaton's alphabet

    Returns:
        The reached state or ``DEAD``
    """
    spec.alphabet.check_word(word)
    return step_from(spec, spec.initial, word)


def accepts(spec: AutomatonSpec, word: Word) -> bool:
    state = step_word(spec, word)
    return state is not DEAD and spec.is_final(state)


def require_finite(spec: AutomatonSpec, operation: str) -> Tuple[StateRef, ...]:
    """Return the state list of a finite automaton or refuse the operation."""
    states = spec.finite_states
    if states is None:
        raise UnsupportedOperationError(f"{operation} requires a finite automaton, {spec.name} is infinite")
    return states

