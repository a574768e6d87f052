"""
Built-in numeration languages.

Infinite automata are generated lazily; their states are canonical labels
(integers for the Dyck, rational base and balanced languages, tagged pairs
for the half-prefix language) so counting caches can key on them.
"""
import logging
from typing import Callable, Dict, List, Optional, Tuple

from automata.base import DEAD, AutomatonSpec, Liveness, StateRef, Target, step_from
from automata.dfa_file import FiniteAutomaton
from automata.graph import coaccessible_states, transition_graph
from config import LANGUAGE_CONFIG
from models.errors import InputError, UnsupportedOperationError
from models.words import Alphabet, UPWord, Word

logger = logging.getLogger(__name__)

AB = Alphabet(letters=("a", "b"))


class FullBinary(AutomatonSpec):
    """{a, b}*: one final live state looping on both letters."""

    name = "binary"
    prefix_closed = True
    uncountable_adherence = True

    def __init__(self):
        super().__init__(AB, "q0")

    @property
    def finite_states(self) -> Tuple[StateRef, ...]:
        return ("q0",)

    def step(self, state: StateRef, letter: str) -> Target:
        return "q0"

    def is_final(self, state: StateRef) -> bool:
        return True

    def liveness(self, state: StateRef) -> Liveness:
        return Liveness.LIVE


class IntegerBase(AutomatonSpec):
    """Base-b expansions without leading zeros: {1..b-1}{0..b-1}* and the empty word."""

    prefix_closed = True
    uncountable_adherence = True

    def __init__(self, base: int):
        if base < 2:
            raise InputError(f"Integer base must be at least 2, got {base}")
        if base > LANGUAGE_CONFIG["max_base"]:
            raise InputError(f"Integer base must be at most {LANGUAGE_CONFIG['max_base']}, got {base}")
        super().__init__(Alphabet(letters=tuple(str(d) for d in range(base))), "init")
        self.base = base
        self.name = f"base{base}"

    @property
    def finite_states(self) -> Tuple[StateRef, ...]:
        return ("init", "inner")

    def step(self, state: StateRef, letter: str) -> Target:
        if state == "init" and letter == "0":
            return DEAD
        return "inner"

    def is_final(self, state: StateRef) -> bool:
        return True

    def liveness(self, state: StateRef) -> Liveness:
        return Liveness.LIVE


class DyckPrefix(AutomatonSpec):
    """
    Prefixes of well-parenthesized words: ``a`` opens, ``b`` closes.

    State m is the current nesting level.
    """

    name = "dyck"
    prefix_closed = True
    uncountable_adherence = True

    def __init__(self):
        super().__init__(AB, 0)

    def step(self, state: StateRef, letter: str) -> Target:
        if letter == "a":
            return state + 1
        return state - 1 if state > 0 else DEAD

    def is_final(self, state: StateRef) -> bool:
        return True

    def liveness(self, state: StateRef) -> Liveness:
        return Liveness.LIVE

    def label(self, state: Target) -> str:
        return "Dead" if state is DEAD else f"p{state}"

    def drift(self, state: StateRef, period: Word) -> Optional[int]:
        """Level change over one period, None when the period leaves the language."""
        end = step_from(self, state, period)
        return None if end is DEAD else end - state

    def certify_periodic(self, state: StateRef, period: Word) -> Optional[bool]:
        # no negative level in one period and no net descent keeps every later period alive
        drift = self.drift(state, period)
        return drift is not None and drift >= 0

    def closed_form_adherence(self, prefix: Word, state: StateRef, maximal: bool) -> Optional[UPWord]:
        if not maximal:
            return UPWord(preperiod=prefix, period=("a",))
        return UPWord(preperiod=prefix + ("b",) * state, period=("a", "b"))


class DyckProper(DyckPrefix):
    """The Dyck language itself: only level 0 is final."""

    name = "dyck-proper"
    prefix_closed = False

    def is_final(self, state: StateRef) -> bool:
        return state == 0

    def label(self, state: Target) -> str:
        return "Dead" if state is DEAD else f"d{state}"


class RationalBase32(AutomatonSpec):
    """
    Rational base 3/2 representations: from n, digit a leads to (3n + a) / 2
    when that is an integer. Only digit 2 leaves the initial state 0.
    """

    name = "rational32"
    prefix_closed = True
    periodic_adherence = False
    uncountable_adherence = True

    def __init__(self):
        super().__init__(Alphabet(letters=("0", "1", "2")), 0)

    def step(self, state: StateRef, letter: str) -> Target:
        digit = int(letter)
        if state == 0:
            return 1 if digit == 2 else DEAD
        total = 3 * state + digit
        return total // 2 if total % 2 == 0 else DEAD

    def is_final(self, state: StateRef) -> bool:
        return True

    def liveness(self, state: StateRef) -> Liveness:
        return Liveness.LIVE

    @staticmethod
    def extreme_digit(state: StateRef, maximal: bool) -> int:
        """Smallest (largest) digit allowed from a state."""
        if state == 0:
            return 2
        if state % 2 == 0:
            return 2 if maximal else 0
        return 1


class BalancedDiff(AutomatonSpec):
    """
    Words whose letter counts differ by at most one. State d is |w|_a - |w|_b.

    Not prefix-closed: every word is a prefix of the language, so adh(L) is
    the whole of {a, b}^omega.
    """

    name = "balanced"
    prefix_closed = False
    uncountable_adherence = True

    def __init__(self):
        super().__init__(AB, 0)

    def step(self, state: StateRef, letter: str) -> Target:
        return state + 1 if letter == "a" else state - 1

    def is_final(self, state: StateRef) -> bool:
        return -1 <= state <= 1

    def liveness(self, state: StateRef) -> Liveness:
        return Liveness.LIVE

    def certify_periodic(self, state: StateRef, period: Word) -> Optional[bool]:
        return True

    def closed_form_adherence(self, prefix: Word, state: StateRef, maximal: bool) -> Optional[UPWord]:
        return UPWord(preperiod=prefix, period=("b",) if maximal else ("a",))


class HalfPrefixDemo(AutomatonSpec):
    """
    Words beginning with a^floor(|w|/2): exponential, yet adh(L) = {a^omega}.

    ("I", k) is reached by a^k; ("Q", k) means k more letters may follow.
    """

    name = "half-prefix"
    prefix_closed = True
    uncountable_adherence = False

    def __init__(self):
        super().__init__(AB, ("I", 0))

    def step(self, state: StateRef, letter: str) -> Target:
        kind, k = state
        if kind == "I":
            return ("I", k + 1) if letter == "a" else ("Q", k)
        return ("Q", k - 1) if k > 0 else DEAD

    def is_final(self, state: StateRef) -> bool:
        return True

    def liveness(self, state: StateRef) -> Liveness:
        return Liveness.LIVE if state[0] == "I" else Liveness.DEAD

    def label(self, state: Target) -> str:
        return "Dead" if state is DEAD else f"{state[0]}{state[1]}"

    def certify_periodic(self, state: StateRef, period: Word) -> Optional[bool]:
        return state[0] == "I" and all(letter == "a" for letter in period)

    def closed_form_adherence(self, prefix: Word, state: StateRef, maximal: bool) -> Optional[UPWord]:
        return UPWord(preperiod=prefix, period=("a",))


_BUILTINS: Dict[str, Callable[[], AutomatonSpec]] = {
    "binary": FullBinary,
    "dyck": DyckPrefix,
    "dyck-proper": DyckProper,
    "rational32": RationalBase32,
    "balanced": BalancedDiff,
    "half-prefix": HalfPrefixDemo,
}

BUILTIN_DESCRIPTIONS: Dict[str, str] = {
    "binary": "all words over {a,b}",
    "base<b>": "integer base b >= 2, digits 0..b-1, no leading zero",
    "dyck": "prefixes of Dyck words (a opens, b closes)",
    "dyck-proper": "Dyck words",
    "rational32": "rational base 3/2 representations",
    "balanced": "words with ||w|_a - |w|_b| <= 1 (not prefix-closed)",
    "half-prefix": "words beginning with a^floor(|w|/2)",
}


def builtin_names() -> List[str]:
    return list(BUILTIN_DESCRIPTIONS)


def get_builtin(name: str) -> AutomatonSpec:
    """
    Build a builtin automaton by name.

    Args:
        name: One of the registered names, or ``base<b>`` such as ``base10``

    Returns:
        A fresh automaton
    """
    key = name.strip().lower()
    if key in _BUILTINS:
        return _BUILTINS[key]()
    if key.startswith("base") and key[4:].isdigit():
        if len(key[4:].lstrip("0")) > len(str(LANGUAGE_CONFIG["max_base"])):
            raise InputError(f"Integer base must be at most {LANGUAGE_CONFIG['max_base']}, got {key[4:]}")
        return IntegerBase(int(key[4:]))
    raise InputError(f"Unknown language {name!r}; choose from {', '.join(builtin_names())}")


def prefix_closure(spec: AutomatonSpec) -> AutomatonSpec:
    """
    Automaton of pref(L).

    Finite automata make every coaccessible state final; the builtins that
    are not prefix-closed have known closures.
    """
    if spec.prefix_closed:
        return spec
    if isinstance(spec, FiniteAutomaton):
        finals = coaccessible_states(transition_graph(spec), spec.finals)
        return spec.with_finals(finals, name=f"pref({spec.name})")
    if isinstance(spec, DyckProper):
        return DyckPrefix()
    if isinstance(spec, BalancedDiff):
        return FullBinary()
    raise UnsupportedOperationError(f"No prefix closure known for {spec.name}")
