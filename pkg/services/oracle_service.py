"""
Brute-force reference implementations.

Everything here works from the automaton alone, by explicit enumeration and
naive path counting, so the results can be checked against the counting,
numeration and reals services.
"""
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, PrivateAttr

from automata.base import DEAD, AutomatonSpec, StateRef, step_word
from config import ORACLE_CONFIG
from models.errors import GuardExceededError, InputError, NotInLanguageError, PreconditionError
from models.words import Word, word_text

logger = logging.getLogger(__name__)


class EnumeratedLanguage(BaseModel):
    """All accepted words of length at most ``max_length``, in radix order."""

    model_config = ConfigDict(frozen=True)

    max_length: int
    words: Tuple[Tuple[str, ...], ...]
    by_length: Dict[int, Tuple[Tuple[str, ...], ...]]
    _index: Dict[Word, int] = PrivateAttr(default_factory=dict)

    def model_post_init(self, __context) -> None:
        self._index = {word: i for i, word in enumerate(self.words)}

    def index(self, word: Word) -> Optional[int]:
        """Position of a word in the enumeration, None when absent."""
        return self._index.get(tuple(word))

    def count(self, length: int) -> int:
        return len(self.by_length.get(length, ()))

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word) -> bool:
        return tuple(word) in self._index


def _spec_of(system) -> AutomatonSpec:
    return system.spec if hasattr(system, "spec") else system


def _check_guard(size: int, guard: int, what: str) -> None:
    if size > guard:
        raise GuardExceededError(f"Enumeration of {what} exceeds the guard of {guard} entries")


def enumerate_upto(system, n: int, guard: Optional[int] = None) -> EnumeratedLanguage:
    """
    Generate every accepted word of length at most n, breadth first.

    Words of one length are produced in lexicographic order because the
    frontier is extended letter by letter in alphabet order.

    Args:
        system: A numeration system or an automaton
        n: Maximal word length
        guard: Largest frontier or word count allowed

    Raises:
        GuardExceededError: If the enumeration would exceed the guard
    """
    if n < 0:
        raise InputError(f"Length must be nonnegative, got {n}")
    spec = _spec_of(system)
    guard = guard or ORACLE_CONFIG["enumeration_guard"]
    frontier: List[Tuple[Word, StateRef]] = [((), spec.initial)]
    words: List[Word] = []
    by_length: Dict[int, Tuple[Word, ...]] = {}
    for length in range(n + 1):
        accepted = tuple(word for word, state in frontier if spec.is_final(state))
        by_length[length] = accepted
        words.extend(accepted)
        _check_guard(len(words), guard, f"{spec.name} up to length {n}")
        if length == n:
            break
        following = []
        for word, state in frontier:
            for letter in spec.alphabet.letters:
                target = spec.step(state, letter)
                if target is not DEAD:
                    following.append((word + (letter,), target))
        _check_guard(len(following), guard, f"{spec.name} at length {length + 1}")
        frontier = following
    logger.debug(f"Enumerated {len(words)} words of {spec.name} up to length {n}")
    return EnumeratedLanguage(max_length=n, words=tuple(words), by_length=by_length)


def brute_value(system, word: Word, language: Optional[EnumeratedLanguage] = None) -> int:
    """
    Index of a word in the sorted enumeration.

    Raises:
        NotInLanguageError: If the word is not accepted
    """
    word = tuple(word)
    _spec_of(system).alphabet.check_word(word)
    if language is None or language.max_length < len(word):
        language = enumerate_upto(system, len(word))
    index = language.index(word)
    if index is None:
        raise NotInLanguageError(f"{word_text(word)} is not in the enumerated language")
    return index


class _NaiveCounter:
    """u_q(n) by memoized recursion over letters."""

    def __init__(self, spec: AutomatonSpec):
        self.spec = spec
        self.memo: Dict[Tuple[StateRef, int], int] = {}

    def u(self, state, length: int) -> int:
        if state is DEAD:
            return 0
        if length == 0:
            return 1 if self.spec.is_final(state) else 0
        key = (state, length)
        if key not in self.memo:
            self.memo[key] = sum(self.u(self.spec.step(state, letter), length - 1)
                                 for letter in self.spec.alphabet.letters)
        return self.memo[key]

    def v(self, state, length: int) -> int:
        return sum(self.u(state, i) for i in range(length + 1))


def _center_words(spec: AutomatonSpec, length: int, guard: int) -> List[Tuple[Word, StateRef]]:
    """Center words of one length with their states, in lexicographic order."""
    frontier: List[Tuple[Word, StateRef]] = []
    if spec.is_live(spec.initial):
        frontier = [((), spec.initial)]
    for _ in range(length):
        following = []
        for word, state in frontier:
            for letter in spec.alphabet.letters:
                target = spec.step(state, letter)
                if spec.is_live(target):
                    following.append((word + (letter,), target))
        _check_guard(len(following), guard, f"center words of {spec.name}")
        frontier = following
    return frontier


def alpha_fin(system, y: Word, n: int) -> Fraction:
    """
    Finite-stage approximant of the left endpoint of I_y:

        v(n-1)/v(n) + sum over center words x < y with |x| = |y| of u(q0.x, n-|y|)/v(n)

    Raises:
        PreconditionError: If n < |y| or y is not in the center
    """
    spec = _spec_of(system)
    y = tuple(y)
    if n < len(y):
        raise PreconditionError(f"n = {n} is shorter than |y| = {len(y)}")
    if not spec.is_live(step_word(spec, y)):
        raise PreconditionError(f"{word_text(y)} is not in the center of {spec.name}")
    counter = _NaiveCounter(spec)
    total = counter.v(spec.initial, n)
    if total == 0:
        raise PreconditionError(f"No word of length at most {n} is accepted")
    numerator = counter.v(spec.initial, n - 1) if n > 0 else 0
    rank = spec.alphabet.rank_of
    key = [rank(letter) for letter in y]
    for word, state in _center_words(spec, len(y), ORACLE_CONFIG["enumeration_guard"]):
        if [rank(letter) for letter in word] >= key:
            break
        numerator += counter.u(state, n - len(y))
    return Fraction(numerator, total)


def minimal_center_word(system, n: int) -> Word:
    """The lexicographically least center word of length n."""
    if n < 0:
        raise InputError(f"Length must be nonnegative, got {n}")
    spec = _spec_of(system)
    words = _center_words(spec, n, ORACLE_CONFIG["enumeration_guard"])
    if not words:
        raise PreconditionError(f"{spec.name} has no center word of length {n}")
    return words[0][0]
