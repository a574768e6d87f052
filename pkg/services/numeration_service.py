"""
Abstract numeration systems: genealogical comparison, the value of a word
and its inverse.
"""
import logging
import threading
from typing import Optional

from automata.base import DEAD, AutomatonSpec, step_word
from models.errors import InputError, NotInLanguageError, PreconditionError
from models.values import Comparison
from models.words import Word, word_text
from services.counting_service import CountCache
from services.ratio_service import RatioProvider, RatioStrategy, provider_for

logger = logging.getLogger(__name__)


class NumerationSystem:
    """An infinite language with a total letter order, its count cache and its ratio provider."""

    def __init__(self, spec: AutomatonSpec, name: Optional[str] = None,
                 strategy: Optional[RatioStrategy] = None):
        """
        Initialize the numeration system.

        Args:
            spec: Automaton of the language
            name: Display name, defaults to the automaton name
            strategy: Force a ratio strategy instead of the automatic choice
        """
        if not spec.is_live(spec.initial):
            raise PreconditionError(f"The language of {spec.name} is finite; a numeration system needs an infinite one")
        self.spec = spec
        self.name = name or spec.name
        self.cache = CountCache(spec)
        self.strategy = strategy
        self._provider: Optional[RatioProvider] = None
        self._provider_lock = threading.Lock()
        logger.info(f"Initialized numeration system {self.name}")

    @property
    def alphabet(self):
        return self.spec.alphabet

    @property
    def ratio_provider(self) -> RatioProvider:
        if self._provider is None:
            with self._provider_lock:
                if self._provider is None:
                    self._provider = provider_for(self, self.strategy)
        return self._provider

    def parse_word(self, text: str) -> Word:
        return self.spec.alphabet.parse_word(text)

    def __repr__(self) -> str:
        return f"NumerationSystem({self.name!r})"


def radix_cmp(system: NumerationSystem, first: Word, second: Word) -> Comparison:
    """Genealogical order: shorter first, then lexicographic by letter rank."""
    if len(first) != len(second):
        return Comparison.LESS if len(first) < len(second) else Comparison.GREATER
    rank = system.alphabet.rank_of
    for x, y in zip(first, second):
        if x != y:
            return Comparison.LESS if rank(x) < rank(y) else Comparison.GREATER
    return Comparison.EQUAL


def value_of(system: NumerationSystem, word: Word) -> int:
    """
    Index of a word in the genealogically ordered language.

    Args:
        system: The numeration system
        word: A word of the language

    Returns:
        val(w), counting from 0

    Raises:
        NotInLanguageError: If the word is not accepted
    """
    spec, cache = system.spec, system.cache
    end = step_word(spec, word)
    if end is DEAD or not spec.is_final(end):
        raise NotInLanguageError(f"{word_text(word)} is not in the language of {system.name}")

    length = len(word)
    total = cache.v(spec.initial, length - 1)
    state = spec.initial
    for i, letter in enumerate(word):
        remaining = length - i - 1
        for sibling, target in spec.successors(state):
            if sibling == letter:
                state = target
                break
            total += cache.u(target, remaining)
    return total


def _shortest_length_above(system: NumerationSystem, n: int) -> int:
    """Least l with v(q0, l) > n, by doubling then bisection."""
    cache, initial = system.cache, system.spec.initial
    if cache.v(initial, 0) > n:
        return 0
    low, high = 0, 1
    while cache.v(initial, high) <= n:
        low, high = high, high * 2
    while high - low > 1:
        middle = (low + high) // 2
        if cache.v(initial, middle) > n:
            high = middle
        else:
            low = middle
    return high


def word_at(system: NumerationSystem, n: int) -> Word:
    """
    The word of value n.

    Raises:
        InputError: If n is negative
    """
    if n < 0:
        raise InputError(f"Values are nonnegative, got {n}")
    spec, cache = system.spec, system.cache
    length = _shortest_length_above(system, n)
    offset = n - cache.v(spec.initial, length - 1)
    letters = []
    state = spec.initial
    for remaining in range(length - 1, -1, -1):
        for letter, target in spec.successors(state):
            block = cache.u(target, remaining)
            if offset < block:
                letters.append(letter)
                state = target
                break
            offset -= block
    word = tuple(letters)
    logger.debug(f"word_at({n}) = {word_text(word)}")
    return word
