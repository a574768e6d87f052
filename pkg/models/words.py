"""
Alphabets, finite words and ultimately periodic infinite words.

Finite words are plain tuples of letter tokens so they hash cheaply and can
be used as dictionary keys by the counting and enumeration code.
"""
import re
from itertools import chain, cycle, islice
from fractions import Fraction
from math import gcd
from typing import Dict, Iterator, Optional, Tuple

from pydantic import BaseModel, ConfigDict, PrivateAttr, field_validator

from models.errors import InputError

Word = Tuple[str, ...]

EMPTY_WORD_TEXT = "ε"

# Accepted spellings of the empty word on input
_EMPTY_SPELLINGS = {"", "ε", "eps", "epsilon", "-"}

# "u(v)^w" or "u(v)^ω"
UPWORD_PATTERN = re.compile(r"^\s*(?P<pre>[^()]*)\((?P<period>[^()]+)\)\s*\^\s*(?:w|ω)\s*$")


def word_text(word: Word) -> str:
    """Render a word: single-character letters are concatenated, longer tokens space-separated."""
    if not word:
        return EMPTY_WORD_TEXT
    if all(len(letter) == 1 for letter in word):
        return "".join(word)
    return " ".join(word)


class Alphabet(BaseModel):
    """Totally ordered alphabet; the order of ``letters`` is the letter order used everywhere."""

    model_config = ConfigDict(frozen=True)

    letters: Tuple[str, ...]
    _rank: Dict[str, int] = PrivateAttr(default_factory=dict)

    @field_validator("letters")
    @classmethod
    def validate_letters(cls, letters):
        """Letters must be distinct printable tokens without structural characters."""
        if not letters:
            raise ValueError("Alphabet cannot be empty")
        if len(set(letters)) != len(letters):
            raise ValueError("Alphabet letters must be distinct")
        for letter in letters:
            if not letter or any(ch.isspace() for ch in letter) or any(ch in "()^" for ch in letter):
                raise ValueError(f"Invalid letter token: {letter!r}")
        return letters

    def model_post_init(self, __context) -> None:
        self._rank = {letter: index for index, letter in enumerate(self.letters)}

    @property
    def rank(self) -> Dict[str, int]:
        """Mapping letter -> index 0..k-1."""
        return self._rank

    @property
    def single_characters(self) -> bool:
        return all(len(letter) == 1 for letter in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def rank_of(self, letter: str) -> int:
        try:
            return self.rank[letter]
        except KeyError:
            raise InputError(f"Unknown letter {letter!r} (alphabet: {' '.join(self.letters)})")

    def check_word(self, word: Word) -> Word:
        for letter in word:
            self.rank_of(letter)
        return word

    def parse_word(self, text: str) -> Word:
        """
        Parse a word literal.

        Args:
            text: Either a run of single-character letters, or whitespace separated tokens

        Returns:
            The word as a tuple of letters
        """
        stripped = text.strip()
        if stripped in _EMPTY_SPELLINGS:
            return ()
        if any(ch.isspace() for ch in stripped):
            word = tuple(stripped.split())
        elif self.single_characters:
            word = tuple(stripped)
        elif stripped in self.rank:
            word = (stripped,)
        else:
            raise InputError(f"Multi-character letters must be separated by whitespace: {text!r}")
        return self.check_word(word)

    def parse_upword(self, text: str) -> "UPWord":
        """Parse the ``u(v)^w`` literal of an ultimately periodic word."""
        match = UPWORD_PATTERN.match(text)
        if not match:
            raise InputError(f"Expected an ultimately periodic word like 'aab(ab)^w', got {text!r}")
        preperiod = self.parse_word(match.group("pre"))
        period = self.parse_word(match.group("period"))
        if not period:
            raise InputError(f"Period must be nonempty: {text!r}")
        return UPWord(preperiod=preperiod, period=period)


class UPWord(BaseModel):
    """The infinite word preperiod · period · period · ..."""

    model_config = ConfigDict(frozen=True)

    preperiod: Tuple[str, ...] = ()
    period: Tuple[str, ...]

    @field_validator("period")
    @classmethod
    def validate_period(cls, period):
        """Ensure the period is nonempty."""
        if not period:
            raise ValueError("Period of an ultimately periodic word cannot be empty")
        return period

    def __str__(self) -> str:
        pre = "" if not self.preperiod else word_text(self.preperiod)
        return f"{pre}({word_text(self.period)})^w"

    def letter_at(self, index: int) -> str:
        if index < len(self.preperiod):
            return self.preperiod[index]
        return self.period[(index - len(self.preperiod)) % len(self.period)]

    def letters(self) -> Iterator[str]:
        """Infinite iterator over the letters."""
        return chain(self.preperiod, cycle(self.period))

    def prefix(self, length: int) -> Word:
        return tuple(islice(self.letters(), length))

    def normalized(self) -> "UPWord":
        """Canonical form: primitive period and shortest preperiod."""
        period = self.period
        size = len(period)
        for divisor in range(1, size + 1):
            if size % divisor == 0 and period[:divisor] * (size // divisor) == period:
                period = period[:divisor]
                break
        preperiod = self.preperiod
        while preperiod and preperiod[-1] == period[-1]:
            preperiod = preperiod[:-1]
            period = (period[-1],) + period[:-1]
        return UPWord(preperiod=preperiod, period=period)

    def common_prefix_length(self, other: "UPWord") -> Optional[int]:
        """
        Length of the longest common prefix with another ultimately periodic word.

        Returns:
            None when both words are equal
        """
        p, q = len(self.period), len(other.period)
        horizon = max(len(self.preperiod), len(other.preperiod)) + p * q // gcd(p, q)
        for index, (x, y) in enumerate(zip(self.letters(), other.letters())):
            if index >= horizon:
                return None
            if x != y:
                return index
        return None  # unreachable: both iterators are infinite

    def distance(self, other: "UPWord"):
        """Ultrametric distance 2^-l where l is the length of the common prefix."""
        length = self.common_prefix_length(other)
        if length is None:
            return Fraction(0)
        return Fraction(1, 2 ** length)
