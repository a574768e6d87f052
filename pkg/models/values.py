"""
Result models: exact or enclosed real values, intervals, growth classes,
adherence words, adherence verdicts and convergence tables.
"""
from enum import Enum
from fractions import Fraction
from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from models.words import UPWord, Word, word_text

Number = Union[int, Fraction]


def as_fraction(value: Number) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


class RealValue(BaseModel):
    """
    A real number known exactly (``lo == hi``) or through a rational enclosure.

    ``certified`` is False for heuristic brackets that do not guarantee the
    true value lies inside.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lo: Fraction
    hi: Fraction
    certified: bool = True

    @model_validator(mode="after")
    def check_order(self):
        if self.lo > self.hi:
            raise ValueError(f"Enclosure bounds out of order: {self.lo} > {self.hi}")
        return self

    @classmethod
    def exact(cls, value: Number) -> "RealValue":
        value = as_fraction(value)
        return cls(lo=value, hi=value)

    @classmethod
    def enclosure(cls, lo: Number, hi: Number, certified: bool = True) -> "RealValue":
        return cls(lo=as_fraction(lo), hi=as_fraction(hi), certified=certified)

    @property
    def is_exact(self) -> bool:
        return self.certified and self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value: Number) -> bool:
        return self.lo <= value <= self.hi

    def __float__(self) -> float:
        return float(self.midpoint)

    def _coerce(self, other) -> "RealValue":
        if isinstance(other, RealValue):
            return other
        return RealValue.exact(other)

    def __add__(self, other) -> "RealValue":
        other = self._coerce(other)
        return RealValue(lo=self.lo + other.lo, hi=self.hi + other.hi,
                         certified=self.certified and other.certified)

    __radd__ = __add__

    def __sub__(self, other) -> "RealValue":
        other = self._coerce(other)
        return RealValue(lo=self.lo - other.hi, hi=self.hi - other.lo,
                         certified=self.certified and other.certified)

    def __rsub__(self, other) -> "RealValue":
        return self._coerce(other) - self

    def scale(self, factor: Number) -> "RealValue":
        """Multiply by an exact rational."""
        factor = as_fraction(factor)
        lo, hi = self.lo * factor, self.hi * factor
        if factor < 0:
            lo, hi = hi, lo
        return RealValue(lo=lo, hi=hi, certified=self.certified)

    def __str__(self) -> str:
        if self.lo == self.hi:
            return str(self.lo)
        return f"[{self.lo}, {self.hi}]"


ZERO = RealValue.exact(0)
ONE = RealValue.exact(1)


class Interval(BaseModel):
    """The interval I_y = [alpha_y, alpha_y + r_y] attached to a center word."""

    model_config = ConfigDict(frozen=True)

    label: Tuple[str, ...]
    lo: RealValue
    hi: RealValue

    @property
    def width(self) -> RealValue:
        return self.hi - self.lo

    def contains(self, value: Number) -> bool:
        return self.lo.lo <= value <= self.hi.hi

    def __str__(self) -> str:
        return f"{word_text(self.label)}: [{self.lo}, {self.hi}]"


class Comparison(str, Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"


class GrowthClass(BaseModel):
    """Structural growth of a finite automaton's language."""

    kind: Literal["Polynomial", "Exponential"]
    degree_bound: Optional[int] = None
    uncountable_adherence: bool = False
    uncountable_linfty: bool = False

    def __str__(self) -> str:
        if self.kind == "Polynomial":
            return f"Polynomial(degree<={self.degree_bound})"
        return "Exponential"


class AdherenceWord(BaseModel):
    """Either an exact ultimately periodic adherence word or a certified finite prefix."""

    model_config = ConfigDict(frozen=True)

    exact: Optional[UPWord] = None
    prefix: Tuple[str, ...] = ()
    depth: int = 0
    note: Optional[str] = None

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def letters_prefix(self, length: int) -> Word:
        """First ``length`` letters; Prefix answers cannot be extended past their depth."""
        if self.exact is not None:
            return self.exact.prefix(length)
        if length > len(self.prefix):
            raise ValueError(f"Only {len(self.prefix)} letters are known")
        return self.prefix[:length]

    def __str__(self) -> str:
        if self.exact is not None:
            return str(self.exact)
        return f"{word_text(self.prefix)}... (prefix, depth {self.depth})"


class Verdict(str, Enum):
    IN_ADHERENCE = "InAdherence"
    NOT_IN_ADHERENCE = "NotInAdherence"
    UNDETERMINED = "Undetermined"


class AdherenceVerdict(BaseModel):
    """Outcome of validating an ultimately periodic word against adh(L)."""

    verdict: Verdict
    depth: int = 0

    def __str__(self) -> str:
        if self.verdict == Verdict.UNDETERMINED:
            return f"{self.verdict.value}({self.depth})"
        return self.verdict.value


class ConvergenceRow(BaseModel):
    """One line of a val(w[0, n-1]) / v(n) convergence table."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    n: int
    prefix: Tuple[str, ...]
    val: int
    v: int
    ratio: Fraction


class ConvergenceTable(BaseModel):
    word: str
    rows: List[ConvergenceRow] = Field(default_factory=list)
    truncated: bool = False
    note: Optional[str] = None


class DivergenceReport(BaseModel):
    """Two prefix sequences of (ab)^omega whose value ratios have different limits."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    blocks: int
    even_ratio: Fraction
    odd_ratio: Fraction
    even_limit: Fraction = Fraction(3, 4)
    odd_limit: Fraction = Fraction(3, 5)
    staircase_even: Fraction
    staircase_odd: Fraction
    staircase_even_limit: Fraction = Fraction(5, 8)
    staircase_odd_limit: Fraction = Fraction(2, 5)


class HypothesesReport(BaseModel):
    """Empirical evidence for the three hypotheses behind real-number representation."""

    strategy: str
    uncountable_adherence: Optional[bool] = None
    h2_lengths: List[int] = Field(default_factory=list)
    h2_ratios: List[float] = Field(default_factory=list)
    h2_gap: float = 0.0
    h2_holds: bool = False
    h3_path: str = ""
    h3_ratios: List[float] = Field(default_factory=list)
    h3_holds: bool = False
