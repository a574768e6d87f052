"""
Real-number representation: ratios r_w, the left end s0, interval endpoints
alpha_y, subdivision into I_y, values of infinite words and encoding of a
rational as a center word.
"""
import logging
from enum import Enum
from fractions import Fraction
from itertools import islice
from typing import Iterable, List, Optional, Set, Tuple

from automata.base import DEAD, StateRef, step_word
from automata.builtins import BalancedDiff, DyckPrefix
from config import COUNTING_CONFIG, REALS_CONFIG
from models.errors import AmbiguousError, InputError, PreconditionError, UnsupportedOperationError
from models.values import (ONE, ConvergenceRow, ConvergenceTable, DivergenceReport, HypothesesReport,
                           Interval, RealValue, Verdict)
from models.words import UPWord, Word, word_text
from services.adherence_service import max_word, min_word, validate_up_word
from services.counting_service import classify
from services.numeration_service import NumerationSystem, value_of
from services.ratio_service import ClosedFormProvider, RatioProvider

logger = logging.getLogger(__name__)


class Policy(str, Enum):
    """Which child to take when the encoded value is a shared endpoint."""

    LEFTMOST = "leftmost"
    RIGHTMOST = "rightmost"


class _NeedsPrecision(Exception):
    def __init__(self, position: int):
        super().__init__(position)
        self.position = position


def _center_state(system: NumerationSystem, word: Word) -> StateRef:
    state = step_word(system.spec, word)
    if not system.spec.is_live(state):
        raise PreconditionError(f"{word_text(word)} is not in the center of {system.name}")
    return state


def ratio_r(system: NumerationSystem, word: Word, provider: Optional[RatioProvider] = None) -> RealValue:
    """r_w, exactly 0 outside the center."""
    provider = provider or system.ratio_provider
    state = step_word(system.spec, word)
    if not system.spec.is_live(state):
        return RealValue.exact(0)
    return provider.ratio(state, len(word))


def s0(system: NumerationSystem, provider: Optional[RatioProvider] = None) -> RealValue:
    """Left end of the represented interval [s0, 1]: 1 - r_epsilon."""
    return ONE - ratio_r(system, (), provider)


def alpha(system: NumerationSystem, word: Word, provider: Optional[RatioProvider] = None) -> RealValue:
    """
    Left endpoint of I_y, accumulated along the prefix path.

    Raises:
        PreconditionError: If the word is not in the center
    """
    provider = provider or system.ratio_provider
    spec = system.spec
    _center_state(system, word)
    total = s0(system, provider)
    state = spec.initial
    for i, letter in enumerate(word):
        for sibling, target in spec.successors(state):
            if sibling == letter:
                state = target
                break
            if spec.is_live(target):
                total = total + provider.ratio(target, i + 1)
    return total


def interval_of(system: NumerationSystem, word: Word, provider: Optional[RatioProvider] = None) -> Interval:
    provider = provider or system.ratio_provider
    lo = alpha(system, word, provider)
    return Interval(label=word, lo=lo, hi=lo + ratio_r(system, word, provider))


def subdivide(system: NumerationSystem, word: Word, provider: Optional[RatioProvider] = None) -> List[Interval]:
    """Children I_{ya} over letters with a live target, in letter order; they tile I_y."""
    provider = provider or system.ratio_provider
    state = _center_state(system, word)
    lo = alpha(system, word, provider)
    children = []
    for letter, target in system.spec.successors(state):
        if not system.spec.is_live(target):
            continue
        hi = lo + provider.ratio(target, len(word) + 1)
        children.append(Interval(label=word + (letter,), lo=lo, hi=hi))
        lo = hi
    return children


def _sibling_terms(system: NumerationSystem, provider: ClosedFormProvider, state: StateRef,
                   letters: Word, position: int) -> Tuple[Fraction, Fraction, StateRef]:
    """
    Sum of the ratios of smaller siblings along ``letters`` read from ``state``.

    Returns:
        (sum of ratios, sum of base^-(depth) over those siblings, end state)
    """
    spec = system.spec
    base = Fraction(provider.base)
    terms = Fraction(0)
    scales = Fraction(0)
    for offset, letter in enumerate(letters):
        for sibling, target in spec.successors(state):
            if sibling == letter:
                state = target
                break
            if spec.is_live(target):
                scale = base ** -(position + offset + 1)
                terms += provider.weight(target) * scale
                scales += scale
    return terms, scales, state


def _periodic_sum(system: NumerationSystem, provider: ClosedFormProvider, word: UPWord) -> Optional[Fraction]:
    """
    Exact s0 + sum of sibling ratios for a closed-form system.

    Each period contributes (A + B k) rho^k, summed as
    A / (1 - rho) + B rho / (1 - rho)^2.
    """
    spec = system.spec
    total = 1 - provider.ratio(spec.initial, 0).lo
    terms, _, state = _sibling_terms(system, provider, spec.initial, word.preperiod, 0)
    total += terms
    position = len(word.preperiod)
    rho = Fraction(provider.base) ** -len(word.period)
    for _ in range(REALS_CONFIG["periodic_shift_limit"]):
        a, scales, end = _sibling_terms(system, provider, state, word.period, position)
        if end == state:
            return total + a / (1 - rho)
        shift = provider.translation(state, end) if provider.translation else None
        if shift is not None:
            b = shift * scales
            return total + a / (1 - rho) + b * rho / (1 - rho) ** 2
        total += a
        state = end
        position += len(word.period)
    return None


def value_of_prefix_stream(system: NumerationSystem, letters: Iterable[str], n: int) -> RealValue:
    """
    Certified bracket [alpha_y, alpha_y + r_y] of the real represented by a
    word, from its length-n prefix y.
    """
    prefix = tuple(islice(iter(letters), n))
    if len(prefix) < n:
        raise InputError(f"The stream ended after {len(prefix)} letters, {n} requested")
    system.alphabet.check_word(prefix)
    interval = interval_of(system, prefix)
    return RealValue.enclosure(interval.lo.lo, interval.hi.hi,
                               certified=interval.lo.certified and interval.hi.certified)


def value_of_infinite(system: NumerationSystem, word: UPWord) -> RealValue:
    """
    The real number represented by an ultimately periodic adherence word.

    Exact for closed-form systems, an enclosure from a long prefix otherwise.

    Raises:
        PreconditionError: If the word is not in adh(L)
    """
    verdict = validate_up_word(system, word)
    if verdict.verdict == Verdict.NOT_IN_ADHERENCE:
        raise PreconditionError(f"{word} is not in the adherence of {system.name}")
    provider = system.ratio_provider
    if isinstance(provider, ClosedFormProvider):
        exact = _periodic_sum(system, provider, word)
        if exact is not None:
            return RealValue.exact(exact)
        logger.warning(f"No exact periodic sum for {word}; returning an enclosure")
    return value_of_prefix_stream(system, word.letters(), REALS_CONFIG["infinite_value_depth"])


def _child_index(children: List[Interval], x: Fraction, policy: Policy, position: int) -> int:
    index = 0
    for child in children[1:]:
        boundary = child.lo
        if x > boundary.hi:
            index += 1
            continue
        if x < boundary.lo:
            break
        if boundary.lo == boundary.hi == x:
            if policy == Policy.RIGHTMOST:
                index += 1
            break
        raise _NeedsPrecision(position)
    return index


def _encode_with(system: NumerationSystem, provider: RatioProvider, x: Fraction,
                 depth: int, policy: Policy) -> Word:
    low = s0(system, provider)
    if x < low.lo or x > 1:
        raise PreconditionError(f"{x} lies outside [s0, 1] = [{low}, 1]")
    if x < low.hi:
        raise _NeedsPrecision(0)
    word: Word = ()
    for position in range(depth):
        children = subdivide(system, word, provider)
        word = children[_child_index(children, x, policy, position)].label
    return word


def encode_real(system: NumerationSystem, x, depth: int, policy: Policy = Policy.RIGHTMOST) -> Word:
    """
    Center word y of length ``depth`` with x in I_y.

    Args:
        system: The numeration system
        x: A rational in [s0, 1]
        depth: Length of the returned word
        policy: Child chosen when x is a shared endpoint

    Raises:
        PreconditionError: If x lies outside [s0, 1]
        AmbiguousError: If enclosures cannot separate x from a boundary
    """
    x = Fraction(x)
    if depth < 0:
        raise InputError(f"Depth must be nonnegative, got {depth}")
    provider = system.ratio_provider
    if not provider.certified:
        raise UnsupportedOperationError(f"{system.name} has only uncertified ratio estimates")
    budget = REALS_CONFIG["encode_precision_budget"]
    for attempt in range(budget + 1):
        try:
            return _encode_with(system, provider, x, depth, policy)
        except _NeedsPrecision as e:
            refined = provider.refined() if attempt < budget else None
            if refined is None:
                raise AmbiguousError(f"Cannot place {x} relative to an interval boundary at position {e.position}",
                                     e.position)
            logger.info(f"Refining ratio precision after an undecided boundary at position {e.position}")
            provider = refined
    raise AmbiguousError(f"Cannot place {x} within the precision budget", 0)


def endpoint_representations(system: NumerationSystem, x) -> Set[UPWord]:
    """
    Both representations of an interval endpoint in the Dyck prefix system.

    Returns:
        {w a^omega, z b^level (ab)^omega} where x = inf I_w = sup I_z
    """
    if type(system.spec) is not DyckPrefix:
        raise UnsupportedOperationError("Endpoint representations are available for the dyck system only")
    x = Fraction(x)
    if x == Fraction(1, 2):
        return {UPWord(period=("a",))}
    if x == 1:
        return {UPWord(period=("a", "b"))}
    if not Fraction(1, 2) < x < 1:
        raise PreconditionError(f"{x} lies outside [1/2, 1]")
    bound = REALS_CONFIG["endpoint_search_depth"]
    left = encode_real(system, x, bound, Policy.LEFTMOST)
    right = encode_real(system, x, bound, Policy.RIGHTMOST)
    for length in range(1, bound + 1):
        if left[length - 1] != right[length - 1]:
            lower, upper = min_word(system, right[:length]), max_word(system, left[:length])
            return {lower.exact, upper.exact}
    raise PreconditionError(f"{x} is not an interval endpoint up to depth {bound}")


def convergence_table(system: NumerationSystem, word: UPWord, n: int) -> ConvergenceTable:
    """
    Rows (n, val(w[0, n-1]), v(n), ratio) for n = 1..N.

    The table stops early, with a note, at the first prefix outside the language.
    """
    spec, cache = system.spec, system.cache
    system.alphabet.check_word(word.preperiod + word.period)
    table = ConvergenceTable(word=str(word))
    siblings: List[Tuple[StateRef, int]] = []
    state = spec.initial
    letters = word.prefix(n)
    for length in range(1, n + 1):
        i = length - 1
        following = DEAD
        for sibling, target in spec.successors(state):
            if sibling == letters[i]:
                following = target
                break
            if target is not DEAD:
                siblings.append((target, i))
        state = following
        if state is DEAD or not spec.is_final(state):
            table.truncated = True
            table.note = f"prefix of length {length} is not in the language"
            logger.warning(f"Convergence table for {word} truncated at n={length}")
            break
        val = cache.v(spec.initial, length - 1) + sum(cache.u(t, length - j - 1) for t, j in siblings)
        v = cache.v(spec.initial, length)
        table.rows.append(ConvergenceRow(n=length, prefix=letters[:length], val=val, v=v,
                                         ratio=Fraction(val, v)))
    return table


def staircase_limits(system: NumerationSystem, n: int) -> Tuple[Fraction, Fraction]:
    """v(2n-1)/v(2n) and v(2n)/v(2n+1); for the balanced language they tend to 5/8 and 2/5."""
    if n < 1:
        raise InputError("n must be at least 1")
    q0, cache = system.spec.initial, system.cache
    return (Fraction(cache.v(q0, 2 * n - 1), cache.v(q0, 2 * n)),
            Fraction(cache.v(q0, 2 * n), cache.v(q0, 2 * n + 1)))


def divergence_demo(system: NumerationSystem, blocks: int) -> DivergenceReport:
    """val((ab)^n)/v(2n) and val((ab)^n a)/v(2n+1) on the balanced language."""
    if not isinstance(system.spec, BalancedDiff):
        raise UnsupportedOperationError("The divergence demo runs on the balanced language")
    if blocks < 1:
        raise InputError("The number of blocks must be at least 1")
    q0, cache = system.spec.initial, system.cache
    even = ("a", "b") * blocks
    even_ratio = Fraction(value_of(system, even), cache.v(q0, 2 * blocks))
    odd_ratio = Fraction(value_of(system, even + ("a",)), cache.v(q0, 2 * blocks + 1))
    staircase_even, staircase_odd = staircase_limits(system, blocks)
    return DivergenceReport(blocks=blocks, even_ratio=even_ratio, odd_ratio=odd_ratio,
                            staircase_even=staircase_even, staircase_odd=staircase_odd)


def hypotheses_report(system: NumerationSystem, n: Optional[int] = None, depth: int = 24,
                      tolerance: float = 1e-2) -> HypothesesReport:
    """
    Empirical check of the hypotheses: uncountable adherence, convergence of
    the ratios u(n)/v(n), and vanishing r along the prefixes of m_epsilon.
    """
    spec, cache = system.spec, system.cache
    n = n or COUNTING_CONFIG["numeric_limit_depth"]
    if spec.is_finite:
        uncountable = classify(spec).uncountable_adherence
    else:
        uncountable = spec.uncountable_adherence

    lengths = [n, n + 1, 2 * n, 2 * n + 1]
    ratios = [float(Fraction(cache.u(spec.initial, k), cache.v(spec.initial, k))) for k in lengths]
    gap = max(ratios) - min(ratios)

    least = min_word(system, ())
    available = depth if least.is_exact else min(depth, len(least.prefix))
    path = least.letters_prefix(available)
    provider = system.ratio_provider
    h3 = [float(ratio_r(system, path[:k], provider)) for k in range(available + 1)]
    decreasing = all(later <= earlier + 1e-12 for earlier, later in zip(h3, h3[1:]))

    return HypothesesReport(strategy=provider.strategy.value, uncountable_adherence=uncountable,
                            h2_lengths=lengths, h2_ratios=ratios, h2_gap=gap, h2_holds=gap < tolerance,
                            h3_path=str(least), h3_ratios=h3,
                            h3_holds=decreasing and bool(h3) and h3[-1] < tolerance)
