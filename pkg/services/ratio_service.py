"""
Ratio providers: the limit ratios r_w = lim u_{q0.w}(n - |w|) / v_{q0}(n)
as exact closed forms, certified rational enclosures, or numeric estimates.
"""
import logging
from abc import ABC, abstractmethod
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Hashable, List, Optional, Tuple

import networkx as nx
import numpy as np

from automata.base import AutomatonSpec, StateRef
from automata.builtins import DyckPrefix, FullBinary, IntegerBase, RationalBase32
from automata.graph import cyclic_components, final_states, is_multicyclic_component, trim_graph
from config import COUNTING_CONFIG, REALS_CONFIG
from models.errors import InputError
from models.values import RealValue
from services.counting_service import CountCache

logger = logging.getLogger(__name__)

TWO_THIRDS = Fraction(2, 3)


class RatioStrategy(str, Enum):
    CLOSED_FORM = "ClosedForm"
    SPECTRAL = "Spectral"
    NUMERIC_LIMIT = "NumericLimit"


class RatioProvider(ABC):
    """Answers r_w for center words, given |w| and the state q0.w."""

    strategy: RatioStrategy
    certified: bool = True
    exact: bool = False

    @abstractmethod
    def ratio(self, state: StateRef, length: int) -> RealValue:
        ...

    def refined(self) -> Optional["RatioProvider"]:
        """A more precise provider, or None when precision cannot be raised."""
        return None

    def describe(self) -> Dict[str, object]:
        return {"strategy": self.strategy.value, "certified": self.certified}


class ClosedFormProvider(RatioProvider):
    """
    Exact ratios of the form weight(q0.w) * base^-|w|.

    ``translation`` reports, for a period read from ``start`` to ``end``,
    the constant weight increase each further period adds; it enables exact
    arithmetico-geometric sums when the period does not return to its state.
    """

    strategy = RatioStrategy.CLOSED_FORM
    exact = True

    def __init__(self,
                 weight: Callable[[StateRef], Fraction],
                 base: int,
                 translation: Optional[Callable[[StateRef, StateRef], Optional[Fraction]]] = None):
        self.weight = weight
        self.base = base
        self.translation = translation

    def ratio(self, state: StateRef, length: int) -> RealValue:
        return RealValue.exact(self.weight(state) / Fraction(self.base) ** length)

    def describe(self) -> Dict[str, object]:
        return {**super().describe(), "base": self.base}


def _dyck_translation(start: StateRef, end: StateRef) -> Optional[Fraction]:
    drift = end - start
    return Fraction(drift, 2) if drift >= 0 else None


def closed_form_provider(spec: AutomatonSpec) -> Optional[ClosedFormProvider]:
    """Closed-form ratios of the builtins that have one."""
    if isinstance(spec, FullBinary):
        return ClosedFormProvider(lambda state: Fraction(1, 2), 2)
    if isinstance(spec, IntegerBase):
        base = spec.base
        return ClosedFormProvider(
            lambda state: Fraction(base - 1, base) if state == "init" else Fraction(1), base)
    if type(spec) is DyckPrefix:
        return ClosedFormProvider(lambda level: Fraction(level + 1, 2), 2, _dyck_translation)
    return None


@lru_cache(maxsize=None)
def rational_base_g(n: int) -> int:
    """G_0 = 1, G_{n+1} = ceil(3 G_n / 2)."""
    if n < 0:
        raise InputError(f"n must be nonnegative, got {n}")
    value = 1
    for _ in range(n):
        value = -(-3 * value // 2)
    return value


def k_enclosure(n: int) -> RealValue:
    """
    Rational enclosure of the rational-base constant K from G_n = floor(K (3/2)^n).

    Returns:
        [G_n (2/3)^n, (G_n + 1)(2/3)^n], width (2/3)^n
    """
    scale = TWO_THIRDS ** n
    g = rational_base_g(n)
    return RealValue.enclosure(g * scale, (g + 1) * scale)


def rational_base_value(digits: List[int], depth: Optional[int] = None) -> RealValue:
    """
    Enclosure of (1 / 3K) sum w[i] (2/3)^i for an adherence word known by a prefix.

    Args:
        digits: The known leading digits
        depth: Precision of the K enclosure
    """
    depth = depth or REALS_CONFIG["rational_base_depth"]
    k = k_enclosure(depth)
    partial = sum(Fraction(d) * TWO_THIRDS ** i for i, d in enumerate(digits))
    tail = 6 * TWO_THIRDS ** len(digits)
    return RealValue.enclosure(partial / (3 * k.hi), (partial + tail) / (3 * k.lo))


class RationalBaseRatios(RatioProvider):
    """
    Enclosures of r_x = val(M_x) - val(m_x) for the rational base 3/2 system.

    The extreme adherence words are followed for ``depth`` digits beyond x;
    the remaining tail differs by at most 2 per digit.
    """

    strategy = RatioStrategy.CLOSED_FORM

    def __init__(self, depth: Optional[int] = None):
        self.depth = depth or REALS_CONFIG["rational_base_depth"]
        self._k = k_enclosure(self.depth)
        self._cache: Dict[tuple, RealValue] = {}

    def ratio(self, state: StateRef, length: int) -> RealValue:
        if length == 0:
            return RealValue.exact(Fraction(1, 3))
        key = (state, length)
        if key not in self._cache:
            self._cache[key] = self._enclose(state, length)
        return self._cache[key]

    def _enclose(self, state: StateRef, length: int) -> RealValue:
        low, high = state, state
        partial = Fraction(0)
        scale = TWO_THIRDS ** length
        for _ in range(self.depth):
            low_digit = RationalBase32.extreme_digit(low, maximal=False)
            high_digit = RationalBase32.extreme_digit(high, maximal=True)
            partial += (high_digit - low_digit) * scale
            low = (3 * low + low_digit) // 2
            high = (3 * high + high_digit) // 2
            scale *= TWO_THIRDS
        tail = 6 * scale
        return RealValue.enclosure(partial / (3 * self._k.hi), (partial + tail) / (3 * self._k.lo))

    def refined(self) -> Optional["RatioProvider"]:
        return RationalBaseRatios(self.depth * 2)

    def describe(self) -> Dict[str, object]:
        return {**super().describe(), "depth": self.depth}


class SpectralProvider(RatioProvider):
    """
    r_w = a_{q0.w} (theta - 1) / theta^(|w|+1) from the Perron root theta and
    eigenvector a of the letter-count matrix, widened into an enclosure.

    ``theta_bounds`` bracket the Perron root and ``weight_error`` bounds the
    error of every normalized weight. The enclosures are uncertified when
    power iteration stopped before converging.
    """

    strategy = RatioStrategy.SPECTRAL

    def __init__(self, theta: float, weights: Dict[Hashable, float], tolerance: float,
                 theta_bounds: Optional[Tuple[float, float]] = None, weight_error: float = 0.0,
                 certified: bool = True):
        self.theta = theta
        self.weights = weights
        self.tolerance = tolerance
        self.theta_bounds = theta_bounds or (theta, theta)
        self.weight_error = weight_error
        self.certified = certified

    def _scale_range(self, length: int) -> Tuple[Fraction, Fraction]:
        # (t - 1) / t^(l+1) peaks at t = (l+1)/l
        lo_theta, hi_theta = (Fraction(bound) for bound in self.theta_bounds)
        candidates = [lo_theta, hi_theta]
        if length > 0 and lo_theta < Fraction(length + 1, length) < hi_theta:
            candidates.append(Fraction(length + 1, length))
        values = [(t - 1) / t ** (length + 1) for t in candidates]
        return min(values), max(values)

    def ratio(self, state: StateRef, length: int) -> RealValue:
        weight = self.weights.get(state, 0.0)
        if weight == 0.0:
            return RealValue.exact(0)
        low_scale, high_scale = self._scale_range(length)
        error = Fraction(self.weight_error)
        low_weight = max(Fraction(weight) - error, Fraction(0))
        high_weight = Fraction(weight) + error
        slack = Fraction(self.tolerance)
        return RealValue.enclosure(max(low_weight * low_scale - slack, Fraction(0)),
                                   high_weight * high_scale + slack, certified=self.certified)

    def describe(self) -> Dict[str, object]:
        return {**super().describe(), "theta": self.theta, "theta_bounds": list(self.theta_bounds),
                "a": {str(k): v for k, v in sorted(self.weights.items(), key=lambda kv: str(kv[0]))}}


class NumericLimitProvider(RatioProvider):
    """
    Uncertified bracket of u(q0.w, n - |w|) / v(q0, n) at n and 2n.

    Never used to encode reals.
    """

    strategy = RatioStrategy.NUMERIC_LIMIT
    certified = False

    def __init__(self, cache, initial: StateRef, depth: Optional[int] = None):
        self.cache = cache
        self.initial = initial
        self.depth = depth or COUNTING_CONFIG["numeric_limit_depth"]

    def _estimate(self, state: StateRef, length: int, n: int) -> Fraction:
        total = self.cache.v(self.initial, n)
        if total == 0:
            return Fraction(0)
        return Fraction(self.cache.u(state, n - length), total)

    def ratio(self, state: StateRef, length: int) -> RealValue:
        n = self.depth + length
        first, second = self._estimate(state, length, n), self._estimate(state, length, 2 * n)
        return RealValue.enclosure(min(first, second), max(first, second), certified=False)

    def describe(self) -> Dict[str, object]:
        return {**super().describe(), "depth": self.depth}


def spectral_ratios(spec: AutomatonSpec, cache=None) -> RatioProvider:
    """
    Spectral ratio provider of a finite automaton.

    Requires the trim automaton to have exactly one cyclic strongly connected
    component, aperiodic and carrying two cycles. Otherwise the NumericLimit
    fallback is returned.
    """
    trimmed = trim_graph(spec)
    components = cyclic_components(trimmed)
    reason = None
    if len(components) != 1:
        reason = f"{len(components)} cyclic components in the trim automaton"
    elif not is_multicyclic_component(trimmed, components[0]):
        reason = "the language grows polynomially (theta = 1)"
    elif not nx.is_aperiodic(nx.DiGraph(trimmed.subgraph(components[0]))):
        reason = "the cyclic component is periodic"
    if reason is not None:
        logger.warning(f"Spectral ratios unavailable for {spec.name}: {reason}; using numeric limits")
        return NumericLimitProvider(cache if cache is not None else CountCache(spec), spec.initial)

    states = list(trimmed.nodes)
    index = {state: i for i, state in enumerate(states)}
    matrix = np.zeros((len(states), len(states)))
    for source, target in trimmed.edges():
        matrix[index[source], index[target]] += 1.0
    finals = final_states(spec)
    vector = np.array([1.0 if state in finals else 0.0 for state in states])

    tolerance = REALS_CONFIG["spectral_tolerance"]
    theta = 0.0
    converged = False
    for iteration in range(REALS_CONFIG["spectral_max_iterations"]):
        image = matrix @ vector
        norm = np.max(np.abs(image))
        following = image / norm
        delta = np.max(np.abs(following - vector))
        vector, theta = following, float(norm)
        if delta < tolerance:
            logger.debug(f"Power iteration converged after {iteration + 1} steps, theta={theta}")
            converged = True
            break
    else:
        logger.warning(f"Power iteration did not reach tolerance {tolerance}; spectral ratios are uncertified")

    anchor = vector[index[spec.initial]]
    if anchor <= 0:
        logger.warning(f"Power iteration lost the initial state of {spec.name}; using numeric limits")
        return NumericLimitProvider(cache if cache is not None else CountCache(spec), spec.initial)
    theta_bounds = collatz_wielandt_bounds(matrix, vector, [index[state] for state in components[0]])
    if theta_bounds is None:
        converged, theta_bounds = False, (theta, theta)
    residual = float(np.max(np.abs(matrix @ vector - theta * vector)))
    weight_error = residual / (theta * anchor)
    weights = {state: float(vector[index[state]] / anchor) for state in states}
    certified = converged and theta_bounds[0] > 1.0
    logger.info(f"Spectral ratios for {spec.name}: theta in [{theta_bounds[0]:.12f}, {theta_bounds[1]:.12f}]")
    return SpectralProvider(theta, weights, REALS_CONFIG["spectral_enclosure"], theta_bounds=theta_bounds,
                            weight_error=weight_error, certified=certified)


def collatz_wielandt_bounds(matrix: np.ndarray, vector: np.ndarray,
                            component: List[int]) -> Optional[Tuple[float, float]]:
    """
    Bracket of the Perron root of an irreducible block: min and max of
    (Mx)_i / x_i over a positive vector x, widened by a few ulps. None when x
    is not positive on the block.
    """
    block = matrix[np.ix_(component, component)]
    restricted = vector[component]
    if np.any(restricted <= 0):
        return None
    quotients = (block @ restricted) / restricted
    lo, hi = float(np.min(quotients)), float(np.max(quotients))
    return float(np.nextafter(lo, 0.0) * (1 - 4e-16)), float(np.nextafter(hi, np.inf) * (1 + 4e-16))


def provider_for(system, strategy: Optional[RatioStrategy] = None) -> RatioProvider:
    """Pick the ratio provider of a numeration system."""
    spec = system.spec
    if strategy in (None, RatioStrategy.CLOSED_FORM):
        closed = closed_form_provider(spec)
        if closed is not None:
            return closed
        if isinstance(spec, RationalBase32):
            return RationalBaseRatios()
    if strategy == RatioStrategy.NUMERIC_LIMIT:
        return NumericLimitProvider(system.cache, spec.initial)
    if spec.is_finite:
        return spectral_ratios(spec, system.cache)
    if strategy is not None and strategy != RatioStrategy.CLOSED_FORM:
        raise InputError(f"{strategy.value} ratios need a finite automaton")
    logger.warning(f"No closed-form ratios for {spec.name}; using numeric limits")
    return NumericLimitProvider(system.cache, spec.initial)
