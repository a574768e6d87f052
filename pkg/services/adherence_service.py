"""
Adherence service: center membership, least and greatest adherence words
with a given prefix, and validation of ultimately periodic words.
"""
import logging
from typing import Dict, List, Optional

from automata.base import StateRef, step_word
from config import ADHERENCE_CONFIG
from models.errors import PreconditionError
from models.values import AdherenceVerdict, AdherenceWord, Verdict
from models.words import UPWord, Word, word_text
from services.numeration_service import NumerationSystem

logger = logging.getLogger(__name__)

NO_PERIODIC_NOTE = "adh(L) contains no ultimately periodic word; only a prefix is returned"


def center_member(system: NumerationSystem, word: Word) -> bool:
    """True iff the word is a prefix of infinitely many words of the language."""
    return system.spec.is_live(step_word(system.spec, word))


def _require_center(system: NumerationSystem, word: Word) -> StateRef:
    state = step_word(system.spec, word)
    if not system.spec.is_live(state):
        raise PreconditionError(f"{word_text(word)} is not in the center of {system.name}")
    return state


def _greedy_letter(system: NumerationSystem, state: StateRef, maximal: bool):
    letters = system.alphabet.letters
    for letter in (reversed(letters) if maximal else letters):
        target = system.spec.step(state, letter)
        if system.spec.is_live(target):
            return letter, target
    # a live state always has a live successor
    raise PreconditionError(f"State {system.spec.label(state)} has no live successor")


def _extreme_word(system: NumerationSystem, prefix: Word, maximal: bool) -> AdherenceWord:
    spec = system.spec
    state = _require_center(system, prefix)

    closed = spec.closed_form_adherence(prefix, state, maximal)
    if closed is not None:
        return AdherenceWord(exact=closed)

    if not spec.periodic_adherence:
        depth = ADHERENCE_CONFIG["prefix_depth"]
        letters: List[str] = []
        for _ in range(depth):
            letter, state = _greedy_letter(system, state, maximal)
            letters.append(letter)
        return AdherenceWord(prefix=prefix + tuple(letters), depth=len(prefix) + depth, note=NO_PERIODIC_NOTE)

    limit = ADHERENCE_CONFIG["greedy_depth_limit"]
    seen: Dict[StateRef, int] = {}
    letters = []
    while len(letters) < limit:
        if state in seen:
            start = seen[state]
            word = UPWord(preperiod=prefix + tuple(letters[:start]), period=tuple(letters[start:]))
            return AdherenceWord(exact=word.normalized())
        seen[state] = len(letters)
        letter, state = _greedy_letter(system, state, maximal)
        letters.append(letter)
    logger.warning(f"Greedy walk on {system.name} found no repeated state within {limit} letters")
    return AdherenceWord(prefix=prefix + tuple(letters), depth=len(prefix) + len(letters),
                         note=f"no repeated state within {limit} letters")


def min_word(system: NumerationSystem, prefix: Word) -> AdherenceWord:
    """
    Least adherence word m_y having ``prefix`` as a prefix.

    Raises:
        PreconditionError: If the prefix is not in the center
    """
    return _extreme_word(system, prefix, maximal=False)


def max_word(system: NumerationSystem, prefix: Word) -> AdherenceWord:
    """Greatest adherence word M_y having ``prefix`` as a prefix."""
    return _extreme_word(system, prefix, maximal=True)


def validate_up_word(system: NumerationSystem, word: UPWord, depth_limit: Optional[int] = None) -> AdherenceVerdict:
    """
    Decide whether an ultimately periodic word lies in adh(L).

    Every visited state must be live. The answer is InAdherence once the
    automaton certifies the period or a state repeats at a period boundary,
    and Undetermined when the letter budget runs out first.
    """
    spec = system.spec
    spec.alphabet.check_word(word.preperiod + word.period)
    limit = depth_limit or ADHERENCE_CONFIG["validate_depth_limit"]
    state = spec.initial
    read = 0
    for letter in word.preperiod:
        state = spec.step(state, letter)
        read += 1
        if not spec.is_live(state):
            return AdherenceVerdict(verdict=Verdict.NOT_IN_ADHERENCE, depth=read)

    boundaries = set()
    while read < limit:
        certificate = spec.certify_periodic(state, word.period)
        if certificate is not None:
            verdict = Verdict.IN_ADHERENCE if certificate else Verdict.NOT_IN_ADHERENCE
            return AdherenceVerdict(verdict=verdict, depth=read)
        if state in boundaries:
            return AdherenceVerdict(verdict=Verdict.IN_ADHERENCE, depth=read)
        boundaries.add(state)
        for letter in word.period:
            state = spec.step(state, letter)
            read += 1
            if not spec.is_live(state):
                return AdherenceVerdict(verdict=Verdict.NOT_IN_ADHERENCE, depth=read)
    logger.warning(f"Could not decide adherence of {word} on {system.name} within {limit} letters")
    return AdherenceVerdict(verdict=Verdict.UNDETERMINED, depth=read)
