"""
Tests for words, values, errors and configuration.
"""
import unittest
import sys
import os
import logging
from fractions import Fraction
from unittest.mock import patch

from pydantic import ValidationError

# Add parent directory to path to allow imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import config
from models.errors import (AmbiguousError, DfaSyntaxError, GuardExceededError, InputError, NotInLanguageError,
                           PreconditionError, UnsupportedOperationError, describe_error)
from models.values import AdherenceWord, GrowthClass, Interval, RealValue
from models.words import Alphabet, UPWord, word_text

# Disable logging during tests
logging.disable(logging.CRITICAL)


class TestAlphabet(unittest.TestCase):
    """Tests for ordered alphabets and word literals."""

    def setUp(self):
        self.ab = Alphabet(letters=("a", "b"))

    def test_rank_follows_letter_order(self):
        """Ranks are the positions of the letters."""
        self.assertEqual(self.ab.rank, {"a": 0, "b": 1})
        self.assertEqual(Alphabet(letters=("b", "a")).rank_of("b"), 0)

    def test_rejects_empty_and_duplicate_letters(self):
        """An alphabet needs distinct letters."""
        with self.assertRaises(ValidationError):
            Alphabet(letters=())
        with self.assertRaises(ValidationError):
            Alphabet(letters=("a", "a"))
        with self.assertRaises(ValidationError):
            Alphabet(letters=("a(",))

    def test_parse_word(self):
        """Runs of single characters and the empty word."""
        self.assertEqual(self.ab.parse_word("aab"), ("a", "a", "b"))
        self.assertEqual(self.ab.parse_word("ε"), ())
        self.assertEqual(self.ab.parse_word(""), ())

    def test_parse_word_unknown_letter(self):
        """Letters outside the alphabet are input errors."""
        with self.assertRaises(InputError):
            self.ab.parse_word("abc")

    def test_multi_character_tokens(self):
        """Longer tokens are separated by whitespace."""
        alphabet = Alphabet(letters=("10", "11"))
        self.assertEqual(alphabet.parse_word("10 11 10"), ("10", "11", "10"))
        self.assertEqual(word_text(("10", "11")), "10 11")
        with self.assertRaises(InputError):
            alphabet.parse_word("1011")

    def test_parse_upword(self):
        """The u(v)^w literal."""
        word = self.ab.parse_upword("aab(ab)^w")
        self.assertEqual(word.preperiod, ("a", "a", "b"))
        self.assertEqual(word.period, ("a", "b"))
        self.assertEqual(self.ab.parse_upword("(a)^ω").preperiod, ())

    def test_parse_upword_malformed(self):
        """Missing or empty periods are rejected."""
        for text in ("aab", "aab()^w", "(ab)"):
            with self.assertRaises(InputError):
                self.ab.parse_upword(text)


class TestUPWord(unittest.TestCase):
    """Tests for ultimately periodic words."""

    def test_text_form(self):
        """Printed as u(v)^w, with an empty preperiod omitted."""
        self.assertEqual(str(UPWord(preperiod=("a", "a", "b"), period=("a", "b"))), "aab(ab)^w")
        self.assertEqual(str(UPWord(period=("a",))), "(a)^w")

    def test_empty_period_rejected(self):
        """A period must be nonempty."""
        with self.assertRaises(ValidationError):
            UPWord(preperiod=("a",), period=())

    def test_letters_and_prefix(self):
        """Letters repeat the period forever."""
        word = UPWord(preperiod=("a", "a", "b"), period=("a", "b"))
        self.assertEqual(word.prefix(7), ("a", "a", "b", "a", "b", "a", "b"))
        self.assertEqual(word.letter_at(10), "b")

    def test_normalized(self):
        """Primitive period and shortest preperiod."""
        word = UPWord(preperiod=("a", "a", "b"), period=("a", "a", "b")).normalized()
        self.assertEqual(word, UPWord(period=("a", "a", "b")))
        self.assertEqual(UPWord(period=("a", "b", "a", "b")).normalized(), UPWord(period=("a", "b")))

    def test_common_prefix_and_distance(self):
        """Ultrametric distance from the longest common prefix."""
        first = UPWord(preperiod=("a", "a", "b"), period=("a",))
        second = UPWord(preperiod=("a", "a", "b"), period=("a", "b"))
        self.assertEqual(first.common_prefix_length(second), 4)
        self.assertEqual(first.distance(second), Fraction(1, 16))

    def test_equal_words_have_zero_distance(self):
        """Different spellings of one word are at distance zero."""
        first = UPWord(period=("a", "b"))
        second = UPWord(preperiod=("a", "b"), period=("a", "b", "a", "b"))
        self.assertIsNone(first.common_prefix_length(second))
        self.assertEqual(first.distance(second), 0)


class TestValues(unittest.TestCase):
    """Tests for exact values and enclosures."""

    def test_exact_arithmetic(self):
        """Exact values add exactly."""
        total = RealValue.exact(Fraction(1, 2)) + Fraction(1, 4)
        self.assertTrue(total.is_exact)
        self.assertEqual(str(total), "3/4")

    def test_enclosure_arithmetic(self):
        """Subtraction widens enclosures."""
        difference = RealValue.enclosure(1, 2) - RealValue.enclosure(0, 1)
        self.assertEqual((difference.lo, difference.hi), (0, 2))
        self.assertEqual(str(RealValue.enclosure(Fraction(1, 2), 1)), "[1/2, 1]")

    def test_negative_scale_swaps_bounds(self):
        """Scaling by a negative rational keeps lo <= hi."""
        scaled = RealValue.enclosure(1, 2).scale(-1)
        self.assertEqual((scaled.lo, scaled.hi), (-2, -1))

    def test_bounds_out_of_order(self):
        """lo must not exceed hi."""
        with self.assertRaises(ValidationError):
            RealValue.enclosure(2, 1)

    def test_uncertified_is_never_exact(self):
        """A heuristic bracket is not an exact value."""
        self.assertFalse(RealValue.enclosure(1, 1, certified=False).is_exact)

    def test_interval_text(self):
        """Intervals print as y: [lo, hi]."""
        interval = Interval(label=("a", "a", "b"), lo=RealValue.exact(Fraction(3, 4)),
                            hi=RealValue.exact(Fraction(7, 8)))
        self.assertEqual(str(interval), "aab: [3/4, 7/8]")
        self.assertEqual(interval.width.lo, Fraction(1, 8))
        self.assertTrue(interval.contains(Fraction(13, 16)))

    def test_growth_class_text(self):
        """Growth classes print their kind."""
        self.assertEqual(str(GrowthClass(kind="Polynomial", degree_bound=1)), "Polynomial(degree<=1)")
        self.assertEqual(str(GrowthClass(kind="Exponential")), "Exponential")

    def test_adherence_prefix_cannot_be_extended(self):
        """A Prefix answer only knows its own letters."""
        answer = AdherenceWord(prefix=("2", "1"), depth=2, note="prefix")
        self.assertFalse(answer.is_exact)
        self.assertEqual(answer.letters_prefix(1), ("2",))
        with self.assertRaises(ValueError):
            answer.letters_prefix(3)


class TestErrors(unittest.TestCase):
    """Tests for error codes and exit codes."""

    def test_exit_codes(self):
        """Input errors exit with 1, domain errors with 2."""
        self.assertEqual(InputError("x").exit_code, 1)
        self.assertEqual(DfaSyntaxError("x", 3).exit_code, 1)
        for error in (NotInLanguageError("x"), PreconditionError("x"), AmbiguousError("x", 4),
                      UnsupportedOperationError("x"), GuardExceededError("x")):
            self.assertEqual(error.exit_code, 2)

    def test_describe_error(self):
        """Diagnostics carry the error code."""
        self.assertEqual(describe_error(NotInLanguageError("ba is not in dyck")),
                         "error[NOT_IN_LANGUAGE]: ba is not in dyck")
        self.assertEqual(describe_error(DfaSyntaxError("bad", 3)), "error[DFA_SYNTAX_ERROR]: line 3: bad")

    def test_ambiguous_position(self):
        """Ambiguous errors remember where the decision failed."""
        self.assertEqual(AmbiguousError("close", 7).position, 7)


class TestConfig(unittest.TestCase):
    """Tests for the configuration layer."""

    def test_sections(self):
        """Every section is exposed."""
        self.assertEqual(set(config.get_config()),
                         {"app", "languages", "counting", "adherence", "reals", "oracle", "api"})
        self.assertGreater(config.REALS_CONFIG["rational_base_depth"], 0)

    def test_environment_overrides_defaults(self):
        """Environment variables win and are cast to the default's type."""
        with patch.dict(os.environ, {"NUMERANS_TEST_DEPTH": "5", "NUMERANS_TEST_FLAG": "true"}):
            self.assertEqual(config._setting("counting", "numeric_limit_depth", "NUMERANS_TEST_DEPTH", 200), 5)
            self.assertTrue(config._setting("app", "debug", "NUMERANS_TEST_FLAG", False))

    def test_yaml_defaults(self):
        """Unset variables fall back to config/defaults.yml."""
        self.assertEqual(config._setting("oracle", "enumeration_guard", "NUMERANS_UNSET_VARIABLE", 1),
                         10_000_000)


if __name__ == '__main__':
    unittest.main()
