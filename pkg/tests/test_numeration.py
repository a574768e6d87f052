"""
Tests for numeration systems: radix order, val and rep.
"""
import unittest
import sys
import os
import logging
from fractions import Fraction
from itertools import product

# Add parent directory to path to allow imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from automata.base import accepts
from automata.builtins import BalancedDiff, DyckPrefix, RationalBase32
from automata.dfa_file import load_dfa_file
from data import AUTOMATA_DIR
from models.errors import InputError, NotInLanguageError, PreconditionError
from models.values import Comparison
from services.numeration_service import NumerationSystem, radix_cmp, value_of, word_at
from services.oracle_service import enumerate_upto

# Disable logging during tests
logging.disable(logging.CRITICAL)


class TestRadixOrder(unittest.TestCase):
    """Tests for the genealogical order."""

    def setUp(self):
        self.system = NumerationSystem(DyckPrefix())

    def test_shorter_first(self):
        """Length decides before letters."""
        self.assertEqual(radix_cmp(self.system, ("b",), ("a", "b")), Comparison.LESS)
        self.assertEqual(radix_cmp(self.system, ("a", "b"), ("b",)), Comparison.GREATER)

    def test_lexicographic_within_length(self):
        """Equal lengths compare by letter rank."""
        self.assertEqual(radix_cmp(self.system, tuple("aab"), tuple("aba")), Comparison.LESS)
        self.assertEqual(radix_cmp(self.system, tuple("aab"), tuple("aab")), Comparison.EQUAL)

    def test_order_matches_values(self):
        """val is strictly increasing in radix order."""
        words = [w for length in range(7) for w in product("ab", repeat=length) if accepts(self.system.spec, w)]
        for first in words:
            for second in words:
                expected = radix_cmp(self.system, first, second)
                actual_first, actual_second = value_of(self.system, first), value_of(self.system, second)
                if expected == Comparison.LESS:
                    self.assertLess(actual_first, actual_second)
                elif expected == Comparison.EQUAL:
                    self.assertEqual(actual_first, actual_second)
                else:
                    self.assertGreater(actual_first, actual_second)


class TestValue(unittest.TestCase):
    """Tests for val."""

    def setUp(self):
        self.dyck = NumerationSystem(DyckPrefix())

    def test_dyck_values(self):
        """val(aab) = 5 and val(aabaab) = 32."""
        self.assertEqual(value_of(self.dyck, ()), 0)
        self.assertEqual(value_of(self.dyck, tuple("aab")), 5)
        self.assertEqual(value_of(self.dyck, tuple("aabaab")), 32)

    def test_balanced_value(self):
        """val(aab) = 5 in the balanced language."""
        self.assertEqual(value_of(NumerationSystem(BalancedDiff()), tuple("aab")), 5)

    def test_rational_base_value(self):
        """212 is the fifth word of the rational base language."""
        self.assertEqual(value_of(NumerationSystem(RationalBase32()), tuple("212")), 4)

    def test_not_in_language(self):
        """Rejected words have no value."""
        with self.assertRaises(NotInLanguageError):
            value_of(self.dyck, tuple("ba"))
        with self.assertRaises(NotInLanguageError):
            value_of(NumerationSystem(BalancedDiff()), tuple("aa"))

    def test_rational_base_formula(self):
        """val(w) = 1/2 sum w[i] (3/2)^(|w|-1-i) on the whole rational base language."""
        system = NumerationSystem(RationalBase32())
        words = enumerate_upto(system, 12).words
        for word in words:
            expected = Fraction(1, 2) * sum(int(d) * Fraction(3, 2) ** (len(word) - 1 - i)
                                            for i, d in enumerate(word))
            self.assertEqual(value_of(system, word), expected, word)
        self.assertEqual(len(words), 210)


class TestRepresentation(unittest.TestCase):
    """Tests for rep, the inverse of val."""

    def test_first_words(self):
        """rep(0) is the empty word, rep(5) = aab."""
        system = NumerationSystem(DyckPrefix())
        self.assertEqual(word_at(system, 0), ())
        self.assertEqual(word_at(system, 5), tuple("aab"))
        self.assertEqual(word_at(system, 32), tuple("aabaab"))

    def test_rational_base(self):
        """rep(3) = 210."""
        self.assertEqual(word_at(NumerationSystem(RationalBase32()), 3), ("2", "1", "0"))

    def test_bijection(self):
        """val(rep(n)) = n."""
        system = NumerationSystem(DyckPrefix())
        for n in range(5001):
            self.assertEqual(value_of(system, word_at(system, n)), n)

    def test_negative_value(self):
        """Values are nonnegative."""
        with self.assertRaises(InputError):
            word_at(NumerationSystem(DyckPrefix()), -1)

    def test_large_value(self):
        """Big integers are handled exactly."""
        system = NumerationSystem(DyckPrefix())
        n = 10 ** 30 + 7
        self.assertEqual(value_of(system, word_at(system, n)), n)


class TestSystem(unittest.TestCase):
    """Tests for building numeration systems."""

    def test_finite_language_refused(self):
        """A numeration system needs an infinite language."""
        spec = load_dfa_file(str(AUTOMATA_DIR / "finite_language.dfa"))
        with self.assertRaises(PreconditionError):
            NumerationSystem(spec)

    def test_parse_word(self):
        """Words are parsed with the system's alphabet."""
        system = NumerationSystem(RationalBase32())
        self.assertEqual(system.parse_word("210"), ("2", "1", "0"))
        with self.assertRaises(InputError):
            system.parse_word("3")


if __name__ == '__main__':
    unittest.main()
