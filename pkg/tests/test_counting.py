"""
Tests for the counting service: u, v, closed forms and growth classification.
"""
import unittest
import sys
import os
import logging
import threading
from math import comb, pi, sqrt

# Add parent directory to path to allow imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from automata.base import DEAD
from automata.builtins import (BalancedDiff, DyckPrefix, DyckProper, FullBinary, HalfPrefixDemo, IntegerBase,
                               RationalBase32)
from automata.dfa_file import load_dfa_file
from data import AUTOMATA_DIR
from models.errors import InputError, UnsupportedOperationError
from services.counting_service import (CountCache, balanced_u_closed, classify, count_u, count_v, dyck_prefix_u_closed,
                                       dyck_u_closed)
from services.numeration_service import NumerationSystem
from services.ratio_service import rational_base_g

# Disable logging during tests
logging.disable(logging.CRITICAL)


def load(name):
    return load_dfa_file(str(AUTOMATA_DIR / f"{name}.dfa"))


class TestCounts(unittest.TestCase):
    """Tests for u and v on the builtins."""

    def setUp(self):
        self.dyck = NumerationSystem(DyckPrefix())
        self.proper = NumerationSystem(DyckProper())
        self.rational = NumerationSystem(RationalBase32())

    def test_dyck_prefix_counts(self):
        """u(6) = 20, v(6) = 43, v(15) = 13495."""
        self.assertEqual(count_u(self.dyck, 0, 6), 20)
        self.assertEqual(count_v(self.dyck, 0, 6), 43)
        self.assertEqual(count_v(self.dyck, 0, 15), 13495)

    def test_dyck_prefix_first_values(self):
        """u_p0(n) = C(n, floor(n/2))."""
        expected_u = [1, 1, 2, 3, 6, 10, 20, 35, 70, 126, 252, 462, 924, 1716, 3432, 6435]
        expected_v = [1, 2, 4, 7, 13, 23, 43, 78, 148, 274, 526, 988, 1912, 3628, 7060, 13495]
        self.assertEqual([count_u(self.dyck, 0, n) for n in range(16)], expected_u)
        self.assertEqual([count_v(self.dyck, 0, n) for n in range(16)], expected_v)
        for n in range(40):
            self.assertEqual(count_u(self.dyck, 0, n), comb(n, n // 2))

    def test_dyck_words(self):
        """Fourteen Dyck words of length 8."""
        self.assertEqual(count_u(self.proper, 0, 8), 14)
        self.assertEqual(count_u(self.proper, 0, 7), 0)

    def test_rational_base_counts(self):
        """u(3) = 2 and v(n) = G_n."""
        self.assertEqual(count_u(self.rational, 0, 3), 2)
        self.assertEqual(count_v(self.rational, 0, 8), 41)
        for n in range(31):
            self.assertEqual(count_v(self.rational, 0, n), rational_base_g(n))

    def test_dead_counts_nothing(self):
        """The dead sentinel accepts no word."""
        self.assertEqual(count_u(self.dyck, DEAD, 4), 0)
        self.assertEqual(count_v(self.dyck, DEAD, 4), 0)

    def test_negative_length(self):
        """Lengths are nonnegative."""
        with self.assertRaises(InputError):
            count_u(self.dyck, 0, -1)

    def test_cache_reuse(self):
        """Series grow in place and keep earlier values."""
        cache = CountCache(DyckPrefix())
        self.assertEqual(cache.u(0, 10), 252)
        self.assertEqual(cache.u(0, 4), 6)
        self.assertEqual(cache.v(2, 0), 1)
        self.assertEqual(len(cache), 2)

    def test_concurrent_readers(self):
        """Readers racing a growing series always find both u and v."""
        cache = CountCache(DyckPrefix())
        cache.u(0, 0)
        series = cache._series[0]
        errors = []
        done = threading.Event()

        def read():
            while not done.is_set():
                length = len(series.u) - 1
                try:
                    cache.u(0, length)
                    cache.v(0, length)
                except IndexError as error:
                    errors.append(error)

        interval = sys.getswitchinterval()
        sys.setswitchinterval(1e-6)
        readers = [threading.Thread(target=read) for _ in range(4)]
        try:
            for reader in readers:
                reader.start()
            cache.v(0, 1500)
        finally:
            done.set()
            for reader in readers:
                reader.join()
            sys.setswitchinterval(interval)
        self.assertEqual(errors, [])
        self.assertEqual(cache.v(0, 1500), cache.v(0, 1499) + cache.u(0, 1500))

    def test_letter_recurrence(self):
        """u_q(n) is the sum of u over the successors of q."""
        specs = [FullBinary(), IntegerBase(3), DyckPrefix(), DyckProper(), RationalBase32(), BalancedDiff(),
                 HalfPrefixDemo(), load("a_star_b_star"), load("two_cycles"), load("two_final_cycles")]
        for spec in specs:
            cache = CountCache(spec)
            for n in range(1, 15):
                expected = sum(cache.u(target, n - 1) for _, target in spec.successors(spec.initial))
                self.assertEqual(cache.u(spec.initial, n), expected, f"{spec.name}, n={n}")
                self.assertEqual(cache.v(spec.initial, n), cache.v(spec.initial, n - 1) + cache.u(spec.initial, n))

    def test_dyck_asymptotic(self):
        """u_p0(2n) sqrt(pi n) / 4^n tends to 1."""
        n = 2000
        ratio = count_u(self.dyck, 0, 2 * n) / 4 ** n * sqrt(pi * n)
        self.assertAlmostEqual(ratio, 1.0, delta=1e-3)


class TestClosedForms(unittest.TestCase):
    """Tests for the closed-form counts."""

    def test_dyck_closed_form(self):
        """Ballot numbers."""
        self.assertEqual(dyck_u_closed(0, 8), 14)
        self.assertEqual(dyck_u_closed(1, 1), 1)
        self.assertEqual(dyck_u_closed(2, 6), 9)
        self.assertEqual(dyck_u_closed(2, 5), 0)
        with self.assertRaises(InputError):
            dyck_u_closed(-1, 3)

    def test_dyck_closed_form_matches_counts(self):
        """Closed forms agree with path counting from every level."""
        proper = CountCache(DyckProper())
        prefix = CountCache(DyckPrefix())
        for m in range(7):
            for n in range(17):
                self.assertEqual(dyck_u_closed(m, n), proper.u(m, n), (m, n))
                self.assertEqual(dyck_prefix_u_closed(m, n), prefix.u(m, n), (m, n))

    def test_dyck_prefix_closed_value(self):
        """From level 0, 20 words of length 6."""
        self.assertEqual(dyck_prefix_u_closed(0, 6), 20)

    def test_descent_recurrence(self):
        """u_pm(n) = 2 u_pm(n-1) - u_dm(n-1)."""
        proper = CountCache(DyckProper())
        prefix = CountCache(DyckPrefix())
        for m in range(7):
            for n in range(m + 1, 17):
                self.assertEqual(prefix.u(m, n), 2 * prefix.u(m, n - 1) - proper.u(m, n - 1), (m, n))

    def test_balanced_closed_form(self):
        """Central binomials at even lengths, doubled neighbours at odd lengths."""
        cache = CountCache(BalancedDiff())
        for n in range(22):
            self.assertEqual(balanced_u_closed(n), cache.u(0, n), n)

    def test_rational_base_g(self):
        """G_n = ceil(3 G_(n-1) / 2)."""
        self.assertEqual([rational_base_g(n) for n in range(9)], [1, 2, 3, 5, 8, 12, 18, 27, 41])


class TestClassify(unittest.TestCase):
    """Tests for growth classification of finite automata."""

    def test_full_binary(self):
        """Two loops on one state grow exponentially."""
        growth = classify(load("full_binary"))
        self.assertEqual(growth.kind, "Exponential")
        self.assertTrue(growth.uncountable_adherence)
        self.assertTrue(growth.uncountable_linfty)

    def test_builtin_finite_automata(self):
        """Builtins with a finite state list can be classified too."""
        self.assertEqual(classify(FullBinary()).kind, "Exponential")
        self.assertEqual(classify(IntegerBase(2)).kind, "Exponential")

    def test_a_star_b_star(self):
        """Two chained single loops: polynomial of degree at most 1."""
        growth = classify(load("a_star_b_star"))
        self.assertEqual(growth.kind, "Polynomial")
        self.assertEqual(growth.degree_bound, 1)
        self.assertFalse(growth.uncountable_adherence)
        self.assertFalse(growth.uncountable_linfty)
        self.assertEqual(str(growth), "Polynomial(degree<=1)")

    def test_unreachable_states_do_not_matter(self):
        """Inaccessible components leave the class unchanged."""
        self.assertEqual(classify(load("a_star_b_star_unreachable")), classify(load("a_star_b_star")))

    def test_two_cycles(self):
        """A loop and a 2-cycle through the same state."""
        growth = classify(load("two_cycles"))
        self.assertEqual(growth.kind, "Exponential")
        self.assertTrue(growth.uncountable_adherence)

    def test_two_final_cycles(self):
        """Two cycles through a final state make L-infinity uncountable."""
        growth = classify(load("two_final_cycles"))
        self.assertEqual(growth.kind, "Exponential")
        self.assertTrue(growth.uncountable_linfty)

    def test_finite_language(self):
        """No cycle at all."""
        growth = classify(load("finite_language"))
        self.assertEqual(growth.kind, "Polynomial")
        self.assertEqual(growth.degree_bound, 0)

    def test_infinite_automaton_refused(self):
        """Lazily generated automata cannot be classified."""
        with self.assertRaises(UnsupportedOperationError):
            classify(DyckPrefix())


if __name__ == '__main__':
    unittest.main()
