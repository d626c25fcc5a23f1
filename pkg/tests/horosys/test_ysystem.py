"""
Unit tests for the horosphere system
"""

import sys
import os
import unittest
from fractions import Fraction

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from cohomo.assembly import hcu_assemble
from horosys.ysystem import YSystem, horosphere_rank, window_lim_check, y_submodule
from prodcomplex.complex import ProductComplex
from utils.errors import InputError


class TestYSystem(unittest.TestCase):
    def setUp(self):
        """Set up test environment"""
        self.square = ProductComplex.regular(2, 2, 2)
        self.system = YSystem(self.square)

    def test_closed_form(self):
        """Test the closed-form horosphere ranks"""
        self.assertEqual(horosphere_rank(2, 2, 2, 1), 32)
        self.assertEqual(horosphere_rank(1, 2, 2, 0), 4)
        self.assertEqual(horosphere_rank(2, 2, 2, 4), 0)
        self.assertEqual(horosphere_rank(2, 2, 2, -10), 256)

    def test_ranks_match_oracle(self):
        """Test rank S_n against the closed form"""
        self.assertEqual(self.system.rank, 256)
        for n in (0, 1, 2):
            self.assertEqual(self.system.s(n).rank, self.system.rank_oracle(n))

    def test_oracle_needs_unit_weights(self):
        """Test the closed form is withheld for weighted factors"""
        weighted = YSystem(ProductComplex.regular(2, 2, 2, weights=[2, 1]))
        self.assertIsNone(weighted.rank_oracle(1))

    def test_nesting_and_purity(self):
        """Test S_{n+1} inside S_n and torsion-free quotients"""
        result = self.system.nesting(range(-1, 5))
        self.assertTrue(result["passed"], result)
        for n in range(0, 4):
            self.assertTrue(self.system.purity(n))

    def test_derivations_agree(self):
        """Test both derivations on a single tree"""
        line = YSystem(ProductComplex.regular(1, 2, 2))
        for n in (0, 1):
            result = line.agreement(n)
            self.assertTrue(result["passed"], result)
        self.assertEqual(y_submodule(ProductComplex.regular(1, 2, 2), 0).rank, 4)

    def test_w_space_tower(self):
        """Test quotients by S_n form a tower with vanishing lim^1 window"""
        tower = self.system.w_space_tower([0, 1, 2])
        descriptors = tower.descriptors()
        self.assertEqual(descriptors[0].free_rank, 256 - self.system.s(0).rank)
        self.assertTrue(all(d.is_free for d in descriptors))
        self.assertTrue(tower.lim1_window().is_zero)
        report = hcu_assemble({2: tower}, d=2)
        self.assertEqual(report["support"], [2])
        self.assertTrue(report["passed"])
        with self.assertRaises(InputError):
            self.system.w_space_tower([0, 2])

    def test_window_check(self):
        """Test S_m misses the stage-0 corner classes once m > 2"""
        complex_ = ProductComplex.regular(2, 2, 3)
        result = window_lim_check(complex_, 0, 3)
        self.assertTrue(result["applicable"])
        self.assertTrue(result["passed"], result)
        self.assertEqual(result["level"], 0)

    def test_window_check_deep(self):
        """Test the window check at depth four"""
        complex_ = ProductComplex.regular(2, 2, 4)
        result = window_lim_check(complex_, 0, 3)
        self.assertTrue(result["passed"], result)
        self.assertEqual(result["level"], -1)

    def test_window_check_single_tree(self):
        """Test the window check on one tree"""
        line = ProductComplex.regular(1, 2, 3)
        result = window_lim_check(line, 0, 2)
        self.assertTrue(result["passed"], result)
        self.assertEqual(result["span_rank"], 2)

    def test_window_check_not_applicable(self):
        """Test heights at or below beta on K_{n+1} are skipped"""
        result = window_lim_check(ProductComplex.regular(2, 2, 3), 0, Fraction(2))
        self.assertFalse(result["applicable"])
        with self.assertRaises(InputError):
            window_lim_check(self.square, 3, 10)


if __name__ == "__main__":
    unittest.main()
