"""
Unit tests for truncation pairs and exhaustion towers
"""

import sys
import os
import unittest
from fractions import Fraction

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from cohomo.pairs import (ExhaustionTower, TruncationPair, corner_block_cohomology, eventual_death_check,
                          persistence_check, relative_cohomology)
from exactalg.descriptors import ModuleDescriptor
from exactalg.rings import RATIONALS
from exactalg.sparse import SparseIntMatrix
from prodcomplex.complex import ProductComplex
from prodcomplex.regions import Sublevel, Superlevel, Whole
from utils.errors import DeepenTruncationError, InputError


class TestPairs(unittest.TestCase):
    def setUp(self):
        """Set up test environment"""
        self.square = ProductComplex.regular(2, 2, 1)
        self.line = ProductComplex.regular(1, 2, 3)

    def test_whole_stage_one(self):
        """Test H^*(X, X'_1) is free of rank 16 in degree 2 only"""
        result = relative_cohomology(self.square, Whole(), 1)
        self.assertEqual(result[2], ModuleDescriptor(16, ()))
        self.assertTrue(result[0].is_zero)
        self.assertTrue(result[1].is_zero)
        self.assertEqual(result.support(), [2])
        self.assertTrue(result.concentrated_in(2))

    def test_rational_rank_agrees(self):
        """Test the top free rank is the same over Q"""
        result = relative_cohomology(self.square, Whole(), 1, RATIONALS)
        self.assertEqual(result[2].free_rank, 16)

    def test_stage_zero_is_empty(self):
        """Test the stage-0 pair has no cells and no cohomology"""
        pair = TruncationPair.at_stage(self.square, Whole(), 0)
        self.assertEqual(pair.cells.counts(), [0, 0, 0])
        self.assertTrue(pair.cohomology().is_zero())

    def test_stage_bounds(self):
        """Test stages outside the truncation"""
        with self.assertRaises(DeepenTruncationError) as context:
            relative_cohomology(self.square, Whole(), 2)
        self.assertEqual(context.exception.required, 2)
        with self.assertRaises(InputError):
            relative_cohomology(self.square, Whole(), -1)

    def test_corner_block_vanishes(self):
        """Test H^*(C(m), upper boundary) is zero"""
        self.assertTrue(corner_block_cohomology(self.line, -1, 1).is_zero())
        self.assertTrue(corner_block_cohomology(self.line, 0, 2).is_zero())
        self.assertTrue(corner_block_cohomology(self.square, 0, 1).is_zero())

    def test_colimit_identity(self):
        """Test the colimit map of a stage to itself is the identity"""
        tower = ExhaustionTower(self.line, Whole())
        self.assertEqual(tower.colimit_map(2, 2, 1), SparseIntMatrix.identity(16))
        with self.assertRaises(InputError):
            tower.colimit_map(2, 1, 1)

    def test_naturality(self):
        """Test colimit maps compose along stages"""
        tower = ExhaustionTower(self.line, Whole())
        direct = tower.colimit_map(1, 3, 1)
        composed = tower.colimit_map(2, 3, 1) @ tower.colimit_map(1, 2, 1)
        self.assertEqual(direct, composed)
        self.assertEqual(direct.shape, (64, 4))

    def test_horoball_death(self):
        """Test every degree of B_r dies over a window of one stage"""
        complex_ = ProductComplex.regular(2, 2, 2)
        for r in (Fraction(0), Fraction(1)):
            tower = ExhaustionTower(complex_, Superlevel(r))
            for k in range(3):
                report = eventual_death_check(tower, k, 1)
                self.assertTrue(report.passed, report.to_dict())
                self.assertEqual(report.stages, [0, 1])

    def test_sublevel_degree_zero_death(self):
        """Test degree-0 classes of X_0 die on a single tree"""
        tower = ExhaustionTower(self.line, Sublevel(Fraction(0)))
        report = eventual_death_check(tower, 0, 1)
        self.assertTrue(report.passed, report.to_dict())

    def test_top_degree_persists(self):
        """Test degree-d classes of the whole space survive"""
        line = ProductComplex.regular(1, 2, 2)
        tower = ExhaustionTower(line, Whole())
        report = persistence_check(tower, 1, 1)
        self.assertTrue(report.passed)
        self.assertEqual(report.witness["stage"], 1)
        death = eventual_death_check(tower, 1, 1)
        self.assertFalse(death.passed)

    def test_window_validation(self):
        """Test windows must be positive and fit the truncation"""
        tower = ExhaustionTower(self.line, Whole())
        with self.assertRaises(InputError):
            eventual_death_check(tower, 1, 0)
        with self.assertRaises(DeepenTruncationError):
            eventual_death_check(tower, 1, 4)


if __name__ == "__main__":
    unittest.main()
