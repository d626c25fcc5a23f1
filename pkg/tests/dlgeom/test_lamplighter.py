"""
Unit tests for the lamplighter action
"""

import sys
import os
import unittest

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from dlgeom.coding import DLVertex
from dlgeom.lamplighter import (LampElement, LampState, LamplighterCoding, beta_preserved, lamplighter_act,
                                transitivity_sample)
from utils.errors import DeepenTruncationError, InputError


class TestLamplighter(unittest.TestCase):
    def setUp(self):
        """Set up test environment"""
        self.coding = LamplighterCoding(2, 2)
        self.state = LampState.make(2, {-2: 1, 0: 1}, 1)

    def test_state_coding(self):
        """Test the state to pair translation and back"""
        u, v = self.coding.to_pair(self.state)
        self.assertEqual(u, DLVertex(1, (0,)))
        self.assertEqual(v, DLVertex(-1, (1, 0, 1)))
        self.assertEqual(self.coding.to_state((u, v)), self.state)

    def test_identity_acts_trivially(self):
        """Test the identity element fixes every pair"""
        pair = self.coding.to_pair(self.state)
        self.assertEqual(self.coding.act(LampElement.identity(2), pair), pair)

    def test_pure_shift_moves_heights(self):
        """Test k = 1 sends heights (0, 0) to (1, -1)"""
        pair = self.coding.to_pair(LampState.make(2, {}, 0))
        u, v = lamplighter_act(2, 2, {}, 1, pair)
        self.assertEqual((u.height, v.height), (1, -1))

    def test_action_matches_group_law(self):
        """Test the coded action agrees with left multiplication of states"""
        x = LampState.make(2, {0: 1}, 0)
        g = LampElement.make(2, {-1: 1}, 1)
        moved = g.act_state(x)
        self.assertEqual(moved, LampState.make(2, {-1: 1, 1: 1}, 1))
        self.assertEqual(self.coding.act(g, self.coding.to_pair(x)), self.coding.to_pair(moved))

    def test_composition_and_inverse(self):
        """Test (g h) x = g (h x) and g g^-1 = 1"""
        g = LampElement.make(3, {0: 1, 2: 2}, 1)
        h = LampElement.make(3, {-1: 2}, -2)
        x = LampState.make(3, {1: 1}, 0)
        self.assertEqual((g * h).act_state(x), g.act_state(h.act_state(x)))
        self.assertTrue((g * g.inverse()).is_identity())
        self.assertTrue((g.inverse() * g).is_identity())

    def test_budget_errors(self):
        """Test lamps pushed past the budget raise a deepen error"""
        with self.assertRaises(DeepenTruncationError):
            self.coding.act(LampElement.make(2, {}, 1), (DLVertex(0, (0, 1)), DLVertex(0, (0, 0))))
        with self.assertRaises(DeepenTruncationError):
            self.coding.act(LampElement.make(2, {5: 1}), (DLVertex(0, (0, 0)), DLVertex(0, (0, 0))))
        with self.assertRaises(DeepenTruncationError):
            self.coding.to_pair(LampState.make(2, {}, 3))
        with self.assertRaises(InputError):
            self.coding.to_state((DLVertex(0, (0, 0)), DLVertex(1, (0,))))

    def test_beta_preserved(self):
        """Test elements keep h(u) + h(v) on pairs off the zero level"""
        pairs = [(DLVertex(0, (1, 0)), DLVertex(1, (1,))), (DLVertex(-1, (0, 1, 1)), DLVertex(-1, (1, 0, 0)))]
        elements = [LampElement.make(2, {0: 1}, 0), LampElement.make(2, {-1: 1}, -1)]
        self.assertTrue(beta_preserved(self.coding, elements, pairs))

    def test_simple_transitivity_sample(self):
        """Test sampled simple transitivity on the zero horosphere"""
        result = transitivity_sample(2, 2, count=300, seed=1)
        self.assertTrue(result["passed"])
        self.assertEqual(result["sampled"], 300)


if __name__ == "__main__":
    unittest.main()
