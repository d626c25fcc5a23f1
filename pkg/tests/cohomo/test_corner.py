"""
Unit tests for the corner model
"""

import sys
import os
import unittest

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from cohomo.corner import CornerCheck, CornerModel, LevelSpace, corner_crosscheck, segment_edges
from exactalg.rings import RATIONALS
from prodcomplex.complex import ProductComplex
from utils.errors import InputError


class TestCornerModel(unittest.TestCase):
    def setUp(self):
        """Set up test environment"""
        self.line = ProductComplex.regular(1, 2, 2)
        self.square = ProductComplex.regular(2, 2, 2)

    def test_lambda_sizes(self):
        """Test |Lambda_n| = q^{2nd}"""
        self.assertEqual(len(CornerModel(self.line, 1)), 4)
        self.assertEqual(len(CornerModel(self.line, 2)), 16)
        self.assertEqual(len(CornerModel(self.square, 1)), 16)
        self.assertEqual(len(CornerModel(self.square, 2)), 256)

    def test_stage_zero(self):
        """Test K_0 is a single corner with an empty cube"""
        model = CornerModel(self.square, 0)
        tree = self.square.factors[0]
        self.assertEqual(model.lambda_n, [(tree.spine(0), tree.spine(0))])
        self.assertEqual(model.corner_cube(model.lambda_n[0]), [])

    def test_corner_cube(self):
        """Test F_v has (2n)^d cells"""
        model = CornerModel(self.square, 2)
        v = model.lambda_n[5]
        self.assertEqual(len(model.corner_cube(v)), 16)
        tree = self.line.factors[0]
        bottom = tree.spine(-2)
        self.assertEqual(segment_edges(tree, bottom, tree.spine(2)),
                         [tree.spine(-2), tree.spine(-1), tree.spine(0), tree.spine(1)])

    def test_transition_preimages(self):
        """Test f_n sends a point mass to the q^d tuples ascending onto it"""
        model = CornerModel(self.square, 1)
        following = CornerModel(self.square, 2)
        v = model.lambda_n[0]
        image = model.apply_transition(following, {v: 1})
        self.assertEqual(len(image), 4)
        for w in image:
            self.assertEqual(self.square.ascend_all(w), v)
        matrix = model.transition(following)
        self.assertEqual(matrix.shape, (256, 16))
        for column in matrix.col_map().values():
            self.assertEqual(len(column), 4)
        with self.assertRaises(InputError):
            following.transition(model)

    def test_transition_report(self):
        """Test f_n is injective with free cokernel"""
        report = CornerCheck(self.line).transition_report(1)
        self.assertTrue(report["passed"])
        self.assertEqual(report["ones_per_column"], [2])

    def test_crosscheck_single_tree(self):
        """Test the corner isomorphism and coherence on one tree"""
        line = ProductComplex.regular(1, 2, 3)
        for n in (1, 2):
            result = corner_crosscheck(line, n)
            self.assertTrue(result["passed"], result)
        self.assertTrue(corner_crosscheck(line, 1, RATIONALS)["passed"])

    def test_crosscheck_square(self):
        """Test the corner isomorphism at stages 1 and 2 for two factors"""
        result = corner_crosscheck(self.square, 1)
        self.assertTrue(result["passed"], result)
        self.assertEqual(result["isomorphism"][0]["lambda"], 16)
        self.assertEqual(result["isomorphism"][1]["rank"], 256)

    def test_level_space_matches_lambda(self):
        """Test level -N coordinates follow the order of Lambda_N"""
        model = CornerModel(self.square, 2)
        space = LevelSpace(self.square, -2)
        self.assertEqual(space.rank, 256)
        for v, index in model.index.items():
            self.assertEqual(space.flat_index(v), index)

    def test_level_space_tensor(self):
        """Test the indicator of a descendant set at a coarser level"""
        tree = self.line.factors[0]
        fine = LevelSpace(self.line, -2)
        coarse = LevelSpace(self.line, 0)
        x0 = tree.spine(0)
        self.assertEqual(len(fine.tensor((x0,))), 4)
        self.assertEqual(coarse.tensor((x0,)), [coarse.flat_index((x0,))])
        with self.assertRaises(InputError):
            coarse.tensor((tree.spine(-1),))
        with self.assertRaises(InputError):
            LevelSpace(self.line, -3)


if __name__ == "__main__":
    unittest.main()
