"""
Unit tests for fiber covers
"""

import sys
import os
import unittest
from fractions import Fraction

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from prodcomplex.complex import ProductComplex
from prodcomplex.fibers import dichotomy, exit_edge, fiber_cover, fiber_identity, fiber_parameters, verify_cover
from prodcomplex.horoballs import HoroballSpec
from prodcomplex.regions import MultiComplement
from treegeo.ends import RayEnd
from utils.errors import InputError


class TestFibers(unittest.TestCase):
    def setUp(self):
        """Set up test environment"""
        self.complex = ProductComplex.regular(2, 2, 2)
        self.tree = self.complex.factors[0]
        down = tuple(RayEnd(t.spine(0)) for t in self.complex.factors)
        self.specs = (HoroballSpec.distinguished(self.complex, 2), HoroballSpec(down, 2))
        self.region = MultiComplement(self.specs)

    def test_parameters_on_spine(self):
        """Test s^e for the spine edge from x_0 to x_1 is r - lambda_w"""
        complex_ = ProductComplex.regular(2, 2, 2, weights=[2, 1])
        spec = HoroballSpec.distinguished(complex_, 3)
        tree = complex_.factors[0]
        x0 = tree.spine(0)
        sibling = tree.children(tree.spine(1))[1]
        self.assertEqual(fiber_parameters(complex_, 0, x0, [spec]), [Fraction(1)])
        self.assertEqual(fiber_parameters(complex_, 0, sibling, [spec]), [Fraction(1)])

    def test_exit_edge(self):
        """Test the exit edge toward the distinguished end is the upward edge"""
        x0 = self.tree.spine(0)
        self.assertEqual(exit_edge(self.complex, 0, x0, self.specs[0]), x0)
        down_exit = exit_edge(self.complex, 0, x0, self.specs[1])
        self.assertEqual(down_exit, self.tree.spine(-1))

    def test_fiber_identity(self):
        """Test every edge fiber is the smaller multi-horoball complement"""
        cover = fiber_cover(self.complex, 0, self.region)
        result = fiber_identity(cover)
        self.assertTrue(result["passed"], result)
        self.assertEqual(result["edges"], self.tree.size - 1)

    def test_cover(self):
        """Test the F_e cover W and F_y meet F_z in F_e"""
        for w in (0, 1):
            cover = fiber_cover(self.complex, w, self.region)
            result = verify_cover(cover)
            self.assertTrue(result["passed"], result)
            self.assertGreater(result["interior_vertices"], 0)

    def test_edge_set_inside_region(self):
        """Test each F_e is a subset of W"""
        cover = fiber_cover(self.complex, 0, self.region)
        for e in self.tree.edges():
            self.assertTrue(cover.edge_set(e) <= cover.cells)

    def test_dichotomy(self):
        """Test at most two s-values with a unique minimum at interior vertices"""
        result = dichotomy(self.complex, 0, self.specs)
        self.assertTrue(result["passed"], result)
        self.assertGreater(result["checked"], 0)

    def test_single_factor_rejected(self):
        """Test fiber constructions need two factors"""
        line = ProductComplex.regular(1, 2, 2)
        spec = HoroballSpec.distinguished(line, 0)
        with self.assertRaises(InputError):
            fiber_cover(line, 0, MultiComplement((spec,)))


if __name__ == "__main__":
    unittest.main()
