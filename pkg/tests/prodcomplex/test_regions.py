"""
Unit tests for regions
"""

import sys
import os
import unittest
from fractions import Fraction

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from prodcomplex.cells import cell_dimension, edge_code, vertex_code
from prodcomplex.complex import ProductComplex, boundary_matrix, is_face_closed, region_cells
from prodcomplex.horoballs import HoroballSpec
from prodcomplex.regions import (CornerBlock, KBlock, MultiComplement, Sublevel, Superlevel, Whole, YHat,
                                 parse_region)
from utils.errors import DeepenTruncationError, InputError


class TestRegions(unittest.TestCase):
    def setUp(self):
        """Set up test environment"""
        self.small = ProductComplex.regular(2, 2, 1)
        self.complex = ProductComplex.regular(2, 2, 2)

    def test_superlevel_above_max_is_empty(self):
        """Test B_r is empty above the top of the truncation"""
        self.assertEqual(region_cells(self.small, Superlevel(Fraction(3))), [])

    def test_sublevel_above_max_is_everything(self):
        """Test X_r is the whole truncation once r >= max beta"""
        self.assertEqual(len(region_cells(self.small, Sublevel(Fraction(2)))), 49 + 84 + 36)

    def test_single_complement_is_sublevel(self):
        """Test the complement of the distinguished horoball at 0 is X_0"""
        spec = HoroballSpec.distinguished(self.complex, 0)
        complement = region_cells(self.complex, MultiComplement((spec,)))
        sublevel = region_cells(self.complex, Sublevel(Fraction(0)))
        self.assertEqual(complement, sublevel)
        for cell in complement:
            self.assertLessEqual(self.complex.beta_range(cell)[1], 0)

    def test_face_closure(self):
        """Test every region is closed under faces"""
        spec = HoroballSpec.distinguished(self.small, 1)
        regions = [Whole(), Superlevel(Fraction(0)), Sublevel(Fraction(1, 2)), KBlock(1),
                   CornerBlock(Fraction(0), 1), YHat(Fraction(0)), MultiComplement((spec,))]
        for region in regions:
            cells = self.small.cell_set(region_cells(self.small, region))
            self.assertTrue(is_face_closed(self.small, cells), str(region))

    def test_boundary_squares_to_zero_on_regions(self):
        """Test boundary composed with boundary vanishes on regions"""
        for region in (Superlevel(Fraction(0)), Sublevel(Fraction(0)), YHat(Fraction(0))):
            first = boundary_matrix(self.small, region, 1)
            second = boundary_matrix(self.small, region, 2)
            self.assertTrue((first @ second).is_zero())

    def test_kblock(self):
        """Test K_1 inside the depth-2 truncation is (C_1)^2"""
        cells = region_cells(self.complex, KBlock(1))
        self.assertEqual(len(cells), 13 * 13)
        self.assertEqual(len([c for c in cells if cell_dimension(c) == 2]), 36)

    def test_yhat_block(self):
        """Test the closure of the four squares with lowest corner on level 0"""
        cells = region_cells(self.small, YHat(Fraction(0)))
        self.assertEqual(len(cells), 25)
        squares = [c for c in cells if cell_dimension(c) == 2]
        self.assertEqual(len(squares), 4)
        for square in squares:
            self.assertEqual(self.small.beta_range(square)[0], 0)

    def test_corner_block(self):
        """Test C(m) stays below the corner and above the level r"""
        region = CornerBlock(Fraction(0), 1)
        tree = self.complex.factors[0]
        x1 = tree.spine(1)
        cells = region_cells(self.complex, region)
        self.assertTrue(cells)
        for cell in cells:
            self.assertGreaterEqual(self.complex.beta_range(cell)[0], 0)
            for code in cell:
                self.assertTrue(tree.is_below(code >> 1, x1))
        upper = [c for c in cells if region.excludes(self.complex, c)]
        self.assertIn((vertex_code(x1), vertex_code(x1)), upper)
        self.assertNotIn((edge_code(x1), vertex_code(x1)), cells)

    def test_corner_block_needs_depth(self):
        """Test a corner block reaching below the truncation asks for more depth"""
        with self.assertRaises(DeepenTruncationError) as context:
            region_cells(self.complex, CornerBlock(Fraction(-3), 1))
        self.assertEqual(context.exception.required, 4)

    def test_parse_region(self):
        """Test region names from the command line"""
        self.assertEqual(parse_region("whole"), Whole())
        self.assertEqual(parse_region("superlevel:1/2"), Superlevel(Fraction(1, 2)))
        self.assertEqual(parse_region("corner:0:2"), CornerBlock(Fraction(0), 2))
        self.assertEqual(parse_region("kblock:1"), KBlock(1))
        with self.assertRaises(InputError):
            parse_region("ball:1")
        with self.assertRaises(InputError):
            parse_region("kblock:x")

    def test_to_dict(self):
        """Test region serialization"""
        self.assertEqual(Superlevel(Fraction(1, 2)).to_dict(), {"kind": "superlevel", "r": "1/2"})
        self.assertEqual(Whole().to_dict(), {"kind": "whole"})


if __name__ == "__main__":
    unittest.main()
