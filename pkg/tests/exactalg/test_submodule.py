"""
Unit tests for submodule calculus
"""

import sys
import os
import unittest

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from exactalg.descriptors import ModuleDescriptor
from exactalg.rings import INTEGERS, RATIONALS, integers_away_from, prime_field
from exactalg.submodule import Submodule, purity_check, submodule_ops, subquotient_descriptor
from utils.errors import ContractViolation, InputError


def span(vectors, ring=INTEGERS, rank=2):
    return Submodule.from_vectors(rank, [dict((i, x) for i, x in enumerate(v) if x) for v in vectors], ring)


class TestSubmodule(unittest.TestCase):
    def setUp(self):
        """Set up test environment"""
        self.even_axis = span([(2, 0)])
        self.diagonal = span([(1, 1)])
        self.antidiagonal = span([(1, -1)])

    def test_intersection_of_axes(self):
        """Test span{(2,0)} meets span{(0,3)} in zero"""
        result = submodule_ops(self.even_axis, span([(0, 3)]), "intersection")
        self.assertEqual(result.rank, 0)

    def test_diagonals(self):
        """Test the two diagonals meet trivially and sum to an index-2 lattice"""
        meet = submodule_ops(self.diagonal, self.antidiagonal, "intersection")
        self.assertEqual(meet.rank, 0)

        total = submodule_ops(self.diagonal, self.antidiagonal, "sum")
        self.assertTrue(total.contains({0: 2}))
        self.assertTrue(total.contains({0: 1, 1: 1}))
        self.assertFalse(total.contains({0: 1}))
        self.assertEqual(total.quotient_descriptor(), ModuleDescriptor(0, (2,)))

    def test_nontrivial_intersection(self):
        """Test an intersection with two generators"""
        a = span([(2, 0), (0, 1)])
        b = span([(3, 0), (0, 2)])
        self.assertTrue(a.intersection(b).equals(span([(6, 0), (0, 2)])))

    def test_membership(self):
        """Test membership and solving"""
        self.assertFalse(submodule_ops(self.even_axis, None, "membership", {0: 1}))
        self.assertTrue(submodule_ops(self.even_axis, None, "membership", {0: 4}))
        coefficients = self.even_axis.solve({0: 4})
        basis = self.even_axis.basis()
        rebuilt = {}
        for c, vector in zip(coefficients, basis):
            for i, x in vector.items():
                rebuilt[i] = rebuilt.get(i, 0) + c * x
        self.assertEqual({i: x for i, x in rebuilt.items() if x}, {0: 4})

    def test_rationals(self):
        """Test span{(2,0)} over Q contains (1,0)"""
        self.assertTrue(span([(2, 0)], RATIONALS).contains({0: 1}))

    def test_purity(self):
        """Test purity over Z, Z[1/2] and a field"""
        self.assertFalse(purity_check(self.even_axis))
        self.assertTrue(purity_check(self.diagonal))
        self.assertTrue(purity_check(span([(2, 0)], integers_away_from(2))))
        self.assertFalse(purity_check(span([(6, 0)], integers_away_from(2))))
        with self.assertLogs("exactalg.submodule", level="WARNING"):
            self.assertTrue(purity_check(span([(2, 0)], prime_field(3))))

    def test_purity_matches_quotient(self):
        """Test purity agrees with an empty torsion part of the quotient"""
        for module in (self.even_axis, self.diagonal, span([(2, 2), (0, 4)])):
            self.assertEqual(purity_check(module), module.quotient_descriptor().is_free)

    def test_subquotient(self):
        """Test Z^2 / span{(2,0),(0,3)} is cyclic of order 6"""
        full = Submodule.full(2)
        denominator = span([(2, 0), (0, 3)])
        self.assertEqual(subquotient_descriptor(full, denominator), ModuleDescriptor(0, (6,)))
        self.assertEqual(subquotient_descriptor(self.even_axis, span([(4, 0)])), ModuleDescriptor(0, (2,)))

    def test_subquotient_requires_containment(self):
        """Test a denominator outside the numerator is rejected"""
        with self.assertRaises(ContractViolation):
            subquotient_descriptor(self.even_axis, self.diagonal)

    def test_errors(self):
        """Test rank mismatch and unknown operations"""
        with self.assertRaises(InputError):
            submodule_ops(self.even_axis, span([(1, 0, 0)], rank=3), "sum")
        with self.assertRaises(InputError):
            submodule_ops(self.even_axis, self.diagonal, "product")
        with self.assertRaises(InputError):
            self.even_axis.contains({5: 1})


if __name__ == "__main__":
    unittest.main()
