"""
Unit tests for Smith normal form
"""

import sys
import os
import random
import unittest

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from exactalg.oracle import minors_divisors as minors_oracle, random_sparse
from exactalg.rings import INTEGERS, RATIONALS, integers_away_from, prime_field
from exactalg.smith import kernel_basis, smith
from exactalg.sparse import SparseIntMatrix
from utils.errors import InputError


class TestSmith(unittest.TestCase):
    def setUp(self):
        """Set up test environment"""
        self.rng = random.Random(20240517)

    def assert_transforms(self, matrix, decomposition):
        u = decomposition.left
        v = decomposition.right
        product = u @ matrix @ v
        expected = SparseIntMatrix(matrix.rows, matrix.cols,
                                   {(k, k): x for k, x in enumerate(decomposition.diagonal)},
                                   allow_fractions=True)
        self.assertEqual(product, expected)
        self.assertEqual(u @ decomposition.left_inverse, SparseIntMatrix.identity(matrix.rows))
        self.assertEqual(v @ decomposition.right_inverse, SparseIntMatrix.identity(matrix.cols))

    def test_identity(self):
        """Test the identity matrix has unit divisors"""
        self.assertEqual(smith(SparseIntMatrix.identity(2)).divisors, (1, 1))

    def test_zero_matrix(self):
        """Test the zero matrix has no divisors"""
        result = smith(SparseIntMatrix.zeros(1, 1))
        self.assertEqual(result.divisors, ())
        self.assertEqual(result.rank, 0)

    def test_small_example(self):
        """Test [[2,4],[6,8]] has divisors 2 and 4"""
        matrix = SparseIntMatrix.from_dense([[2, 4], [6, 8]])
        result = smith(matrix, transforms=True)
        self.assertEqual(result.divisors, (2, 4))
        self.assert_transforms(matrix, result)

    def test_gcd_merge_and_divisibility_pass(self):
        """Test non-divisible entries and non-chain diagonals"""
        self.assertEqual(smith(SparseIntMatrix.from_dense([[2, 3]])).divisors, (1,))
        self.assertEqual(smith(SparseIntMatrix.from_dense([[2, 0], [0, 3]])).divisors, (1, 6))
        matrix = SparseIntMatrix.from_dense([[4, 0], [0, 6]])
        result = smith(matrix, transforms=True)
        self.assertEqual(result.divisors, (2, 12))
        self.assert_transforms(matrix, result)

    def test_rectangular_transforms(self):
        """Test U A V is diagonal for a rectangular matrix"""
        dense = [[4, 6, 0, 0], [0, 0, 10, 0], [0, 15, 0, 9]]
        matrix = SparseIntMatrix.from_dense(dense)
        result = smith(matrix, transforms=True)
        self.assertEqual(result.divisors, minors_oracle(dense))
        self.assert_transforms(matrix, result)

    def test_against_minors_oracle(self):
        """Test divisors against the gcd-of-minors oracle on random matrices"""
        for _ in range(40):
            rows = self.rng.randint(1, 4)
            cols = self.rng.randint(1, 4)
            dense = random_sparse(self.rng, rows, cols)
            matrix = SparseIntMatrix.from_dense(dense)
            result = smith(matrix, transforms=True)
            self.assertEqual(result.divisors, minors_oracle(dense), dense)
            self.assert_transforms(matrix, result)

    def test_divisibility_chain(self):
        """Test each divisor divides the next"""
        for _ in range(20):
            dense = random_sparse(self.rng, 6, 7, density=0.4, bound=20)
            divisors = smith(SparseIntMatrix.from_dense(dense)).divisors
            for a, b in zip(divisors, divisors[1:]):
                self.assertEqual(b % a, 0)

    def test_deterministic(self):
        """Test repeated runs give identical results"""
        dense = random_sparse(self.rng, 5, 5, bound=9)
        matrix = SparseIntMatrix.from_dense(dense)
        first = smith(matrix, transforms=True)
        second = smith(matrix, transforms=True)
        self.assertEqual(first, second)

    def test_other_rings(self):
        """Test prime fields, rationals and localizations"""
        matrix = SparseIntMatrix.from_dense([[2, 4], [6, 8]])
        self.assertEqual(smith(matrix, prime_field(2)).divisors, ())
        self.assertEqual(smith(matrix, prime_field(3)).divisors, (1, 1))
        self.assertEqual(smith(matrix, RATIONALS).divisors, (1, 1))
        self.assertEqual(smith(matrix, integers_away_from(2)).divisors, (1, 1))

        diagonal = SparseIntMatrix.from_dense([[6, 0], [0, 18]])
        self.assertEqual(smith(diagonal, integers_away_from(3)).divisors, (2, 2))
        self.assertEqual(smith(diagonal, integers_away_from(3)).diagonal, (6, 18))

    def test_field_transforms(self):
        """Test transforms over a prime field"""
        matrix = SparseIntMatrix.from_dense([[1, 2, 0], [2, 1, 1]])
        result = smith(matrix, prime_field(3), transforms=True)
        self.assertEqual(result.rank, 2)
        reduced = (result.left @ matrix @ result.right).map_entries(lambda x: x % 3)
        self.assertEqual(reduced, SparseIntMatrix(2, 3, {(0, 0): 1, (1, 1): 1}))

    def test_invalid_input(self):
        """Test non-matrix input is rejected"""
        with self.assertRaises(InputError):
            smith([[1, 2], [3, 4]])

    def test_kernel_basis(self):
        """Test kernel vectors are annihilated"""
        matrix = SparseIntMatrix.from_dense([[1, 1, 0], [0, 2, 2]])
        kernel = kernel_basis(matrix, INTEGERS)
        self.assertEqual(len(kernel), 1)
        for vector in kernel:
            self.assertEqual(matrix.matvec(vector), {})


if __name__ == "__main__":
    unittest.main()
