"""
Unit tests for ends and Busemann values
"""

import sys
import os
import unittest

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from treegeo.ends import RayEnd, busemann_table, busemann_value, distinguished_end
from treegeo.tree import build_regular
from utils.errors import DeepenTruncationError, InputError


class TestBusemann(unittest.TestCase):
    def setUp(self):
        """Set up test environment"""
        self.tree = build_regular(2, 3)
        self.down = RayEnd(self.tree.spine(0))

    def test_anchor_normalization(self):
        """Test b(anchor) = 0 for several ends"""
        for end in (self.down, RayEnd(self.tree.spine(1), branch=(1, 0)), distinguished_end(self.tree)):
            self.assertEqual(busemann_value(self.tree, end.anchor, end), 0)

    def test_distinguished_end(self):
        """Test the spine end gives height minus anchor height"""
        end = distinguished_end(self.tree, 1)
        for v in self.tree.vertices():
            self.assertEqual(busemann_value(self.tree, v, end), self.tree.height(v) - 1)

    def test_descending_end(self):
        """Test values of the descending end from x_0"""
        self.assertEqual(busemann_value(self.tree, self.tree.spine(1), self.down), -1)
        self.assertEqual(busemann_value(self.tree, self.tree.spine(-2), self.down), 2)
        off_ray = self.tree.children(self.tree.spine(0))[1]
        self.assertEqual(busemann_value(self.tree, off_ray, self.down), -1)

    def test_branch(self):
        """Test a branch changes which child continues the ray"""
        end = RayEnd(self.tree.spine(0), branch=(1,))
        self.assertEqual(busemann_value(self.tree, self.tree.spine(-1), end), -1)
        self.assertEqual(busemann_value(self.tree, self.tree.children(self.tree.spine(0))[1], end), 1)

    def test_ray_values(self):
        """Test the t-th ray vertex has value t"""
        end = RayEnd(self.tree.spine(1), branch=(1, 1))
        for t, v in enumerate(end.ray(self.tree)):
            self.assertEqual(busemann_value(self.tree, v, end), t)

    def test_reverse_triangle(self):
        """Test |b(v) - b(w)| <= d(v, w)"""
        tree = build_regular(2, 2)
        for end in (RayEnd(tree.spine(0)), RayEnd(tree.spine(1), branch=(1,)), distinguished_end(tree)):
            table = busemann_table(tree, end)
            for v in tree.vertices():
                for w in tree.vertices():
                    self.assertLessEqual(abs(table[v] - table[w]), tree.distance(v, w))

    def test_truncation_errors(self):
        """Test branches that leave the truncation or are not children"""
        tree = build_regular(2, 1)
        with self.assertRaises(DeepenTruncationError):
            busemann_value(tree, tree.spine(0), RayEnd(tree.spine(0), branch=(0, 0)))
        with self.assertRaises(InputError):
            busemann_value(tree, tree.spine(0), RayEnd(tree.spine(0), branch=(5,)))
        with self.assertRaises(InputError):
            busemann_value(tree, tree.spine(0), RayEnd(tree.spine(0), ascending=True, branch=(1,)))


if __name__ == "__main__":
    unittest.main()
