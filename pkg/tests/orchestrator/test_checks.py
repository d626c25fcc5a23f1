"""
Unit tests for the verification checks
"""

import sys
import os
import unittest
from fractions import Fraction

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from orchestrator.check_engine import CheckEngine
from orchestrator.checks import (_oracle_towers, _window_heights, corner_model, diestel_leader, fiber_machinery,
                                 hcu_assembly, horoball_vanishing, multi_horoball_complement, snf_oracle,
                                 SuiteContext)
from orchestrator.models import Config


class TestChecks(unittest.TestCase):
    def setUp(self):
        """Set up test environment"""
        self.square = SuiteContext(Config(d=2, q=2, depth=2, death_window=1, radii=[0, 1], stages=[1]))

    def test_context_caches(self):
        """Test shared objects are built once"""
        self.assertIs(self.square.complex, self.square.complex)
        self.assertIs(self.square.system.complex, self.square.complex)
        self.assertEqual(self.square.base_params(),
                         {"d": 2, "q": [2, 2], "depth": 2, "weights": ["1", "1"], "ring": "Z"})

    def test_snf_oracle(self):
        """Test the SNF oracle check on a small batch"""
        context = SuiteContext(Config(oracle_matrices=20, oracle_max_size=5, seed=3))
        outcome = snf_oracle(context)
        self.assertEqual(outcome.result, "pass")
        self.assertEqual(outcome.params, {"matrices": 20, "max_size": 5, "seed": 3})

    def test_horoball_vanishing(self):
        """Test superlevel classes die on the square"""
        outcome = horoball_vanishing(self.square)
        self.assertEqual(outcome.result, "pass", outcome.data)
        self.assertEqual([t["r"] for t in outcome.data["towers"]], ["0", "1"])
        self.assertTrue(all(b["zero"] for b in outcome.data["corner_blocks"]))

    def test_horoball_vanishing_deepens_corner_blocks(self):
        """Test corner blocks below the truncation are computed on deeper trees"""
        context = SuiteContext(Config(d=2, q=2, depth=2, death_window=1, radii=[-1]))
        outcome = horoball_vanishing(context)
        self.assertEqual(outcome.result, "pass", outcome.data)
        self.assertEqual(outcome.params["corner_levels"], {"-1": [0, 1, 2]})
        self.assertEqual(outcome.params["block_depth"], 3)
        blocks = outcome.data["corner_blocks"]
        self.assertEqual([(b["m"], b["depth"]) for b in blocks], [(0, 2), (1, 2), (2, 3)])
        self.assertTrue(all(b["zero"] for b in blocks))
        self.assertEqual(outcome.data["unreached_blocks"], [])
        self.assertIs(context.deepened(2), context.complex)
        self.assertEqual(context.deepened(3).depth, 3)

    def test_horoball_vanishing_corner_cap(self):
        """Test blocks beyond corner_depth are listed instead of checked"""
        context = SuiteContext(Config(d=2, q=2, depth=2, death_window=1, radii=[-1], corner_depth=2))
        outcome = horoball_vanishing(context)
        self.assertEqual(outcome.params["corner_levels"], {"-1": [0, 1]})
        self.assertEqual(outcome.params["corner_depth"], 2)
        self.assertEqual(outcome.data["unreached_blocks"], [{"r": "-1", "m": 2, "depth": 3}])

    def test_corner_model(self):
        """Test the corner model cross-check at stage one"""
        outcome = corner_model(self.square)
        self.assertEqual(outcome.result, "pass")
        self.assertEqual(len(outcome.data["stages"]), 1)

    def test_corner_model_without_stages(self):
        """Test stages beyond the depth leave nothing to check"""
        context = SuiteContext(Config(depth=1, stages=[1]))
        self.assertEqual(corner_model(context).result, "not_applicable")

    def test_hcu_assembly(self):
        """Test the assembled tower of the square and the hand-built towers"""
        outcome = hcu_assembly(self.square)
        self.assertEqual(outcome.result, "pass", outcome.data)
        self.assertEqual(outcome.data["computed"]["support"], [2])
        self.assertEqual(outcome.params["source_stage"], 1)
        self.assertEqual(sorted(outcome.data["computed"]["degrees"]), ["0", "1", "2"])
        self.assertTrue(outcome.data["computed"]["inputs_concentrated"])
        self.assertEqual([o["tower"] for o in outcome.data["oracles"]], ["identity", "doubling"])

    def test_oracle_towers(self):
        """Test the hand-built towers have the expected windows"""
        for name, (window, lim, lim1) in _oracle_towers().items():
            self.assertEqual(window.lim_window(), lim, name)
            self.assertEqual(window.lim1_window(), lim1, name)

    def test_window_heights(self):
        """Test heights above the stage bound and up to the top stage"""
        self.assertEqual(_window_heights(Fraction(2), 0, 2), [Fraction(3), Fraction(4)])
        self.assertEqual(_window_heights(Fraction(2), 1, 2), [])
        self.assertEqual(_window_heights(Fraction(5, 2), 0, 3), [Fraction(3), Fraction(15, 2)])

    def test_not_applicable_without_horoballs(self):
        """Test horoball checks are skipped without horoballs"""
        self.assertEqual(multi_horoball_complement(self.square).result, "not_applicable")
        self.assertEqual(fiber_machinery(self.square).result, "not_applicable")
        line = SuiteContext(Config(d=1, depth=2))
        outcome = fiber_machinery(line)
        self.assertEqual(outcome.result, "not_applicable")
        self.assertIn("two factors", outcome.data["reason"])

    def test_fiber_machinery_stages(self):
        """Test the kernel needs fiber classes, which first appear at stage N - 1"""
        horoballs = [{"ends": [{"ascending": True}, {"ascending": True}], "r": 2},
                     {"ends": [{"anchor_height": 0}, {"anchor_height": 0}], "r": 2}]
        shallow = fiber_machinery(SuiteContext(Config(depth=2, stages=[1], horoballs=horoballs)))
        self.assertEqual(shallow.result, "not_applicable")
        self.assertEqual(len(shallow.data["factors"]), 2)
        deep = fiber_machinery(SuiteContext(Config(depth=3, stages=[2], horoballs=horoballs)))
        self.assertEqual(deep.result, "pass", deep.data)
        kernels = [k for part in deep.data["factors"] for k in part["kernel"]]
        self.assertTrue(all(k["applicable"] and k["source_rank"] > 0 for k in kernels))

    def test_diestel_leader(self):
        """Test the DL isomorphism, transitivity, action and slabs"""
        context = SuiteContext(Config(depth=2, dl_samples=200, sample_size=50, slab_levels=[0, 1]))
        outcome = diestel_leader(context)
        self.assertEqual(outcome.result, "pass", outcome.data)
        self.assertEqual(outcome.params["budget"], 2)
        self.assertEqual(sorted(outcome.data), ["action", "isomorphism", "slabs", "transitivity"])

    def test_engine_report(self):
        """Test an engine run over real checks"""
        config = Config(d=2, q=2, depth=2, death_window=1, stages=[1], checks=["corner_model", "hcu_assembly"])
        report = CheckEngine().run(config, threads=2)
        self.assertEqual(report.summary(), {"pass": 2, "fail": 0, "not_applicable": 0})
        self.assertEqual(report.record("hcu_assembly").params["levels"], [0, 1, 2])


if __name__ == "__main__":
    unittest.main()
