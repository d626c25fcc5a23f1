"""
Unit tests for the configuration and report models
"""

import sys
import os
import unittest
from fractions import Fraction

from pydantic import ValidationError

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from orchestrator.models import CheckRecord, Config, HoroballConfig, Report
from prodcomplex.complex import ProductComplex
from treegeo.ends import RayEnd
from utils.errors import ConfigError


class TestConfig(unittest.TestCase):
    def setUp(self):
        """Set up test environment"""
        self.config = Config(d=2, q=2, depth=2)

    def test_defaults(self):
        """Test q is broadcast and weights default to one"""
        self.assertEqual(self.config.q, [2, 2])
        self.assertEqual(self.config.qs, [2, 2])
        self.assertEqual(self.config.weights, ["1", "1"])
        self.assertEqual(self.config.weight_values, [Fraction(1), Fraction(1)])
        self.assertEqual(self.config.checks, [])
        self.assertEqual(self.config.radius_values, [Fraction(-1), Fraction(0), Fraction(1)])

    def test_rationals_are_canonical(self):
        """Test rationals given as ints or strings are stored in lowest terms"""
        config = Config(d=2, weights=["6/4", 1], margin="4/2", radii=[0, "1/2"])
        self.assertEqual(config.weights, ["3/2", "1"])
        self.assertEqual(config.margin, "2")
        self.assertEqual(config.radii, ["0", "1/2"])
        self.assertEqual(config.build_complex().weights, (Fraction(3, 2), Fraction(1)))

    def test_checks_sorted_and_known(self):
        """Test check lists are deduplicated, sorted and validated"""
        config = Config(checks=["zero_chain", "corner_model", "zero_chain"])
        self.assertEqual(config.checks, ["corner_model", "zero_chain"])
        with self.assertRaises(ValidationError):
            Config(checks=["verify_everything"])

    def test_invalid_documents(self):
        """Test invalid factor data, rings and unknown fields are rejected"""
        with self.assertRaises(ValidationError):
            Config(d=2, q=[2, 2, 2])
        with self.assertRaises(ValidationError):
            Config(d=2, weights=[1])
        with self.assertRaises(ValidationError):
            Config(d=2, weights=[1, 0])
        with self.assertRaises(ValidationError):
            Config(ring="F_4")
        with self.assertRaises(ValidationError):
            Config(depth=0)
        with self.assertRaises(ValidationError):
            Config(colour="blue")
        with self.assertRaises(ValidationError):
            Config(margin=-1)

    def test_ring(self):
        """Test ring names resolve to coefficient rings"""
        self.assertEqual(Config(ring="F_3").coefficient_ring().name, "F_3")
        self.assertEqual(Config(ring="Z[1/p]", p=5).coefficient_ring().name, "Z[1/5]")
        self.assertEqual(Config().coefficient_ring().name, "Z")

    def test_required_depth(self):
        """Test the required depth per check"""
        config = Config(stages=[1, 2], death_window=2)
        self.assertEqual(config.required_depth("snf_oracle"), 0)
        self.assertEqual(config.required_depth("diestel_leader"), 0)
        self.assertEqual(config.required_depth("horoball_vanishing"), 2)
        self.assertEqual(config.required_depth("corner_model"), 3)
        self.assertEqual(config.required_depth("fiber_machinery"), 3)
        self.assertEqual(config.required_depth("zero_chain"), 3)
        self.assertEqual(config.required_depth("purity_division"), 1)
        self.assertEqual(config.required_depth("hcu_assembly"), 3)
        with self.assertRaises(ConfigError):
            config.required_depth("unknown")

    def test_validate_depths(self):
        """Test a stage beyond the depth is reported with the required depth"""
        Config(depth=2, stages=[1], checks=["corner_model"]).validate_depths()
        config = Config(depth=2, stages=[2], checks=["corner_model", "snf_oracle"])
        with self.assertRaises(ConfigError) as context:
            config.validate_depths()
        self.assertEqual(context.exception.reason, "depth")
        self.assertEqual(context.exception.details["required_depth"], 3)
        self.assertEqual(context.exception.details["check"], "corner_model")

    def test_corner_block_depth(self):
        """Test corner blocks of negative radii reach below the tree depth"""
        self.assertEqual(Config(depth=2, radii=[0, 1]).corner_block_depth(), 2)
        self.assertEqual(Config(depth=2, radii=[-1, 0, 1]).corner_block_depth(), 3)
        self.assertEqual(Config(d=3, depth=2, radii=[-1]).corner_block_depth(), 5)
        self.assertEqual(Config(depth=3, weights=[2, 1], radii=[0]).corner_block_depth(), 6)
        self.assertIsNone(Config().corner_depth)
        with self.assertRaises(ValidationError):
            Config(corner_depth=0)


class TestHoroballConfig(unittest.TestCase):
    def setUp(self):
        """Set up test environment"""
        self.complex = ProductComplex.regular(2, 2, 2)

    def test_to_spec(self):
        """Test ends resolve to spine anchors in each factor"""
        horoball = HoroballConfig.model_validate({
            "ends": [{"ascending": True}, {"anchor_height": 1, "branch": [1]}],
            "r": "3/2",
        })
        spec = horoball.to_spec(self.complex)
        first, second = self.complex.factors
        self.assertEqual(spec.ends[0], RayEnd(first.spine(0), True, ()))
        self.assertEqual(spec.ends[1], RayEnd(second.spine(1), False, (1,)))
        self.assertEqual(spec.r, Fraction(3, 2))

    def test_end_count(self):
        """Test a horoball needs one end per factor"""
        with self.assertRaises(ValidationError):
            Config(d=2, horoballs=[{"ends": [{"ascending": True}], "r": 0}])
        horoball = HoroballConfig(ends=[{"ascending": True}])
        with self.assertRaises(ConfigError):
            horoball.to_spec(self.complex)


class TestReport(unittest.TestCase):
    def setUp(self):
        """Set up test environment"""
        self.records = [
            CheckRecord(id="zero_chain", result="pass"),
            CheckRecord(id="corner_model", result="not_applicable"),
        ]

    def test_sorted_records(self):
        """Test records are sorted by check id and the report passes"""
        report = Report.from_records("abc", self.records)
        self.assertEqual([r.id for r in report.records], ["corner_model", "zero_chain"])
        self.assertTrue(report.passed)
        self.assertEqual(report.exit_code, 0)
        self.assertEqual(report.summary(), {"pass": 1, "fail": 0, "not_applicable": 1})
        self.assertEqual(report.record("zero_chain").result, "pass")
        self.assertIsNone(report.record("snf_oracle"))

    def test_failure_exit_code(self):
        """Test a failed record gives exit code 1"""
        report = Report.from_records("abc", self.records + [CheckRecord(id="snf_oracle", result="fail")])
        self.assertFalse(report.passed)
        self.assertEqual(report.exit_code, 1)

    def test_schema(self):
        """Test the serialized report schema"""
        data = Report.from_records("abc", self.records).to_dict()
        self.assertEqual(sorted(data), ["config_hash", "records", "version"])
        self.assertEqual(sorted(data["records"][0]), ["data", "id", "ms", "params", "result"])
        self.assertEqual(data["records"][0]["ms"], 0)


if __name__ == "__main__":
    unittest.main()
