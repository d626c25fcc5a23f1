"""
Unit tests for CLI Tool Access Layer
"""

import sys
import os
import unittest
import json
import shutil
import tempfile
from click.testing import CliRunner

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))))

from access.cli.src.cli_tool import cli, format_output

class TestCLITool(unittest.TestCase):
    def setUp(self):
        """Set up test environment"""
        self.runner = CliRunner()
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        """Clean up test environment"""
        shutil.rmtree(self.temp_dir)

    def _config(self, data, name="run.json"):
        path = os.path.join(self.temp_dir, name)
        with open(path, "w") as f:
            json.dump(data, f)
        return path

    def _read(self, name):
        with open(os.path.join(self.temp_dir, name)) as f:
            return f.read()

    def test_cli_version(self):
        """Test CLI version command"""
        result = self.runner.invoke(cli, ["--version"])
        self.assertEqual(result.exit_code, 0)
        self.assertIn("version", result.output.lower())

    def test_run_empty_suite(self):
        """Test running a configuration without checks"""
        config = self._config({"d": 1, "q": 2, "depth": 1})
        out = os.path.join(self.temp_dir, "report.json")

        result = self.runner.invoke(cli, ["run", "--config", config, "--out", out, "--threads", "2"])

        self.assertEqual(result.exit_code, 0, result.output)
        report = json.loads(self._read("report.json"))
        self.assertEqual(report["version"], "1.0")
        self.assertEqual(report["records"], [])
        self.assertEqual(len(report["config_hash"]), 64)

    def test_run_check(self):
        """Test a real check produces a passing record"""
        config = self._config({"d": 2, "q": 2, "depth": 2, "stages": [1], "checks": ["corner_model"]})
        out = os.path.join(self.temp_dir, "report.json")

        result = self.runner.invoke(cli, ["run", "--config", config, "--out", out])

        self.assertEqual(result.exit_code, 0, result.output)
        report = json.loads(self._read("report.json"))
        self.assertEqual([r["id"] for r in report["records"]], ["corner_model"])
        self.assertEqual(report["records"][0]["result"], "pass")

    def test_run_text_format(self):
        """Test the text report"""
        config = self._config({"checks": []})
        out = os.path.join(self.temp_dir, "report.txt")

        result = self.runner.invoke(cli, ["run", "--config", config, "--out", out, "--format", "text"])

        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn("config_hash: ", self._read("report.txt"))

    def test_run_depth_error(self):
        """Test a depth that cannot serve a check exits with 2"""
        config = self._config({"depth": 1, "stages": [1], "checks": ["corner_model"]})

        result = self.runner.invoke(cli, ["run", "--config", config])

        self.assertEqual(result.exit_code, 2)
        self.assertIn("depth", result.output)

    def test_run_invalid_config(self):
        """Test invalid and missing configurations exit with 2"""
        config = self._config({"checks": ["everything"]})
        self.assertEqual(self.runner.invoke(cli, ["run", "--config", config]).exit_code, 2)
        missing = os.path.join(self.temp_dir, "missing.json")
        self.assertEqual(self.runner.invoke(cli, ["run", "--config", missing]).exit_code, 2)

    def test_tree(self):
        """Test printing a tree"""
        result = self.runner.invoke(cli, ["tree", "--q", "2", "--depth", "1"])

        self.assertEqual(result.exit_code, 0, result.output)
        data = json.loads(result.output)
        self.assertEqual(data["q"], 2)
        self.assertEqual(data["N"], 1)
        self.assertEqual(len(data["spine"]), 3)

    def test_dl_graph(self):
        """Test exporting the DL graph"""
        out = os.path.join(self.temp_dir, "dl.csv")

        result = self.runner.invoke(cli, ["dl-graph", "--q", "2", "--depth", "2", "--out", out])

        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn("80 vertices, 128 edges", result.output)
        rows = self._read("dl.csv").splitlines()
        self.assertEqual(len(rows), 128)
        self.assertEqual(len(rows[0].split(",")), 2)

    def test_y0_export_for_three_factors(self):
        """Test exporting the horosphere of a three-fold product"""
        out = os.path.join(self.temp_dir, "y0.csv")

        result = self.runner.invoke(cli, ["dl-graph", "--factors", "3", "--q", "2", "--depth", "1", "--out", out])

        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIn("56 vertices, 192 edges", result.output)
        rows = self._read("y0.csv").splitlines()
        self.assertEqual(len(rows), 192)
        self.assertEqual(len(rows[0].split(",")[0].split("-")), 3)

    def test_cells(self):
        """Test dumping stage cells"""
        config = self._config({"d": 1, "q": 2, "depth": 1})
        out = os.path.join(self.temp_dir, "cells.csv")

        result = self.runner.invoke(cli, ["cells", "--config", config, "--stage", "0", "--out", out])

        self.assertEqual(result.exit_code, 0, result.output)
        rows = self._read("cells.csv").splitlines()
        self.assertEqual(rows[0], "cell,dim,beta_min,beta_max")
        self.assertGreater(len(rows), 1)

    def test_format_output(self):
        """Test formatting output"""
        data = {"b": [1, 2], "a": {"c": "x"}}

        self.assertEqual(json.loads(format_output(data, "json")), data)
        self.assertIn("a:\n  c: x", format_output(data, "yaml"))
        self.assertIn("- 1", format_output(data, "text"))

if __name__ == "__main__":
    unittest.main()
