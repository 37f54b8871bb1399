"""
Tests for the unified CLI interface.
"""

import json
import os
import tempfile
import unittest
from unittest.mock import patch

from click.testing import CliRunner

from sk1_lab.__main__ import main
from sk1_lab.errors import VerificationError


class TestCLI(unittest.TestCase):
    """Test cases for the CLI interface."""

    def setUp(self):
        """Set up test fixtures."""
        self.runner = CliRunner()
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def _path(self, name):
        return os.path.join(self.tmp.name, name)

    def _run(self, args, name="report.json"):
        target = self._path(name)
        result = self.runner.invoke(main, args + ['-o', target])
        report = None
        if os.path.exists(target) and name.endswith('.json'):
            with open(target, 'r', encoding='utf-8') as f:
                report = json.load(f)
        return result, report

    def test_cli_help(self):
        """Test that the CLI help command works."""
        result = self.runner.invoke(main, ['--help'])
        self.assertEqual(result.exit_code, 0)
        self.assertIn('SK1 Lab', result.output)

    def test_cli_version(self):
        """Test that the CLI version command works."""
        result = self.runner.invoke(main, ['--version'])
        self.assertEqual(result.exit_code, 0)
        self.assertIn('0.1.0', result.output)

    def test_cli_subcommands(self):
        """Test that all subcommands are available."""
        subcommands = ['sk1', 'h2', 'orbits', 'logcheck', 'coinv', 'compare-rings', 'certify', 'scan', 'batch']

        result = self.runner.invoke(main, ['--help'])
        self.assertEqual(result.exit_code, 0)

        for subcommand in subcommands:
            self.assertIn(subcommand, result.output)

    def test_cli_common_params(self):
        """Test that ring and output parameters are shared by the subcommands."""
        for subcommand in ('sk1', 'orbits', 'coinv'):
            result = self.runner.invoke(main, [subcommand, '--help'])
            self.assertEqual(result.exit_code, 0)
            self.assertIn('--ring', result.output)
            self.assertIn('--output', result.output)
            self.assertIn('--no-cache', result.output)

    def test_missing_group(self):
        """Test that sk1 requires a group."""
        result = self.runner.invoke(main, ['sk1'])
        self.assertNotEqual(result.exit_code, 0)
        self.assertIn('--group', result.output)

    def test_sk1_report(self):
        """Test the sk1 report envelope and total."""
        result, report = self._run(['sk1', '-g', 'Q8', '-p', '2', '-N', '4', '--no-cache'])
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertEqual(report["command"], "sk1")
        self.assertEqual(report["tool"]["name"], "sk1-lab")
        self.assertEqual(report["job"]["group"], "Q8")
        self.assertEqual(report["result"]["total"]["torsion"], [])
        self.assertEqual(report["result"]["checks"]["certificate_status"], "forced-trivial")

    def test_sk1_text_format(self):
        """Test the text rendering written to a file."""
        result, _ = self._run(['sk1', '-g', 'S3', '-F', 'text', '--no-cache'], name="report.txt")
        self.assertEqual(result.exit_code, 0, result.output)
        with open(self._path("report.txt"), 'r', encoding='utf-8') as f:
            self.assertIn("Total: trivial", f.read())

    def test_unknown_group(self):
        """Test that an unknown group exits with status 1."""
        result, report = self._run(['sk1', '-g', 'Foo7', '--no-cache'])
        self.assertEqual(result.exit_code, 1)
        self.assertIsNone(report)

    def test_inline_group_descriptor(self):
        """Test an inline JSON group descriptor."""
        descriptor = json.dumps({"kind": "perm", "name": "S3p", "generators": [[[1, 2, 3]], [[1, 2]]]})
        result, report = self._run(['orbits', '-g', descriptor, '-p', '3', '--no-cache'])
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertEqual(len(report["result"]["orbits"]), 2)

    def test_orbits(self):
        """Test the orbit report of C3 at p = 2."""
        result, report = self._run(['orbits', '-g', 'C3', '-p', '2', '--no-cache'])
        self.assertEqual(result.exit_code, 0, result.output)
        sizes = sorted(orbit["size"] for orbit in report["result"]["orbits"])
        self.assertEqual(sizes, [1, 2])

    def test_coinv(self):
        """Test the coinvariants of Z_3 mod 9."""
        result, report = self._run(['coinv', '-r', 'Zp', '-p', '3', '-N', '2', '--no-cache'])
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertEqual(report["result"]["coinvariants"]["torsion"], [9])
        self.assertEqual(report["result"]["fixed_units"]["order"], 2)

    def test_coinv_laurent(self):
        """Test that the Laurent window grows but stays free over Z/p^N."""
        result, report = self._run(['coinv', '-r', 'Laurent', '-p', '2', '-N', '2', '-D', '4', '--no-cache'])
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertEqual(report["result"]["coinvariants"]["torsion"], [4, 4, 4])
        self.assertEqual(report["result"]["double_window"]["torsion"], [4, 4, 4, 4, 4])
        self.assertTrue(report["result"]["window_stable"])

    def test_compare_rings(self):
        """Test a ring comparison lifted to SK1."""
        result, report = self._run(['compare-rings', '--pair', 'Wt-Laurent', '-g', 'Q8', '-N', '2', '--no-cache'])
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertEqual(report["result"]["comparison"]["verdict"], "injective-torsion-free-cokernel")

    def test_logcheck(self):
        """Test a seeded suite run."""
        result, report = self._run(['logcheck', '-s', 'cyclic-congruence', '-g', 'C3', '-p', '3', '--no-cache'])
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertEqual(report["result"]["failures"], 0)
        self.assertEqual(report["job"]["seed"], 0)

    def test_certify(self):
        """Test the certificate report of Q8."""
        result, report = self._run(['certify', '-g', 'Q8', '--no-cache'])
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertEqual(report["result"]["status"], "forced-trivial")
        self.assertTrue(report["result"]["central_elements"][0]["is_commutator"])

    def test_cache_hit(self):
        """Test that a repeated job is served from the cache unchanged."""
        cache = self._path("cache")
        first_result, first = self._run(['sk1', '-g', 'D8', '--cache-dir', cache], name="first.json")
        second_result, second = self._run(['sk1', '-g', 'D8', '--cache-dir', cache], name="second.json")
        self.assertEqual(first_result.exit_code, 0, first_result.output)
        self.assertEqual(second_result.exit_code, 0, second_result.output)
        self.assertEqual(first, second)
        self.assertEqual(len(os.listdir(cache)), 1)

    def test_verification_failure_exit_code(self):
        """Test that a failed self-check exits with status 2."""
        with patch('sk1_lab.__main__.SK1Calculator') as calculator:
            calculator.return_value.run.side_effect = VerificationError("mismatch")
            result = self.runner.invoke(main, ['sk1', '-g', 'Q8', '--no-cache'])
        self.assertEqual(result.exit_code, 2)

    def test_invalid_max_order_env(self):
        """Test that a malformed size bound in the environment exits with status 1."""
        result = self.runner.invoke(main, ['sk1', '-g', 'Q8', '--no-cache'], env={"SK1_LAB_MAX_ORDER": "big"})
        self.assertEqual(result.exit_code, 1)

    def test_batch(self):
        """Test a batch with a failing job: reports in input order and exit status 1."""
        jobs = [
            {"command": "sk1", "group": "Q8", "p": 2, "N": 2},
            {"command": "orbits", "group": "S3", "p": 3},
            {"command": "sk1", "group": "Foo7"},
        ]
        batch_file = self._path("jobs.json")
        with open(batch_file, 'w', encoding='utf-8') as f:
            json.dump(jobs, f)
        result, report = self._run(['batch', batch_file, '-j', '2', '--no-cache'])
        self.assertEqual(result.exit_code, 1)
        statuses = [entry["status"] for entry in report["result"]["entries"]]
        self.assertEqual(statuses, ["ok", "ok", "error"])
        self.assertEqual(report["result"]["entries"][1]["job"]["command"], "orbits")

    def test_sk1_logs_steps(self):
        """Test that an announced sk1 run logs its numbered verification steps."""
        with patch('sk1_lab.core.sk1.log_step') as step:
            result, _ = self._run(['sk1', '-g', 'Q8', '-p', '2', '--no-cache'])
        self.assertEqual(result.exit_code, 0, result.output)
        step.assert_any_call(1, "p-group target against the orbit formula")

    def test_batch_summary_panel(self):
        """Test that a batch ends with one summary panel of the status counts."""
        jobs = [{"command": "orbits", "group": "S3", "p": 3}, {"command": "sk1", "group": "Foo7"}]
        batch_file = self._path("jobs.json")
        with open(batch_file, 'w', encoding='utf-8') as f:
            json.dump(jobs, f)
        with patch('sk1_lab.core.batch.log_panel') as panel:
            result, _ = self._run(['batch', batch_file, '--no-cache'])
        self.assertEqual(result.exit_code, 1)
        panel.assert_called_once()
        text = panel.call_args.args[0]
        self.assertIn("ok: 1", text)
        self.assertIn("error: 1", text)
        self.assertEqual(panel.call_args.kwargs["title"], "Batch results")
        self.assertEqual(panel.call_args.kwargs["style"], "red")

    def test_scan(self):
        """Test a small catalog sweep."""
        result, report = self._run(['scan', '--from-order', '6', '--to-order', '8', '--no-cache'])
        self.assertEqual(result.exit_code, 0, result.output)
        self.assertIsNone(report["result"]["first_nontrivial"])
        orders = {row["order"] for row in report["result"]["groups"]}
        self.assertEqual(orders, {6, 7, 8})


if __name__ == '__main__':
    unittest.main()
