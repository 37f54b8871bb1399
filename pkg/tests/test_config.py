"""
Tests for job configuration, the report cache and group option parsing.
"""

import json
import os
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from sk1_lab.algebra.rings import RingDescriptor
from sk1_lab.core.cache import ReportCache, cache_key, canonical_json
from sk1_lab.core.config import HomologyBounds, JobSpec, OutputConfig, default_seed
from sk1_lab.core.descriptors import group_label, parse_group_option
from sk1_lab.errors import InputError


class TestJobSpec(unittest.TestCase):
    """Test cases for JobSpec."""

    def test_from_dict_aliases(self):
        """Test the N, D and f aliases of batch entries."""
        job = JobSpec.from_dict({"command": "coinv", "ring": "PowerSeries", "N": 3, "D": 6, "f": 2})
        self.assertEqual(job.precision, 3)
        self.assertEqual(job.window, 6)
        self.assertEqual(job.witt_degree, 2)
        self.assertEqual(job.ring_descriptor(), RingDescriptor("PowerSeries", 2, 3, 2, 6))

    def test_from_dict_rejects_bad_entries(self):
        """Test unknown fields, missing commands and non-objects."""
        with self.assertRaises(InputError):
            JobSpec.from_dict({"command": "sk1", "colour": "red"})
        with self.assertRaises(InputError):
            JobSpec.from_dict({"group": "Q8"})
        with self.assertRaises(InputError):
            JobSpec.from_dict(["sk1"])

    def test_window_only_for_series(self):
        """Test that base rings ignore the window."""
        self.assertEqual(JobSpec("sk1", "Q8").ring_descriptor().D, 0)

    def test_ring_object(self):
        """Test a ring object that must agree with the job prime."""
        job = JobSpec("coinv", ring={"kind": "Witt", "f": 2}, p=3, precision=2)
        self.assertEqual(job.ring_descriptor(), RingDescriptor("Witt", 3, 2, 2))
        with self.assertRaises(InputError):
            JobSpec("coinv", ring={"kind": "Zp", "p": 5}, p=3).ring_descriptor()

    def test_validate(self):
        """Test validation failures."""
        invalid = [
            JobSpec("frobnicate", "Q8"),
            JobSpec("sk1", "Q8", p=4),
            JobSpec("sk1", "Q8", precision=0),
            JobSpec("sk1", "Q8", trials=-1),
            JobSpec("sk1", "Q8", max_order=0),
            JobSpec("sk1"),
            JobSpec("logcheck", "Q8"),
            JobSpec("compare-rings"),
            JobSpec("sk1", "Q8", ring="Adeles"),
        ]
        for job in invalid:
            with self.assertRaises(InputError, msg=str(job)):
                job.validate()
        JobSpec("coinv").validate()
        JobSpec("compare-rings", pair="W-Wt").validate()

    def test_to_dict(self):
        """Test that the canonical form carries every field."""
        document = JobSpec("sk1", "Q8").to_dict()
        self.assertEqual(document["command"], "sk1")
        self.assertEqual(document["group"], "Q8")
        self.assertIn("max_order", document)


class TestEnvironmentFallbacks(unittest.TestCase):
    """Test cases for environment-variable defaults."""

    def test_homology_bounds(self):
        """Test option, environment and default bounds."""
        with patch.dict(os.environ, {"SK1_LAB_MAX_ORDER": "48"}):
            self.assertEqual(HomologyBounds.resolve(None).max_order, 48)
            self.assertTrue(HomologyBounds.resolve(None).is_raised)
            self.assertEqual(HomologyBounds.resolve(16).max_order, 16)
        with patch.dict(os.environ, {"SK1_LAB_MAX_ORDER": "soon"}):
            with self.assertRaises(InputError):
                HomologyBounds.resolve(None)
        with self.assertRaises(InputError):
            HomologyBounds.resolve(0)

    def test_default_seed(self):
        """Test the seed fallback."""
        with patch.dict(os.environ, {"SK1_LAB_SEED": "17"}):
            self.assertEqual(default_seed(None), 17)
            self.assertEqual(default_seed(3), 3)

    def test_cache_path(self):
        """Test the cache directory fallback chain."""
        self.assertEqual(OutputConfig(cache_dir="/tmp/a").cache_path, Path("/tmp/a"))
        with patch.dict(os.environ, {"SK1_LAB_CACHE_DIR": "/tmp/b"}):
            self.assertEqual(OutputConfig().cache_path, Path("/tmp/b"))
        with self.assertRaises(InputError):
            OutputConfig(output_format="yaml")


class TestReportCache(unittest.TestCase):
    """Test cases for the content-addressed cache."""

    def test_canonical_json(self):
        """Test key order independence."""
        self.assertEqual(canonical_json({"b": 1, "a": [1, 2]}), canonical_json({"a": [1, 2], "b": 1}))
        self.assertEqual(canonical_json({"b": 1, "a": 2}), '{"a":2,"b":1}')

    def test_cache_key(self):
        """Test that keys depend on the job and the group fingerprint."""
        job = JobSpec("sk1", "Q8").to_dict()
        self.assertEqual(cache_key(job, "abc"), cache_key(dict(reversed(list(job.items()))), "abc"))
        self.assertNotEqual(cache_key(job, "abc"), cache_key(job, "abd"))
        self.assertEqual(len(cache_key(job, None)), 64)

    def test_put_and_get(self):
        """Test a round trip through the cache directory."""
        with tempfile.TemporaryDirectory() as directory:
            cache = ReportCache(Path(directory) / "reports")
            self.assertIsNone(cache.get("k"))
            cache.put("k", {"result": {"total": []}})
            self.assertEqual(cache.get("k"), {"result": {"total": []}})
            self.assertEqual(os.listdir(Path(directory) / "reports"), ["k.json"])

    def test_unreadable_entry(self):
        """Test that a corrupt entry is treated as a miss."""
        with tempfile.TemporaryDirectory() as directory:
            (Path(directory) / "k.json").write_text("{not json", encoding="utf-8")
            self.assertIsNone(ReportCache(Path(directory)).get("k"))

    def test_disabled(self):
        """Test that a disabled cache neither reads nor writes."""
        with tempfile.TemporaryDirectory() as directory:
            cache = ReportCache(Path(directory), enabled=False)
            cache.put("k", {"a": 1})
            self.assertEqual(os.listdir(directory), [])
            self.assertIsNone(cache.get("k"))


class TestGroupOption(unittest.TestCase):
    """Test cases for --group parsing."""

    def test_name(self):
        """Test that names pass through."""
        self.assertEqual(parse_group_option(" Q8 "), "Q8")
        self.assertEqual(group_label("Q8"), "Q8")
        self.assertEqual(group_label(None), "-")

    def test_inline_json(self):
        """Test inline descriptors and their labels."""
        descriptor = parse_group_option('{"kind": "named", "name": "D8"}')
        self.assertEqual(descriptor, {"kind": "named", "name": "D8"})
        self.assertEqual(group_label(descriptor), "D8")
        with self.assertRaises(InputError):
            parse_group_option("{broken")

    def test_file(self):
        """Test @file descriptors."""
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "group.json"
            path.write_text(json.dumps({"kind": "table", "table": [[0, 1], [1, 0]]}), encoding="utf-8")
            self.assertEqual(parse_group_option(f"@{path}")["kind"], "table")
            with self.assertRaises(InputError):
                parse_group_option(f"@{path}.missing")


if __name__ == '__main__':
    unittest.main()
