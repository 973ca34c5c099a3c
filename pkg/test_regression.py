"""Tests for the regression pack."""

import dataclasses
import unittest

from src.models import SequenceFixture
from src.regression import grid_diff, replay_example, replay_pack, replay_sequence
from src.sample_data import (
    create_cross_in_square, create_example_fixtures, create_positive_only, create_sequence_fixtures, grid_image,
)


class TestRegressionPack(unittest.TestCase):
    """Every embedded example replays cleanly."""

    def test_full_pack_passes(self):
        """All pairs and sequences replay without a failure."""
        entries = replay_pack()
        failures = [f"{e.fixture}: {e.check} ({e.detail})" for e in entries if not e.passed]
        self.assertEqual(failures, [])
        self.assertEqual({e.fixture for e in entries},
                         {f.name for f in create_example_fixtures()} | {f.name for f in create_sequence_fixtures()})

    def test_fixture_counts(self):
        """There are seven pairs and seven sequences."""
        self.assertEqual(len(create_example_fixtures()), 7)
        self.assertEqual(len(create_sequence_fixtures()), 7)

    def test_corrupted_grid_is_reported(self):
        """A wrong grid is reported by name."""
        example = create_cross_in_square()
        grids = dict(example.grids)
        grids["opening_b2"] = grids["opening_b1"]
        entries = replay_example(dataclasses.replace(example, grids=grids, oracle={}))
        failed = [e for e in entries if not e.passed]
        self.assertEqual([e.check for e in failed], ["grid opening_b2"])
        self.assertIn("expected", failed[0].detail)

    def test_wrong_verdict_is_reported(self):
        """A wrong verdict is reported with both values."""
        example = create_positive_only()
        verdicts = dict(example.verdicts)
        verdicts["S,P,-"] = True
        entries = replay_example(dataclasses.replace(example, verdicts=verdicts, oracle={}))
        failed = [e for e in entries if not e.passed]
        self.assertEqual([e.check for e in failed], ["verdict S,P,-"])
        self.assertEqual(failed[0].detail, "expected True, got False")

    def test_wrong_sequence_expectation(self):
        """A sequence expected to fail but passing is a failure."""
        fixture = create_sequence_fixtures()[0]
        entry = replay_sequence(dataclasses.replace(fixture, expected=False))
        self.assertFalse(entry.passed)

    def test_failing_sequence(self):
        """A sequence expected to fail that fails passes."""
        example = create_cross_in_square()
        entry = replay_sequence(SequenceFixture("cross-to-square", (example.b1, example.b2), expected=False))
        self.assertTrue(entry.passed)


class TestGridDiff(unittest.TestCase):

    def test_equal(self):
        """Grids compare by value, not by text."""
        self.assertEqual(grid_diff("1 0\n0 2", grid_image("1 0\n0 2")), [])
        self.assertEqual(grid_diff("1.0 0\n0 2", grid_image("1 0\n0 2")), [])

    def test_cell_difference(self):
        """Differences name the row and column."""
        self.assertEqual(grid_diff("1 0\n0 2", grid_image("1 1\n0 2")), ["row 0 col 1: expected 0, got 1"])

    def test_shape(self):
        """A shape mismatch is one difference."""
        self.assertEqual(len(grid_diff("1 0", grid_image("1\n0"))), 1)


if __name__ == '__main__':
    unittest.main()
