"""Tests for the text formats."""

import json
import os
import tempfile
import unittest

from hypothesis import given, settings

from morph_strategies import images, pixel_sets
from src.errors import DiagramParseError, ImageFormatError, RecipeError, StructuringElementError
from src.formats import (
    curve_to_csv, dumps, format_pixel_set, format_structuring_element, format_value, image_report,
    load_image, parse_masked_grid, parse_pgm, parse_pixel_set, parse_recipe, parse_structuring_element,
    read_curve_csv, recipe_to_json, render_masked_grid, render_pgm, render_value_grid,
)
from src.geometry import is_drawable, l1_ball
from src.models import Image, PixelSet, RecipeKind
from src.sample_data import grid_image

PGM = "P2\n3 2\n5\n0 1 2\n3 4 5\n"


class TestPointSets(unittest.TestCase):
    """Structuring elements and pixel sets as JSON or dot diagrams."""

    def test_json_element(self):
        """JSON arrays and {"points": ...} objects both parse."""
        b = parse_structuring_element("[[0, 0], [1, 0]]")
        self.assertEqual(set(b.points), {(0, 0), (1, 0)})
        b = parse_structuring_element('{"points": [[0, 0, 0], [0, 0, 1]]}')
        self.assertEqual(b.dimension, 3)

    def test_diagram_element(self):
        """A diagram with an origin marker parses to the same element as l1_ball."""
        self.assertEqual(parse_structuring_element(".#.\n#o#\n.#.\n"), l1_ball(1, 2))

    def test_element_errors(self):
        """Missing origin, empty or malformed input is rejected."""
        with self.assertRaises(StructuringElementError):
            parse_structuring_element("[[1, 0]]")
        with self.assertRaises(DiagramParseError):
            parse_structuring_element("[]")
        with self.assertRaises(DiagramParseError):
            parse_structuring_element("[[0, 'a']]")
        with self.assertRaises(DiagramParseError):
            parse_structuring_element("##\n##")

    def test_pixel_set_diagram(self):
        """Without a marker the bottom-left cell is (0, 0)."""
        self.assertEqual(set(parse_pixel_set("##\n").points), {(0, 0), (1, 0)})
        self.assertEqual(parse_pixel_set("[[2, 2], [3, 2]]"), PixelSet.from_points([(3, 2), (2, 2)]))

    def test_format_element(self):
        """2-D elements render as diagrams, other dimensions as JSON."""
        self.assertEqual(format_structuring_element(l1_ball(1, 2)), ".#.\n#o#\n.#.\n")
        self.assertEqual(json.loads(format_structuring_element(l1_ball(0, 3))), [[0, 0, 0]])

    def test_offset_column_keeps_its_column(self):
        """A column at x = 1 renders with an empty column to its left."""
        p = parse_pixel_set(".#\n.#")
        self.assertEqual(set(p.points), {(1, 0), (1, 1)})
        self.assertEqual(format_pixel_set(p.points), ".#\n.#\n")
        self.assertEqual(parse_pixel_set(format_pixel_set(p.points)), p)

    def test_negative_pixels_without_origin(self):
        """Pixels below or left of the origin, without it, are written as JSON."""
        p = PixelSet.from_points([(-2, 1), (-1, 1)])
        self.assertFalse(is_drawable(p.points))
        self.assertEqual(json.loads(format_pixel_set(p.points)), [[-2, 1], [-1, 1]])

    @given(pixel_sets(radius=3, max_size=10))
    @settings(deadline=None, max_examples=200)
    def test_pixel_set_roundtrip(self, p):
        """Formatting then parsing gives back every pixel set."""
        self.assertEqual(parse_pixel_set(format_pixel_set(p.points)), p)


class TestPgm(unittest.TestCase):
    """ASCII PGM with the bottom-left pixel at the origin."""

    def test_parse(self):
        """Header, maxval and orientation."""
        image, maxval = parse_pgm(PGM)
        self.assertEqual(maxval, 5)
        self.assertEqual(image.value_at((0, 1)), 0)
        self.assertEqual(image.value_at((2, 0)), 5)
        self.assertTrue(image.domain.is_rectangle)

    def test_comments(self):
        """Comments and free token layout are accepted."""
        image, _ = parse_pgm("P2 # magic\n# size next\n3 2 5\n0 1 2 3 4 5\n")
        self.assertEqual(image, parse_pgm(PGM)[0])

    def test_render(self):
        """Rendering with the parsed maxval reproduces the file."""
        image, maxval = parse_pgm(PGM)
        self.assertEqual(render_pgm(image, maxval), PGM)

    def test_errors(self):
        """Wrong magic, short body, values above maxval and bad sizes are rejected."""
        for text in ("P5\n1 1\n1\n0\n", "P2\n2 2\n3\n0 1 2\n", "P2\n1 1\n3\n4\n", "P2\n1 x\n3\n0\n"):
            with self.assertRaises(ImageFormatError):
                parse_pgm(text)

    def test_render_needs_rectangle(self):
        """Only integral images on rectangles are written as PGM."""
        image = grid_image("_ 1\n1 0")
        with self.assertRaises(ImageFormatError):
            render_pgm(image)
        with self.assertRaises(ImageFormatError):
            render_pgm(grid_image("0.5 1"))


class TestMaskedGrid(unittest.TestCase):
    """A dot-diagram mask with a same-shaped grid of values."""

    def test_parse(self):
        """Values are read where the mask has members."""
        image = parse_masked_grid(".#\n##\n", "_ 2\n0 1.5\n")
        self.assertEqual(image.to_mapping(), {(1, 1): 2.0, (0, 0): 0.0, (1, 0): 1.5})

    def test_render(self):
        """Rendering gives a mask and grid that parse back to the image."""
        image = parse_masked_grid(".#\n##\n", "_ 2\n0 1\n")
        mask, grid = render_masked_grid(image)
        self.assertEqual(grid, "_ 2\n0 1\n")
        self.assertEqual(parse_masked_grid(mask, grid), image)

    def test_offset_domain(self):
        """A domain away from the origin is padded down to it."""
        image = Image.from_mapping({(1, 0): 3.0, (1, 1): 0.5})
        mask, grid = render_masked_grid(image)
        self.assertEqual(mask, ".#\n.#\n")
        self.assertEqual(grid, "_ 0.5\n_ 3\n")
        self.assertEqual(parse_masked_grid(mask, grid), image)

    def test_undrawable_domain(self):
        """A domain reaching below the origin without containing it has no mask."""
        with self.assertRaises(ImageFormatError):
            render_masked_grid(Image.from_mapping({(0, -1): 1.0, (1, -1): 0.0}))

    @given(images())
    @settings(deadline=None, max_examples=100)
    def test_roundtrip(self, image):
        """Every image on a drawable domain comes back unchanged."""
        if is_drawable(image.domain.points):
            self.assertEqual(parse_masked_grid(*render_masked_grid(image)), image)

    def test_errors(self):
        """Values outside the mask, gaps, shape mismatches and negative values are rejected."""
        with self.assertRaises(ImageFormatError):
            parse_masked_grid(".#\n##\n", "1 2\n0 1\n")
        with self.assertRaises(ImageFormatError):
            parse_masked_grid(".#\n##\n", "_ _\n0 1\n")
        with self.assertRaises(ImageFormatError):
            parse_masked_grid(".#\n##\n", "_ 2 3\n0 1 3\n")
        with self.assertRaises(ImageFormatError):
            parse_masked_grid("#\n", "-1\n")

    def test_load_from_files(self):
        """PGM files carry their maxval; masked grids have none."""
        with tempfile.TemporaryDirectory() as tmp:
            pgm = os.path.join(tmp, "g.pgm")
            with open(pgm, "w") as f:
                f.write(PGM)
            self.assertEqual(load_image(pgm), parse_pgm(PGM))

            mask, grid = os.path.join(tmp, "g.mask"), os.path.join(tmp, "g.grid")
            with open(mask, "w") as f:
                f.write("#.\n##\n")
            with open(grid, "w") as f:
                f.write("3 _\n0 1\n")
            image, maxval = load_image(grid, mask)
            self.assertEqual(image.value_at((0, 1)), 3)
            self.assertIsNone(maxval)

    def test_maxval_survives_a_roundtrip(self):
        """A maxval of 255 is written back as 255."""
        text = "P2\n2 1\n255\n0 7\n"
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "g.pgm")
            with open(path, "w") as f:
                f.write(text)
            image, maxval = load_image(path)
        self.assertEqual(maxval, 255)
        self.assertEqual(render_pgm(image, maxval), text)


class TestReports(unittest.TestCase):
    """JSON reports, value grids and curve CSV."""

    def test_values(self):
        """Integral values print without a decimal point."""
        self.assertEqual(format_value(2.0), "2")
        self.assertEqual(format_value(0.5), "0.5")
        self.assertEqual(render_value_grid(Image.from_mapping({(0, 0): 1.0, (1, 1): 0.25})),
                         "_ 0.25\n1 _\n")

    def test_dumps(self):
        """Keys are sorted and the text ends with a newline."""
        text = dumps({'b': 1, 'a': [1, 2]})
        self.assertTrue(text.endswith("}\n"))
        self.assertLess(text.index('"a"'), text.index('"b"'))

    def test_image_report(self):
        """Domain and zero set are listed in lexicographic order."""
        report = image_report(grid_image("0 1\n2 0"))
        self.assertEqual(report['zero_set'], [[0, 1], [1, 0]])
        self.assertEqual(report['domain'], [[0, 0], [0, 1], [1, 0], [1, 1]])

    def test_curve_csv(self):
        """Curves are written and read back with the step,zero_pixels header."""
        text = curve_to_csv([(0, 3), (1, 2)])
        self.assertEqual(text, "step,zero_pixels\n0,3\n1,2\n")
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "curve.csv")
            with open(path, "w") as f:
                f.write(text)
            self.assertEqual(read_curve_csv(path), [(0, 3), (1, 2)])


class TestRecipes(unittest.TestCase):
    """Sequence recipes as JSON."""

    def test_parse(self):
        """A recipe survives a write and a read."""
        recipe = parse_recipe('{"kind": "l1-chain", "params": {"omega_max": 2}}')
        self.assertEqual(recipe.kind, RecipeKind.L1_CHAIN)
        self.assertEqual(recipe.params, {"omega_max": 2})
        self.assertEqual(parse_recipe(recipe_to_json(recipe)), recipe)

    def test_errors(self):
        """Non-JSON, a missing kind and non-objects are rejected."""
        for text in ("not json", '{"params": {}}', "[1, 2]"):
            with self.assertRaises(RecipeError):
                parse_recipe(text)


if __name__ == '__main__':
    unittest.main()
