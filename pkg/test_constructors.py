"""Tests for the sequence constructors."""

import unittest

from hypothesis import given, settings

from morph_strategies import rectangles
from src.constructors import (
    build_sequence, cardinalities, decompose_build, l1_chain, make_recipe, recipe_scope,
    rectangle_chain, square_iteration,
)
from src.errors import RecipeError
from src.geometry import box_element, l1_ball, rectangle
from src.inclusion import check_negative, check_positive, check_shift_inclusion, check_whole_space, verify_sequence
from src.models import RecipeKind, Scope, SequenceRecipe, StructuringElement
from src.sample_data import create_square_fixture


def se(*points):
    return StructuringElement.from_points(points)


class TestDecomposeBuild(unittest.TestCase):

    def test_no_vectors(self):
        """No translates leave B1 unchanged."""
        b = l1_ball(1, 2)
        self.assertEqual(decompose_build(b, []), b)

    def test_cross_to_diamond(self):
        """The cross and its four unit translates make the radius-2 diamond."""
        cross = l1_ball(1, 2)
        diamond = decompose_build(cross, [(1, 0), (-1, 0), (0, 1), (0, -1)])
        self.assertEqual(diamond, l1_ball(2, 2))
        self.assertTrue(check_whole_space(cross, diamond).verdict)

    def test_column_shifted_up(self):
        """Translates are unioned with B1."""
        b2 = decompose_build(se((0, 0), (0, -1)), [(0, 3)])
        self.assertEqual(set(b2.points), {(0, -1), (0, 0), (0, 2), (0, 3)})


class TestRectangleChain(unittest.TestCase):

    def test_origin_to_square(self):
        """The upper side of the first axis grows before the second axis."""
        chain = rectangle_chain(se((0, 0)), box_element((0, 0), (1, 1)))
        self.assertEqual([set(b.points) for b in chain], [
            {(0, 0)},
            {(0, 0), (1, 0)},
            {(0, 0), (1, 0), (0, 1), (1, 1)},
        ])

    def test_same_rectangle(self):
        """A chain from R to R is just R."""
        r = box_element((-1, 0), (1, 2))
        self.assertEqual(rectangle_chain(r, r), [r])

    def test_face_growth(self):
        """Each step adds exactly one face of the current box."""
        chain = rectangle_chain(se((0, 0)), box_element((-2, -1), (1, 2)))
        sizes = cardinalities(chain)
        self.assertEqual(sizes[-1], 16)
        for before, after, (b1, b2) in zip(sizes, sizes[1:], zip(chain, chain[1:])):
            lo, hi = zip(*[(min(c), max(c)) for c in zip(*b1.points)])
            grown = [i for i in range(2)
                     if min(c[i] for c in b2.points) != lo[i] or max(c[i] for c in b2.points) != hi[i]]
            self.assertEqual(len(grown), 1)
            face = len(b1) // (hi[grown[0]] - lo[grown[0]] + 1)
            self.assertEqual(after - before, face)

    def test_errors(self):
        """Non-rectangles and non-nested rectangles are rejected."""
        with self.assertRaises(RecipeError):
            rectangle_chain(se((0, 0), (1, 1)), box_element((0, 0), (1, 1)))
        with self.assertRaises(RecipeError):
            rectangle_chain(box_element((0, 0), (2, 0)), box_element((0, 0), (1, 1)))

    def test_drifting_squares(self):
        """Chains through several rectangles pass through each of them."""
        recipe = make_recipe(RecipeKind.RECTANGLE_CHAIN, rectangles=[
            {"lo": [0, 0], "hi": [0, 0]},
            {"lo": [0, 0], "hi": [1, 1]},
            {"lo": [-1, -1], "hi": [1, 1]},
            {"lo": [-1, -1], "hi": [2, 2]},
        ])
        sequence = build_sequence(recipe)
        self.assertEqual(sequence[-1], box_element((-1, -1), (2, 2)))
        for b in (box_element((0, 0), (1, 1)), box_element((-1, -1), (1, 1))):
            self.assertIn(b, sequence)

    @given(rectangles(max_side=5))
    @settings(deadline=None, max_examples=25)
    def test_pairs_hold_on_rectangles(self, p):
        """Every step of a rectangle chain is shift-included on a rectangle."""
        chain = rectangle_chain(se((0, 0)), box_element((-1, -1), (1, 2)))
        self.assertTrue(all(r.verdict for r in verify_sequence(chain, p)))


class TestSquaresAndBalls(unittest.TestCase):

    def test_first_squares(self):
        """The chain starts at the origin, then the 2x2 square, then the centred 3x3 square."""
        squares = square_iteration(3)
        self.assertEqual(squares[0], se((0, 0)))
        self.assertEqual(squares[1], box_element((0, 0), (1, 1)))
        self.assertEqual(squares[2], box_element((-1, -1), (1, 1)))
        self.assertEqual(squares[3], box_element((-1, -1), (2, 2)))

    def test_last_square(self):
        """C_n spans [-(n // 2), n - n // 2] on each axis."""
        for n in range(7):
            self.assertEqual(square_iteration(n)[-1], box_element((-(n // 2),) * 2, (n - n // 2,) * 2))

    def test_three_dimensions(self):
        """Square iteration works in any dimension."""
        self.assertEqual(len(square_iteration(2, dimension=3)[-1]), 27)

    def test_square_fixture(self):
        """The square fixture verifies on its own domain."""
        fixture = create_square_fixture()
        self.assertTrue(all(r.verdict for r in verify_sequence(fixture.sequence, fixture.domain)))

    def test_l1_chain(self):
        """l1 chains run from the origin to Q_omega."""
        self.assertEqual(l1_chain(1, 2), [se((0, 0)), l1_ball(1, 2)])
        self.assertEqual(len(l1_chain(3, 2)[-1]), 25)

    @given(rectangles(max_side=5))
    @settings(deadline=None, max_examples=20)
    def test_balls_hold_on_rectangles(self, p):
        """Consecutive l1 balls are shift-included on a rectangle in both signs."""
        for q1, q2 in zip(l1_chain(3), l1_chain(3)[1:]):
            self.assertTrue(check_shift_inclusion(q1, q2, p).verdict)
            self.assertEqual(check_positive(q1, q2, p).verdict, check_negative(q1, q2, p).verdict)

    @given(rectangles(max_side=5))
    @settings(deadline=None, max_examples=20)
    def test_squares_hold_on_rectangles(self, p):
        """Square iteration is shift-included on a rectangle."""
        self.assertTrue(all(r.verdict for r in verify_sequence(square_iteration(4), p)))

    def test_every_rectangle_pair_in_window(self):
        """All nested boxes around the origin pass on a 5x5 rectangle."""
        p = rectangle((0, 0), (4, 4))
        boxes = [box_element((a, b), (c, d))
                 for a in range(-2, 1) for b in range(-2, 1) for c in range(0, 3) for d in range(0, 3)]
        failures = 0
        for r1 in boxes:
            for r2 in boxes:
                if set(r1.points) <= set(r2.points):
                    failures += not check_shift_inclusion(r1, r2, p).verdict
        self.assertEqual(failures, 0)


class TestRecipes(unittest.TestCase):

    def test_translate_union(self):
        """Translate unions are whole-lattice recipes."""
        recipe = make_recipe(RecipeKind.TRANSLATE_UNION, base=[[0, 0], [0, -1]], steps=[[[0, 3]]])
        sequence = build_sequence(recipe)
        self.assertEqual(len(sequence), 2)
        self.assertEqual(recipe_scope(recipe), Scope.WHOLE_SPACE)
        self.assertTrue(all(r.verdict for r in verify_sequence(sequence, None)))

    def test_scopes(self):
        """Ball chains are only guaranteed on rectangles."""
        self.assertEqual(recipe_scope(make_recipe(RecipeKind.L1_CHAIN, omega_max=2)), Scope.RESTRICTED)

    def test_square_and_ball_recipes(self):
        """Recipe parameters reach the constructors."""
        self.assertEqual(len(build_sequence(make_recipe(RecipeKind.SQUARE_ITERATION, n=3))), 4)
        self.assertEqual(len(build_sequence(make_recipe(RecipeKind.L1_CHAIN, omega_max=2, dimension=3))), 3)

    def test_bad_recipes(self):
        """Missing or invalid parameters raise RecipeError."""
        with self.assertRaises(RecipeError):
            build_sequence(SequenceRecipe(kind=RecipeKind.SQUARE_ITERATION, params={}))
        with self.assertRaises(RecipeError):
            build_sequence(SequenceRecipe(kind=RecipeKind.TRANSLATE_UNION, params={"base": [[1, 1]]}))
        with self.assertRaises(RecipeError):
            build_sequence(SequenceRecipe(kind=RecipeKind.RECTANGLE_CHAIN, params={"rectangles": []}))


if __name__ == '__main__':
    unittest.main()
