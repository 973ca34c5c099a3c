"""Command-line interface for the shift-inclusion morphology toolkit."""

import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Callable, List, Optional

import click

from src.config import Settings
from src.constructors import build_sequence
from src.errors import MorphologyError, UnverifiedSequenceError
from src.formats import (
    curve_to_csv, dumps, format_pixel_set, format_structuring_element, image_report, load_image,
    parse_pixel_set, parse_recipe, parse_structuring_element, points_to_json, read_text, recipe_to_json,
    render_masked_grid, render_pgm, report_to_json,
)
from src.geometry import is_drawable, rectangle
from src.inclusion import (
    audit_implication_matrix, check_negative, check_positive, check_shift_inclusion,
    check_weak_inclusion, check_weak_negative, check_weak_positive, check_weak_whole_space,
    check_whole_space, sequence_holds, verify_sequence,
)
from src.models import Image, InclusionKind, MorphMode, Sign, StructuringElement
from src.morphology import apply_mode, granulometric_curve, zero_set
from src.oracle import equivalence_sweep, property_holds
from src.regression import replay_pack
from src.sample_data import create_example_fixtures, create_sequence_fixtures

logger = logging.getLogger(__name__)

EXIT_PASS, EXIT_FALSE, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2, 3

SIGNS = {'pos': Sign.POSITIVE, 'neg': Sign.NEGATIVE, 'both': Sign.BOTH}


class InputError(click.ClickException):
    """Unreadable or malformed input; exits with the usage status."""
    exit_code = EXIT_USAGE


class RefusedError(click.ClickException):
    exit_code = EXIT_REFUSED


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s", force=True)


def load(parse: Callable, path: str):
    """Read ``path`` and parse it, turning any failure into exit status 2."""
    try:
        return parse(read_text(path))
    except (OSError, MorphologyError, ValueError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        print(text, end="")


def load_sequence(recipe: Optional[str], sequence: Optional[str]) -> List[StructuringElement]:
    if bool(recipe) == bool(sequence):
        raise click.UsageError("give exactly one of --recipe or --sequence")
    if recipe:
        try:
            return build_sequence(load(parse_recipe, recipe))
        except MorphologyError as exc:
            raise InputError(f"{recipe}: {exc}") from exc

    def parse(text):
        return [StructuringElement.from_points(tuple(tuple(p) for p in element))
                for element in json.loads(text)]
    elements = load(parse, sequence)
    if not elements:
        raise InputError(f"{sequence}: empty sequence")
    return elements


@click.group()
@click.option('-v', '--verbose', count=True, help='-v for progress, -vv for debug output (stderr)')
@click.option('--cap', type=int, help='Largest pixel set the oracle will enumerate')
@click.option('--jobs', type=int, help='Worker processes for the oracle')
@click.pass_context
def cli(ctx, verbose, cap, jobs):
    """Shift-inclusion morphology toolkit"""
    configure_logging(verbose)
    overrides = {k: v for k, v in (('enumeration_cap', cap), ('jobs', jobs)) if v is not None}
    try:
        ctx.obj = replace(Settings.from_env(), **overrides)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


def _run_check(ctx, se1, se2, pixels, sign, out, shift: bool):
    b1 = load(parse_structuring_element, se1)
    b2 = load(parse_structuring_element, se2)
    domain = load(parse_pixel_set, pixels)
    sign = SIGNS[sign]
    try:
        if sign is Sign.BOTH:
            check = check_shift_inclusion if shift else check_weak_inclusion
        elif sign is Sign.POSITIVE:
            check = check_positive if shift else check_weak_positive
        else:
            check = check_negative if shift else check_weak_negative
        report = check(b1, b2, domain)
    except MorphologyError as exc:
        raise InputError(str(exc)) from exc
    emit(report_to_json(report), out)
    ctx.exit(EXIT_PASS if report.verdict else EXIT_FALSE)


@cli.command()
@click.option('--se1', required=True, type=click.Path(), help='Structuring element B1')
@click.option('--se2', required=True, type=click.Path(), help='Structuring element B2')
@click.option('--pixels', required=True, type=click.Path(), help='Pixel set P')
@click.option('--sign', type=click.Choice(sorted(SIGNS)), default='both', show_default=True)
@click.option('--out', type=click.Path(), help='Write the JSON report here instead of stdout')
@click.pass_context
def check(ctx, se1, se2, pixels, sign, out):
    """Decide shift inclusion of B1 in B2 with respect to P."""
    _run_check(ctx, se1, se2, pixels, sign, out, shift=True)


@cli.command(name='weak-check')
@click.option('--se1', required=True, type=click.Path())
@click.option('--se2', required=True, type=click.Path())
@click.option('--pixels', required=True, type=click.Path())
@click.option('--sign', type=click.Choice(sorted(SIGNS)), default='both', show_default=True)
@click.option('--out', type=click.Path())
@click.pass_context
def weak_check(ctx, se1, se2, pixels, sign, out):
    """Decide weak shift inclusion of B1 in B2 with respect to P."""
    _run_check(ctx, se1, se2, pixels, sign, out, shift=False)


@cli.command(name='check-whole-space')
@click.option('--se1', required=True, type=click.Path())
@click.option('--se2', required=True, type=click.Path())
@click.option('--weak', is_flag=True, help='Use the weak relation (same verdict on the whole lattice)')
@click.option('--out', type=click.Path())
@click.pass_context
def check_whole_space_cmd(ctx, se1, se2, weak, out):
    """Decide shift inclusion on the whole lattice (union of translates)."""
    b1 = load(parse_structuring_element, se1)
    b2 = load(parse_structuring_element, se2)
    try:
        report = check_weak_whole_space(b1, b2) if weak else check_whole_space(b1, b2)
    except MorphologyError as exc:
        raise InputError(str(exc)) from exc
    emit(report_to_json(report), out)
    ctx.exit(EXIT_PASS if report.verdict else EXIT_FALSE)


@cli.command()
@click.option('--recipe', required=True, type=click.Path())
@click.option('--diagrams', is_flag=True, help='Print dot diagrams instead of JSON')
@click.option('--out', type=click.Path())
def build(recipe, diagrams, out):
    """Expand a sequence recipe into structuring elements."""
    parsed = load(parse_recipe, recipe)
    try:
        sequence = build_sequence(parsed)
    except MorphologyError as exc:
        raise InputError(f"{recipe}: {exc}") from exc
    if diagrams:
        text = "\n".join(format_structuring_element(b) for b in sequence)
    else:
        text = dumps({
            'recipe': json.loads(recipe_to_json(parsed)),
            'sequence': [points_to_json(b.points) for b in sequence],
        })
    emit(text, out)


@cli.command(name='verify-seq')
@click.option('--recipe', type=click.Path())
@click.option('--sequence', type=click.Path(), help='JSON array of point arrays')
@click.option('--pixels', type=click.Path(), help='Pixel set P; omit for the whole lattice')
@click.option('--weak', is_flag=True, help='Verify weak shift inclusion')
@click.option('--sign', type=click.Choice(sorted(SIGNS)), default='both', show_default=True)
@click.option('--out', type=click.Path())
@click.pass_context
def verify_seq(ctx, recipe, sequence, pixels, weak, sign, out):
    """Verify every consecutive pair of a sequence."""
    elements = load_sequence(recipe, sequence)
    if len(elements) < 2:
        raise InputError("a sequence needs at least two structuring elements")
    domain = load(parse_pixel_set, pixels) if pixels else None
    kind = InclusionKind.WEAK if weak else InclusionKind.SHIFT
    try:
        reports = verify_sequence(elements, domain, kind, sign=SIGNS[sign])
    except MorphologyError as exc:
        raise InputError(str(exc)) from exc
    emit(dumps([r.to_dict(encode_json=True) for r in reports]), out)
    ctx.exit(EXIT_PASS if sequence_holds(reports) else EXIT_FALSE)


@cli.command()
@click.option('--se1', required=True, type=click.Path())
@click.option('--se2', required=True, type=click.Path())
@click.option('--pixels', required=True, type=click.Path())
@click.option('--out', type=click.Path())
@click.pass_context
def oracle(ctx, se1, se2, pixels, out):
    """Check zero-set preservation over every binary image on P."""
    b1 = load(parse_structuring_element, se1)
    b2 = load(parse_structuring_element, se2)
    domain = load(parse_pixel_set, pixels)
    try:
        verdict = property_holds(b1, b2, domain, ctx.obj)
    except MorphologyError as exc:
        raise InputError(str(exc)) from exc
    data = verdict.to_dict()
    if verdict.counterexample_image is not None and is_drawable(domain.points):
        mask, grid = render_masked_grid(verdict.counterexample_image)
        data['counterexample']['mask'] = mask
        data['counterexample']['grid'] = grid
    emit(dumps(data), out)
    ctx.exit(EXIT_PASS if verdict.holds_opening and verdict.holds_closing else EXIT_FALSE)


@cli.command()
@click.option('--sweep', is_flag=True, help='Also compare oracle and weak checks on every nested pair '
                                           'inside the 3x3 window over a 3x2 rectangle')
@click.option('--json', 'as_json', is_flag=True)
@click.pass_context
def audit(ctx, sweep, as_json):
    """Observe the implication diagram between the four inclusion relations."""
    matrix = audit_implication_matrix()
    mismatches = 0
    if sweep:
        window = [(x, y) for x in (-1, 0, 1) for y in (-1, 0, 1)]
        frame = equivalence_sweep(rectangle((0, 0), (2, 1)), window, 4, ctx.obj)
        mismatches = int((~frame['agrees']).sum())
    if as_json:
        data = matrix.to_dict()
        if sweep:
            data['sweep'] = {'instances': len(frame), 'mismatches': mismatches}
        print(dumps(data), end="")
    else:
        print(matrix.to_frame().to_string(index=False))
        if sweep:
            print(f"\nsweep: {len(frame)} instances, {mismatches} mismatches")
    ctx.exit(EXIT_PASS if matrix.consistent and not mismatches else EXIT_FALSE)


def _write_step(out_dir: Path, k: int, image: Image, maxval: Optional[int]) -> None:
    """PGM for PGM input, mask and grid for a drawable domain, JSON otherwise."""
    stem = out_dir / f"step_{k:02d}"
    if maxval is not None:
        stem.with_suffix(".pgm").write_text(render_pgm(image, maxval), encoding="utf-8")
    elif is_drawable(image.domain.points):
        mask, grid = render_masked_grid(image)
        stem.with_suffix(".mask").write_text(mask, encoding="utf-8")
        stem.with_suffix(".grid").write_text(grid, encoding="utf-8")
    else:
        stem.with_suffix(".json").write_text(dumps(image_report(image)), encoding="utf-8")
    zeros = zero_set(image)
    if zeros and image.domain.dimension == 2:
        stem.with_suffix(".zeros").write_text(format_pixel_set(zeros), encoding="utf-8")


@cli.command()
@click.option('--image', 'image_path', required=True, type=click.Path(), help='PGM P2, or value grid with --mask')
@click.option('--mask', type=click.Path(), help='Dot-diagram mask for a masked-grid image')
@click.option('--recipe', type=click.Path())
@click.option('--sequence', type=click.Path())
@click.option('--mode', type=click.Choice([m.value for m in MorphMode]), default='opening', show_default=True)
@click.option('--force', is_flag=True, help='Run even if the sequence is not verified on this pixel set')
@click.option('--out', '--out-dir', 'out_dir', type=click.Path(file_okay=False),
              help='Write per-step images and curve.csv here')
def granulometry(image_path, mask, recipe, sequence, mode, force, out_dir):
    """Zero-set sizes along an opening (or closing) filtration."""
    try:
        g, maxval = load_image(image_path, mask)
    except (OSError, MorphologyError) as exc:
        raise InputError(f"{image_path}: {exc}") from exc
    elements = load_sequence(recipe, sequence)
    mode = MorphMode(mode)
    logger.info("%s filtration of %d pixels by %d elements", mode.value, len(g.domain), len(elements))
    try:
        curve = granulometric_curve(g, elements, mode, force=force)
    except UnverifiedSequenceError as exc:
        raise RefusedError(f"{exc}; pass --force to run anyway") from exc
    except MorphologyError as exc:
        raise InputError(str(exc)) from exc

    csv = curve_to_csv(curve)
    if out_dir:
        target = Path(out_dir)
        try:
            target.mkdir(parents=True, exist_ok=True)
            for k, element in enumerate(elements):
                _write_step(target, k, apply_mode(g, element, mode), maxval)
            (target / "curve.csv").write_text(csv, encoding="utf-8")
            (target / "input.json").write_text(dumps(image_report(g)), encoding="utf-8")
        except (OSError, MorphologyError) as exc:
            raise InputError(f"{out_dir}: {exc}") from exc
    print(csv, end="")


@cli.command()
@click.option('--list', 'listing', is_flag=True, help='List the embedded fixtures and exit')
@click.pass_context
def examples(ctx, listing):
    """Replay the embedded worked examples."""
    if listing:
        for fixture in create_example_fixtures():
            print(f"example  {fixture.name}")
        for fixture in create_sequence_fixtures():
            print(f"sequence {fixture.name}")
        return
    entries = replay_pack(settings=ctx.obj)
    for entry in entries:
        mark = "✅" if entry.passed else "❌"
        line = f"{mark} {entry.fixture}: {entry.check}"
        print(f"{line} ({entry.detail})" if entry.detail else line)
    failed = sum(1 for e in entries if not e.passed)
    print(f"\n{len(entries) - failed}/{len(entries)} checks passed")
    ctx.exit(EXIT_PASS if not failed else EXIT_FALSE)


if __name__ == '__main__':
    cli()
