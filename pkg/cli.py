"""
Command-line interface: the `kron` command group.

Reports go to stdout (or --output) in the chosen format; logging goes to
stderr so stdout is byte-identical for a given seed. Exit status is 0 for
ok, 1 for a property violation and 2 for invalid input.
"""

import logging
import sys
from dataclasses import dataclass, replace
from typing import Any, Dict, Optional

import click

import kron_service as svc
from config import OUTPUT_FORMATS, SEED_ENV_VAR, RunConfig, parse_seed
from errors import InvalidInputError
from formats import dump_report, load_json, write_report
from p1_bundles import RECURSION_VARIANTS
from selftest import SUITES

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


@dataclass
class CliState:
    config: RunConfig
    output: Optional[str]
    explicit_format: bool


def _log_level(verbose: int) -> int:
    if verbose >= 2:
        return logging.DEBUG
    return logging.INFO if verbose == 1 else logging.WARNING


def emit(ctx: click.Context, report: Dict[str, Any], table: bool = False) -> None:
    """Print or write the report, then exit with its status code."""
    state: CliState = ctx.obj
    fmt = state.config.output_format
    if table and not state.explicit_format:
        fmt = "csv"
    text = dump_report(report, fmt)
    if state.output:
        write_report(text, state.output)
    else:
        click.echo(text)
    ctx.exit(svc.exit_code(report))


def load_payload(ctx: click.Context, path: str) -> Any:
    try:
        return load_json(path)
    except InvalidInputError as exc:
        emit(ctx, {"status": svc.STATUS_INVALID, "error": str(exc), "seed": ctx.obj.config.seed})


@click.group()
@click.option("--seed", envvar=SEED_ENV_VAR, default=None, help="Master seed for every random draw.")
@click.option("--trials", type=int, default=None, help="Random slices tried by certificates.")
@click.option("--format", "output_format", type=click.Choice(OUTPUT_FORMATS), default=None)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None, help="Write the report here.")
@click.option("-v", "--verbose", count=True, help="-v for INFO, -vv for DEBUG.")
@click.pass_context
def kron(ctx, seed, trials, output_format, output, verbose):
    """Exact computations for Kronecker modules and twistor examples."""
    logging.basicConfig(level=_log_level(verbose), stream=sys.stderr, format=LOG_FORMAT)
    try:
        config = RunConfig.from_env(
            seed=parse_seed(seed) if seed is not None else None,
            trials=trials,
            output_format=output_format,
        )
    except InvalidInputError as exc:
        raise click.UsageError(str(exc))
    ctx.obj = CliState(config, output, output_format is not None)


# --- curves ---

@kron.group()
def curve():
    """Rational curves in P^n."""


@curve.command("analyze")
@click.argument("path", required=False, type=click.Path(dir_okay=False))
@click.option("--random", "random_args", nargs=3, type=int, default=None, metavar="D N SEED")
@click.pass_context
def curve_analyze(ctx, path, random_args):
    """Validate a curve and report its normal bundle data."""
    config = ctx.obj.config
    if random_args:
        d, n, seed = random_args
        emit(ctx, svc.analyze_random_curve(d, n, seed, config=config))
    if path is None:
        raise click.UsageError("Give a curve file or --random D N SEED.")
    emit(ctx, svc.analyze_curve(load_payload(ctx, path), config=config))


@curve.command("random")
@click.argument("d", type=int)
@click.argument("n", type=int)
@click.option("--count", type=int, default=10, show_default=True)
@click.pass_context
def curve_random(ctx, d, n, count):
    """Table of seeded random curves (CSV unless --format is given)."""
    emit(ctx, svc.random_curve_table(d, n, count, config=ctx.obj.config), table=True)


# --- bundles ---

@kron.group()
def bundle():
    """Bundles on P^1 given by Steiner resolutions."""


@bundle.command("h0")
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--twist", type=int, default=None, help="Single twist; omit for a table.")
@click.option("--range", "twist_range", nargs=2, type=int, default=None, metavar="LO HI")
@click.pass_context
def bundle_h0(ctx, path, twist, twist_range):
    config = ctx.obj.config
    if twist_range:
        try:
            config = replace(config, twist_range=tuple(twist_range))
        except InvalidInputError as exc:
            raise click.UsageError(str(exc))
    emit(ctx, svc.bundle_h0(load_payload(ctx, path), twist, config=config), table=twist is None)


@bundle.command("splitting")
@click.argument("path", type=click.Path(dir_okay=False))
@click.pass_context
def bundle_splitting(ctx, path):
    emit(ctx, svc.bundle_splitting(load_payload(ctx, path), config=ctx.obj.config))


@bundle.command("generic-section")
@click.option("--h0", "h0_text", required=True, help="Comma-separated h0(N(-i)), e.g. 16,8,2.")
@click.option("--rank", type=int, required=True)
@click.option("--variant", type=click.Choice(RECURSION_VARIANTS), default="corrected", show_default=True)
@click.pass_context
def bundle_generic_section(ctx, h0_text, rank, variant):
    """Generic splitting type along twistor sections from an h0 list."""
    try:
        h0_list = svc.parse_h0_list(h0_text)
    except InvalidInputError as exc:
        raise click.BadParameter(str(exc), param_hint="--h0")
    emit(ctx, svc.bundle_generic_section(h0_list, rank, variant, config=ctx.obj.config))


# --- quadric ---

@kron.group()
def quadric():
    """Lines on the incidence quadric and the quaternionic picture."""


@quadric.command("classify")
@click.argument("path", type=click.Path(dir_okay=False))
@click.pass_context
def quadric_classify(ctx, path):
    emit(ctx, svc.quadric_classify(load_payload(ctx, path), config=ctx.obj.config))


@quadric.command("real")
@click.argument("path", type=click.Path(dir_okay=False))
@click.pass_context
def quadric_real(ctx, path):
    emit(ctx, svc.quadric_real(load_payload(ctx, path), config=ctx.obj.config))


@quadric.command("orbit")
@click.argument("first", type=click.Path(dir_okay=False))
@click.argument("second", type=click.Path(dir_okay=False))
@click.pass_context
def quadric_orbit(ctx, first, second):
    emit(ctx, svc.quadric_orbit(load_payload(ctx, first), load_payload(ctx, second), config=ctx.obj.config))


@quadric.command("fibration")
@click.argument("path", type=click.Path(dir_okay=False))
@click.pass_context
def quadric_fibration(ctx, path):
    emit(ctx, svc.quadric_fibration(load_payload(ctx, path), config=ctx.obj.config))


@quadric.command("metric")
@click.option("--point", type=click.Path(dir_okay=False), default=None, help="JSON {x, y} to evaluate at.")
@click.pass_context
def quadric_metric(ctx, point):
    payload = load_payload(ctx, point) if point else None
    emit(ctx, svc.quadric_metric(payload, config=ctx.obj.config))


@quadric.command("convention")
@click.pass_context
def quadric_convention(ctx):
    emit(ctx, svc.quadric_convention(config=ctx.obj.config))


# --- blow-up and modules ---

@kron.group()
def blowup():
    """Sections of the blown-up P^3."""


@blowup.command("classify")
@click.argument("path", type=click.Path(dir_okay=False))
@click.pass_context
def blowup_classify(ctx, path):
    emit(ctx, svc.blowup_classify(load_payload(ctx, path), config=ctx.obj.config))


@blowup.command("module")
@click.argument("path", type=click.Path(dir_okay=False))
@click.pass_context
def blowup_module(ctx, path):
    emit(ctx, svc.blowup_module_report(load_payload(ctx, path), config=ctx.obj.config))


@kron.group()
def module():
    """Kronecker modules given as lists of matrices."""


@module.command("certify")
@click.argument("path", type=click.Path(dir_okay=False))
@click.pass_context
def module_certify(ctx, path):
    emit(ctx, svc.module_certificate(load_payload(ctx, path), config=ctx.obj.config))


# --- selftest ---

@kron.command("selftest")
@click.option("--suite", type=click.Choice(SUITES), default="all", show_default=True)
@click.option("--recursion", type=click.Choice(RECURSION_VARIANTS), default="corrected", show_default=True)
@click.option("--scale", type=float, default=None, help="Multiply every sample size (quick runs).")
@click.pass_context
def selftest(ctx, suite, recursion, scale):
    """Run the acceptance criteria; exit 0 only if all pass."""
    config = ctx.obj.config
    if scale is not None:
        try:
            config = replace(config, scale=scale)
        except InvalidInputError as exc:
            raise click.BadParameter(str(exc), param_hint="--scale")
    emit(ctx, svc.selftest_report(suite, recursion, config=config))


def main() -> None:
    kron(prog_name="kron")


if __name__ == "__main__":
    main()
