import logging

import click

from . import logger, report

logger.addHandler(logging.StreamHandler())

VERBOSITY = [logging.WARNING, logging.DEBUG, logging.G2_TRACE]


OPTION_P = click.option("--p", "p", type=int, required=True, help="Characteristic p")
OPTION_A = click.option("--a", "a", type=int, default=1, show_default=True, help="q = p^a")
OPTION_S = click.option("--s", "s", type=int, required=True, help="Cubic coefficient s of P")
OPTION_T = click.option(
    "--t", "t", type=int, required=True, help="Quadratic coefficient t of P"
)
OPTION_ELL = click.option(
    "--ell", type=int, default=None, help="Prime ℓ; factors of P(1) if omitted"
)
OPTION_M = click.option(
    "--m", "m", type=int, default=1, show_default=True, help="Extension degree"
)
OPTION_MAX_EXT = click.option(
    "--max-ext", type=int, default=1, show_default=True, help="Check m = 1..max-ext"
)
OPTION_DEGREE = click.option(
    "--degree", type=int, required=True, help="Extension degree of the pairing field"
)
OPTION_LIMIT = click.option(
    "--limit", type=int, default=1, show_default=True, help="Maximum number of curves"
)
OPTION_SEED = click.option("--seed", type=int, default=0, show_default=True, help="Random seed")
OPTION_FILE = click.option(
    "--file",
    "path",
    required=True,
    type=click.Path(dir_okay=False),
    help="Curve JSON file",
)


def emit(ctx, envelope: report.ReportEnvelope):
    if ctx.obj["json"]:
        click.echo(envelope.to_json())
    else:
        click.echo(envelope.to_table())
    ctx.exit(envelope.exit_code)


@click.group()
@click.option("-v", "--verbose", count=True, help="-v for debug, -vv for trace logging")
@click.option("--json", "as_json", is_flag=True, help="Print the report as JSON")
@click.pass_context
def cli(ctx, verbose, as_json):
    ctx.ensure_object(dict)
    ctx.obj["json"] = as_json
    logger.setLevel(VERBOSITY[min(verbose, len(VERBOSITY) - 1)])


@cli.command()
@OPTION_P
@OPTION_A
@OPTION_S
@OPTION_T
@OPTION_ELL
@OPTION_M
@click.pass_context
def analyze(ctx, p, a, s, t, ell, m):
    """Symbolic ℓ-torsion analysis of a Weil polynomial"""
    emit(ctx, report.cmd_analyze(p, a, s, t, ell, m))


@cli.command()
@OPTION_P
@OPTION_A
@OPTION_S
@OPTION_T
@OPTION_ELL
@click.pass_context
def ss(ctx, p, a, s, t, ell):
    """Supersingular family of (s, t) and its torsion claims"""
    emit(ctx, report.cmd_ss_classify(p, a, s, t, ell))


@cli.command()
@OPTION_FILE
@OPTION_ELL
@OPTION_MAX_EXT
@OPTION_SEED
@click.pass_context
def curve(ctx, path, ell, max_ext, seed):
    """Check the symbolic classification of a curve against the oracle"""
    emit(ctx, report.cmd_curve_verify(path, ell, max_ext, seed))


@cli.command()
@OPTION_FILE
@click.option("--ell", type=int, required=True, help="Prime ℓ")
@OPTION_DEGREE
@OPTION_SEED
@click.pass_context
def pairing(ctx, path, ell, degree, seed):
    """Weil-pairing non-degeneracy on the ℓ-torsion over an extension"""
    emit(ctx, report.cmd_pairing_check(path, ell, degree, seed))


@cli.command()
@OPTION_P
@OPTION_A
@OPTION_S
@OPTION_T
@OPTION_LIMIT
@click.option("--out", type=click.Path(file_okay=False), default=None, help="Write curve files")
@click.pass_context
def search(ctx, p, a, s, t, limit, out):
    """Exhaustive search for curves with a given Weil polynomial"""
    emit(ctx, report.cmd_search(p, a, s, t, limit, out))


@cli.command()
@OPTION_SEED
@click.pass_context
def example9(ctx, seed):
    """Curve over F_3 with Weil polynomial (X² + X + 3)² and its full 5-torsion over F_81"""
    emit(ctx, report.cmd_example9(seed))


if __name__ == "__main__":
    cli(obj={})
