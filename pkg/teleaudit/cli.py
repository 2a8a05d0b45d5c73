"""
Command line: teleport, noclone, audit, channel-check, verify, export-channel.

Exit codes: 0 = expected outcome, 1 = input or usage error, 2 = boundary or
degenerate case. Reports go to stdout; logs go to stderr. ``--format`` and
``--seed`` work before the command name as defaults for it, or after as
overrides.
"""
import functools
import logging
import sys

import click

from .channels import certify
from .composite import teleport_layout
from .config import DEFAULT_EVENT_I, DEFAULT_EVENT_II, DEFAULT_RANDOM_PROBES, EXIT_BOUNDARY, EXIT_INPUT_ERROR, EXIT_OK
from .documents import channel_document, dumps, load_json, parse_channel_document, parse_state_document
from .errors import ConsistencyError, InvalidInputError
from .frames import Event, EventLabel, Verdict, audit
from .nocloning import falsify
from .reporting import (audit_payload, certificate_payload, noclone_payload, render_noclone_text, render_text,
                        teleport_payload, verify_payload)
from .states import STATE_NAMES, named_state
from .teleport import run_teleport, teleport_channel, verify_theorem

logger = logging.getLogger(__name__)


class Coordinates(click.ParamType):
    """An event given as ``t,x``"""

    name = "t,x"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            t, x = (float(part) for part in str(value).split(","))
        except ValueError:
            self.fail(f"expected two comma-separated numbers 't,x', got {value!r}", param, ctx)
        return t, x


def emit(payload, fmt, text=render_text):
    if fmt == "json":
        click.echo(dumps(payload))
    else:
        click.echo(text(payload))


def emit_error(message, fmt):
    if fmt == "json":
        click.echo(dumps({"error": message}))
    else:
        click.echo(f"error: {message}", err=True)


def _group_default(name):
    ctx = click.get_current_context()
    return (ctx.obj or {}).get(name)


def resolve_seed(seed):
    """Command-level --seed, else the global one; randomized commands need one of them"""
    if seed is None:
        seed = _group_default("seed")
    if seed is None:
        raise click.UsageError("Missing option '--seed' (give it before or after the command name)")
    return seed


def handle_errors(command):
    """Resolve --format against the global flag; turn domain errors into an error report and exit code 1"""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        if "fmt" in kwargs:
            kwargs["fmt"] = kwargs["fmt"] or _group_default("fmt") or "text"
        fmt = kwargs.get("fmt", "text")
        try:
            return command(*args, **kwargs)
        except (InvalidInputError, ConsistencyError) as e:
            logger.debug(f"{command.__name__} rejected input", exc_info=True)
            emit_error(str(e), fmt)
            return EXIT_INPUT_ERROR

    return wrapper


format_option = click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default=None,
    help="Report format; overrides the global --format (default text).",
)


def state_options(command):
    command = click.option("--state-file", type=click.File("r"), default=None,
                           help="State document (JSON) to use as rho_C.")(command)
    command = click.option("--state", "state_name", type=click.Choice(STATE_NAMES), default=None,
                           help="Named qubit state to use as rho_C.")(command)
    return command


def resolve_state(state_name, state_file):
    if (state_name is None) == (state_file is None):
        raise InvalidInputError("Give exactly one of --state or --state-file")
    if state_name is not None:
        return named_state(state_name)
    doc = load_json(state_file.read(), source=state_file.name)
    return parse_state_document(doc)


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Debug logging on stderr.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default=None,
              help="Report format for every command (default text).")
@click.option("--seed", type=click.IntRange(min=0), default=None, help="Seed for randomized commands.")
@click.pass_context
def cli(ctx, verbose, fmt, seed):
    """Teleportation and no-cloning verification engine."""
    ctx.obj = {"fmt": fmt, "seed": seed}
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


@cli.command()
@state_options
@format_option
@handle_errors
def teleport(state_name, state_file, fmt):
    """Teleport rho_C from C to B and report both marginals."""
    report = run_teleport(resolve_state(state_name, state_file))
    if not report.b_matches_input:
        raise ConsistencyError(f"B marginal differs from the input by {report.dist_b:.3e}; teleportation failed")

    emit(teleport_payload(report), fmt)
    if report.boundary_case:
        return EXIT_BOUNDARY
    return EXIT_OK


@cli.command()
@click.option("--seed", type=click.IntRange(min=0), default=None, help="First instance seed.")
@click.option("--instances", type=click.IntRange(min=1), default=100, show_default=True,
              help="Number of random channels (seeds seed .. seed+instances-1).")
@click.option("--probes", "n_random", type=click.IntRange(min=0), default=DEFAULT_RANDOM_PROBES, show_default=True,
              help="Random probes added to the six Pauli eigenstates.")
@format_option
@handle_errors
def noclone(seed, instances, n_random, fmt):
    """Search a witness rho_C against cloning for random structured channels."""
    results = falsify(resolve_seed(seed), instances, teleport_layout(), n_random=n_random)
    payload = noclone_payload(results)
    emit(payload, fmt, text=render_noclone_text)
    return EXIT_OK if payload["all_witnessed"] else EXIT_BOUNDARY


@cli.command("audit")
@state_options
@click.option("--eI", "event_i", type=Coordinates(), default=",".join(map(str, DEFAULT_EVENT_I)), show_default=True,
              help="EventI (Bell measurement on A, C) as t,x.")
@click.option("--eII", "event_ii", type=Coordinates(), default=",".join(map(str, DEFAULT_EVENT_II)), show_default=True,
              help="EventII (correction on B) as t,x.")
@format_option
@handle_errors
def audit_command(state_name, state_file, event_i, event_ii, fmt):
    """Audit the frame-ordering argument for rho_C."""
    rho_c = resolve_state(state_name, state_file)
    report = audit(rho_c, Event(EventLabel.EVENT_I, *event_i), Event(EventLabel.EVENT_II, *event_ii))
    emit(audit_payload(report), fmt)
    return EXIT_OK if report.verdict is Verdict.NO_CONTRADICTION else EXIT_BOUNDARY


@cli.command("channel-check")
@click.argument("channel_file", type=click.File("r"))
@format_option
@handle_errors
def channel_check(channel_file, fmt):
    """Certify a channel document: trace preservation, Choi spectrum, partition."""
    channel = parse_channel_document(load_json(channel_file.read(), source=channel_file.name))
    cert = certify(channel)
    emit(certificate_payload(cert), fmt)
    return EXIT_OK if cert.completely_positive else EXIT_BOUNDARY


@cli.command()
@click.option("--seed", type=click.IntRange(min=0), default=None, help="Probe stream seed.")
@click.option("--probes", "n_pure", type=click.IntRange(min=1), default=1000, show_default=True,
              help="Haar-random pure probes.")
@click.option("--mixed", "n_mixed", type=click.IntRange(min=0), default=100, show_default=True,
              help="Random mixed probes.")
@format_option
@handle_errors
def verify(seed, n_pure, n_mixed, fmt):
    """Check (T rho)_B = rho_C and (T rho)_C = I/2 over random probes."""
    summary = verify_theorem(n_pure, resolve_seed(seed), n_mixed=n_mixed)
    emit(verify_payload(summary), fmt)
    return EXIT_OK if summary.passed else EXIT_BOUNDARY


@cli.command("export-channel")
@click.option("--output", type=click.File("w"), default="-", help="Destination file (default stdout).")
@handle_errors
def export_channel(output):
    """Write the teleportation channel as a structured channel document."""
    output.write(dumps(channel_document(teleport_channel())) + "\n")
    return EXIT_OK


def main(argv=None):
    try:
        rv = cli.main(args=argv, prog_name="teleaudit", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return EXIT_INPUT_ERROR
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_INPUT_ERROR
    except Exception as e:
        logger.exception("Unexpected error")
        click.echo(f"error: unexpected failure: {e}", err=True)
        return EXIT_INPUT_ERROR

    return rv if isinstance(rv, int) else EXIT_OK


