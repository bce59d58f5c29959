"""Command-line interface for jet rings of Poisson schemes."""

import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import click

from . import __version__
from .config import DEFAULT_SEED, Settings, load_settings
from .exceptions import (
    ConfigurationError,
    InputError,
    JetPoissonError,
    NotConvergedError,
    ResourceLimitError,
)
from .logging_config import setup_logging
from .models.ideal import Ideal
from .models.lie import FiberSpec
from .models.polynomial import Polynomial
from .models.ring import ChiralOperator, JetRing, RingPresentation
from .services.axioms import pva_axiom_suite
from .services.groebner import basis, ideal_equal, initial_ideal, normal_form
from .services.jet import build_jet_ring, iota_point, jet_ideal, make_jet_point
from .services.liealg import center_isomorphism_check, fiber_ideal, lie_algebra_from_json
from .services.stratify import base_rank_at, build_rank_matrix, rank_at, rk, stratum
from .services.vpa import (
    DEFAULT_MAX_ITER,
    apply_mode,
    chiral_core_upto,
    graded_dimensions,
    is_chiral_ideal,
    vp_center_upto,
)
from .utils.budget import Budget
from .utils.parsing import (
    FIXTURES,
    fixture_path,
    format_polynomial,
    load_ring,
    parse_point,
    parse_polynomial,
    parse_xi,
)

logger = logging.getLogger(__name__)

COMMANDS = (
    "jet-ring",
    "bracket",
    "axioms",
    "chiral-check",
    "core",
    "center",
    "rank",
    "strata",
    "fibers",
    "center-iso",
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_RESOURCE = 2


@dataclass(frozen=True)
class JobConfig:
    """One batch job: a ring file, a command and its parameters."""

    input_path: str
    command: str
    level: int = 0
    degree_bound: int = 2
    seed: int = DEFAULT_SEED
    samples: int = 50
    point: Optional[str] = None
    xi: Optional[str] = None
    ideal: Tuple[str, ...] = ()
    jet_closure: bool = False
    source: Optional[str] = None
    mode: int = 0
    operand: Optional[str] = None
    max_iter: int = DEFAULT_MAX_ITER
    progress: bool = False
    budget: Budget = field(default_factory=Budget)
    output: str = "text"

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise InputError("command", f"unknown command, expected one of {', '.join(COMMANDS)}")
        if self.level < 0:
            raise InputError("level", f"must be >= 0, got {self.level}")
        if self.degree_bound < 0:
            raise InputError("degree-bound", f"must be >= 0, got {self.degree_bound}")
        if self.samples < 1:
            raise InputError("samples", f"must be >= 1, got {self.samples}")
        if self.mode < 0:
            raise InputError("mode", f"must be >= 0, got {self.mode}")
        if self.output not in ("text", "json"):
            raise InputError("output", f"expected text or json, got {self.output!r}")


# Each handler returns (text output, JSON-ready object); partial results for
# a ResourceLimitError go into ``partial``.
Handler = Callable[[JobConfig, List[str]], Tuple[str, Any]]


def _resolve_input(path: str) -> Path:
    candidate = Path(path)
    if not candidate.exists() and candidate.name in FIXTURES:
        return fixture_path(candidate.name)
    return candidate


def _ring(config: JobConfig) -> RingPresentation:
    return load_ring(_resolve_input(config.input_path))


def _jet(config: JobConfig) -> Tuple[RingPresentation, JetRing]:
    ring = _ring(config)
    return ring, build_jet_ring(ring, config.level)


def _fmt(p: Polynomial) -> str:
    return format_polynomial(p)


def _ideal(config: JobConfig, jr: JetRing) -> Ideal:
    generators = tuple(parse_polynomial(s, "ideal") for s in config.ideal)
    for g in generators:
        if not jr.contains(g):
            raise InputError("ideal", f"uses variables outside J_{jr.level}", str(g))
    ideal = Ideal(generators)
    return jet_ideal(jr, ideal) if config.jet_closure else ideal


def _ideal_text(ideal: Ideal) -> str:
    return "<" + ", ".join(_fmt(g) for g in ideal.generators) + ">"


def _dims_upto(elements, d: int) -> Dict[int, int]:
    counts = graded_dimensions(elements)
    return {k: counts.get(k, 0) for k in range(d + 1)}


def _jet_ring(config: JobConfig, partial: List[str]) -> Tuple[str, Any]:
    ring, jr = _jet(config)
    variables = [str(v) for v in jr.jet_vars]
    relations = [_fmt(g) for g in jr.jet_relations.generators]
    weights = jr.jet_weight_map
    lines = [
        f"J_{jr.level} of {ring.name or config.input_path}: "
        f"{len(variables)} variables, {len(relations)} relations",
        f"Variables: {', '.join(variables)}",
    ]
    if relations:
        lines.append("Relations:")
        lines.extend(f"  {r}" for r in relations)
    if weights is not None:
        lines.append("Weights: " + ", ".join(f"{v}={weights[v]}" for v in jr.jet_vars))
    data = {
        "level": jr.level,
        "variables": variables,
        "relations": relations,
        "weights": None if weights is None else {str(v): weights[v] for v in jr.jet_vars},
    }
    return "\n".join(lines), data


def _bracket(config: JobConfig, partial: List[str]) -> Tuple[str, Any]:
    if config.source is None or config.operand is None:
        raise InputError("source", "bracket needs --source and --operand")
    _, jr = _jet(config)
    source = parse_polynomial(config.source, "source")
    operand = parse_polynomial(config.operand, "operand")
    value = apply_mode(ChiralOperator(jr, source, config.mode), operand)
    value = normal_form(value, jr.jet_relations, config.budget)
    text = f"({_fmt(source)})_({config.mode}) ({_fmt(operand)}) = {_fmt(value)}"
    data = {
        "source": _fmt(source),
        "mode": config.mode,
        "operand": _fmt(operand),
        "result": _fmt(value),
    }
    return text, data


def _axioms(config: JobConfig, partial: List[str]) -> Tuple[str, Any]:
    ring, jr = _jet(config)
    report = pva_axiom_suite(
        jr,
        ring.poisson_structure,
        samples=config.samples,
        seed=config.seed,
        progress=config.progress,
        budget=config.budget,
    )
    return str(report), report.to_dict()


def _chiral_check(config: JobConfig, partial: List[str]) -> Tuple[str, Any]:
    ring, jr = _jet(config)
    ideal = _ideal(config, jr)
    check = is_chiral_ideal(jr, ring.poisson_structure, ideal, config.budget)
    data = {"ideal": [_fmt(g) for g in ideal.generators], **check.to_dict()}
    return f"{_ideal_text(ideal)} at level {jr.level}: {check}", data


def _core(config: JobConfig, partial: List[str]) -> Tuple[str, Any]:
    ring, jr = _jet(config)
    ideal = _ideal(config, jr)
    try:
        elements = chiral_core_upto(
            jr,
            ring.poisson_structure,
            ideal,
            config.degree_bound,
            max_iter=config.max_iter,
            budget=config.budget,
        )
    except NotConvergedError as e:
        partial.extend(_fmt(p) for p in e.last_iterate or ())
        raise
    lines = [
        f"Chiral Poisson core of {_ideal_text(ideal)} up to degree {config.degree_bound} "
        f"(dimension {len(elements)}):"
    ]
    lines.extend(f"  {_fmt(p)}" for p in elements)
    data = {
        "degree_bound": config.degree_bound,
        "dimension": len(elements),
        "basis": [_fmt(p) for p in elements],
    }
    return "\n".join(lines), data


def _center(config: JobConfig, partial: List[str]) -> Tuple[str, Any]:
    ring, jr = _jet(config)
    quotient = _ideal(config, jr)
    elements = vp_center_upto(
        jr, ring.poisson_structure, quotient, config.degree_bound, config.budget
    )
    dims = _dims_upto(elements, config.degree_bound)
    lines = [f"Vertex Poisson center up to degree {config.degree_bound} (dimension {len(elements)}):"]
    lines.extend(f"  {_fmt(p)}" for p in elements)
    lines.append("Dimensions by degree: " + ", ".join(f"{k}: {v}" for k, v in dims.items()))
    data = {
        "degree_bound": config.degree_bound,
        "basis": [_fmt(p) for p in elements],
        "dimensions": {str(k): v for k, v in dims.items()},
    }
    return "\n".join(lines), data


def _rank(config: JobConfig, partial: List[str]) -> Tuple[str, Any]:
    if not config.point:
        raise InputError("point", "rank needs --point")
    ring, jr = _jet(config)
    coords = parse_point(config.point)
    if set(coords) <= set(ring.vars) and jr.level > 0:
        point = iota_point(jr, coords)
    else:
        point = make_jet_point(jr, coords)
    matrix = build_rank_matrix(jr, ring.poisson_structure)
    rank = rank_at(matrix, point)
    base = base_rank_at(matrix, point)
    data = {"level": jr.level, "point": str(point), "rank": rank, "base_rank": base, "rk": None}
    if rank != (jr.level + 1) * base:
        # non-constant arc over a non-regular base point
        return f"rank {rank}, base rank {base}, rk undefined at this arc", data
    data["rk"] = rk(matrix, point)
    return f"rank {rank}, rk {data['rk']}", data


def _strata(config: JobConfig, partial: List[str]) -> Tuple[str, Any]:
    ring, jr = _jet(config)
    ps = ring.poisson_structure
    lines = []
    data = []
    for j in range(ps.size + 1):
        s = stratum(jr, ps, j)
        generators = [_fmt(g) for g in basis(s.base_ideal, config.budget)]
        chiral = bool(is_chiral_ideal(jr, ps, s.jet_ideal, config.budget))
        line = f"j={j}: base ideal <{', '.join(generators)}>, chiral {str(chiral).lower()}"
        lines.append(line)
        partial.append(line)
        data.append({"j": j, "base_ideal": generators, "chiral": chiral})
    return "\n".join(lines), data


def _fibers(config: JobConfig, partial: List[str]) -> Tuple[str, Any]:
    lie = lie_algebra_from_json(_resolve_input(config.input_path))
    jr = build_jet_ring(lie.presentation, config.level)
    spec = FiberSpec.from_mapping(config.level, parse_xi(config.xi or ""))
    ideal = fiber_ideal(lie, jr, spec)
    zero = fiber_ideal(lie, jr, FiberSpec(config.level))
    standard = {v: 1 for v in jr.jet_vars}
    graded = ideal_equal(initial_ideal(ideal, standard, config.budget), zero, config.budget)
    chiral = bool(is_chiral_ideal(jr, lie.poisson, ideal, config.budget))
    lines = [
        f"Fiber ideal at level {config.level}, xi = {spec}:",
        *(f"  {_fmt(g)}" for g in ideal.generators),
        f"Chiral: {str(chiral).lower()}",
        f"Initial ideal equals the zero fiber: {str(graded).lower()}",
    ]
    data = {
        "level": config.level,
        "generators": [_fmt(g) for g in ideal.generators],
        "chiral": chiral,
        "initial_equals_zero_fiber": graded,
    }
    return "\n".join(lines), data


def _center_iso(config: JobConfig, partial: List[str]) -> Tuple[str, Any]:
    lie = lie_algebra_from_json(_resolve_input(config.input_path))
    report = center_isomorphism_check(lie, config.level, config.degree_bound, config.budget)
    return str(report), report.to_dict()


HANDLERS: Dict[str, Handler] = {
    "jet-ring": _jet_ring,
    "bracket": _bracket,
    "axioms": _axioms,
    "chiral-check": _chiral_check,
    "core": _core,
    "center": _center,
    "rank": _rank,
    "strata": _strata,
    "fibers": _fibers,
    "center-iso": _center_iso,
}


def _emit(config: JobConfig, text: str, data: Any) -> None:
    if config.output == "json":
        click.echo(json.dumps(data, indent=2))
    else:
        click.echo(text)


def run(config: JobConfig) -> int:
    """Run one job, writing results to stdout and diagnostics to stderr.

    Returns:
        0 on success, 1 on input errors, 2 when a resource budget runs out
    """
    partial: List[str] = []
    try:
        text, data = HANDLERS[config.command](config, partial)
    except ResourceLimitError as e:
        for line in partial:
            click.echo(line)
        click.echo(f"Resource Limit: {str(e)}", err=True)
        click.echo("\nSuggestions:", err=True)
        click.echo("  - Raise --budget-spairs or --budget-degree", err=True)
        click.echo("  - Lower --level or --degree-bound", err=True)
        return EXIT_RESOURCE
    except NotConvergedError as e:
        for line in partial:
            click.echo(line)
        click.echo(f"Not Converged: {str(e)}", err=True)
        return EXIT_INPUT
    except (InputError, ConfigurationError) as e:
        click.echo(f"Input Error: {str(e)}", err=True)
        return EXIT_INPUT
    except JetPoissonError as e:
        click.echo(f"Error: {str(e)}", err=True)
        return EXIT_INPUT
    _emit(config, text, data)
    logger.info(f"{config.command} on {config.input_path} finished")
    return EXIT_OK


def _execute(settings: Settings, command: str, **options: Any) -> None:
    spairs = options.pop("budget_spairs", None)
    degree = options.pop("budget_degree", None)
    if options.get("seed") is None:
        options["seed"] = settings.seed
    try:
        config = JobConfig(
            command=command,
            budget=Budget(
                max_spairs=spairs if spairs is not None else settings.max_spairs,
                max_degree=degree if degree is not None else settings.max_degree,
            ),
            **options,
        )
    except InputError as e:
        click.echo(f"Input Error: {str(e)}", err=True)
        sys.exit(EXIT_INPUT)
    code = run(config)
    if code:
        sys.exit(code)


def job_options(f: Callable) -> Callable:
    """Options shared by every command."""
    f = click.option(
        "--output", type=click.Choice(["text", "json"]), default="text", show_default=True,
        help="Output format",
    )(f)
    f = click.option("--budget-degree", type=int, default=None, help="Maximum Gröbner basis degree")(f)
    f = click.option("--budget-spairs", type=int, default=None, help="Maximum S-pair reductions")(f)
    f = click.option("--level", "-n", type=int, default=0, show_default=True, help="Jet level n")(f)
    f = click.argument("input_path", type=click.Path(dir_okay=False))(f)
    return f


def ideal_options(f: Callable) -> Callable:
    f = click.option(
        "--jet-closure", is_flag=True, help="Use T^j g for every generator g (base generators)"
    )(f)
    f = click.option("--ideal", "-I", multiple=True, help="Ideal generator (repeatable)")(f)
    return f


def degree_option(f: Callable) -> Callable:
    return click.option(
        "--degree-bound", "-d", type=int, default=2, show_default=True, help="Degree bound d"
    )(f)


@click.group()
@click.version_option(version=__version__)
@click.option("--verbose", "-v", is_flag=True, help="Enable debug logging")
@click.pass_context
def cli(ctx: click.Context, verbose: bool):
    """Jet schemes of Poisson schemes and their vertex Poisson structure.

    Every command reads a ring file in JSON (the shipped sl2.json,
    sl2_slice_regular.json and symplectic_plane.json are found by name).
    """
    try:
        settings = load_settings()
    except ConfigurationError as e:
        click.echo(f"Configuration Error: {str(e)}", err=True)
        sys.exit(EXIT_INPUT)
    setup_logging(logging.DEBUG if verbose else settings.log_level)
    ctx.obj = settings


@cli.command("jet-ring")
@job_options
@click.pass_obj
def jet_ring_command(settings: Settings, **options):
    """Print the jet variables and relations of J_n R."""
    _execute(settings, "jet-ring", **options)


@cli.command("bracket")
@job_options
@click.option("--source", "-a", required=True, help="Source polynomial a")
@click.option("--mode", "-k", type=int, default=0, show_default=True, help="Mode k >= 0")
@click.option("--operand", "-b", required=True, help="Operand polynomial b")
@click.pass_obj
def bracket_command(settings: Settings, **options):
    """Compute a_(k) b in J_n R."""
    _execute(settings, "bracket", **options)


@cli.command("axioms")
@job_options
@click.option("--samples", type=int, default=50, show_default=True, help="Samples per axiom")
@click.option("--seed", type=int, default=None, help="Random seed (default from settings)")
@click.option("--progress", is_flag=True, help="Show a progress bar on stderr")
@click.pass_obj
def axioms_command(settings: Settings, **options):
    """Check the vertex Poisson axioms on random samples."""
    _execute(settings, "axioms", **options)


@cli.command("chiral-check")
@job_options
@ideal_options
@click.pass_obj
def chiral_check_command(settings: Settings, **options):
    """Decide whether an ideal of J_n R is chiral Poisson."""
    _execute(settings, "chiral-check", **options)


@cli.command("core")
@job_options
@ideal_options
@degree_option
@click.option("--max-iter", type=int, default=DEFAULT_MAX_ITER, show_default=True)
@click.pass_obj
def core_command(settings: Settings, **options):
    """Chiral Poisson core of an ideal, up to a degree bound."""
    _execute(settings, "core", **options)


@cli.command("center")
@job_options
@ideal_options
@degree_option
@click.pass_obj
def center_command(settings: Settings, **options):
    """Vertex Poisson center of J_n R modulo an ideal, up to a degree bound."""
    _execute(settings, "center", **options)


@cli.command("rank")
@job_options
@click.option("--point", "-p", required=True, help="Coordinates, e.g. e=1,h=0,f=0")
@click.pass_obj
def rank_command(settings: Settings, **options):
    """Rank of the jet rank matrix at a rational point."""
    _execute(settings, "rank", **options)


@cli.command("strata")
@job_options
@click.pass_obj
def strata_command(settings: Settings, **options):
    """Rank strata ideals and their chirality."""
    _execute(settings, "strata", **options)


@cli.command("fibers")
@job_options
@click.option("--xi", default=None, help="Jet coordinates, e.g. 1,0=2,1,1=0")
@click.pass_obj
def fibers_command(settings: Settings, **options):
    """Fiber ideal of the jet adjoint quotient."""
    _execute(settings, "fibers", **options)


@cli.command("center-iso")
@job_options
@degree_option
@click.pass_obj
def center_iso_command(settings: Settings, **options):
    """Compare the regular slice center with the restricted invariants."""
    _execute(settings, "center-iso", **options)


def main():
    """Entry point for the CLI."""
    cli()


if __name__ == "__main__":
    main()
