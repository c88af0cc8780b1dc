"""Command-line front end.

Examples::

    extremal-lab coeffs --set function=f1 --set truncation=100
    extremal-lab critical --degrees 12,16 --emit json,csv,svg --out results
    extremal-lab minset --set function=f1
    extremal-lab capacity --set contour.radius=0.5
    extremal-lab verify
    extremal-lab plot results/minimal_set.json results/critical_n12.json
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from . import __version__
from .algfun import laurent_coefficients
from .asymptotics import critical_sweep, error_rate_study, pade_vs_best_study, verify_benchmark
from .config import Config, ContourConfig, ExperimentConfig
from .exceptions import ConfigValidationError, ExtremalLabError
from .hardy import CriticalPointSearch, interpolation_certificate
from .minset import solve_minimal_set
from .models import Contour, FunctionSpec, InterpolationScheme, LaurentTail, SolveStatus
from .pade import pade_sweep, poles_of
from .parsers import load_experiment_config, resolve_function
from .potential import green_equilibrium
from .reporting import ExportManager, PolePlot, SummaryGenerator, plot_from_documents, schema_documents
from .reporting.schemas import (
    CriticalDocument,
    capacity_document,
    critical_point_document,
    minimal_set_document,
    pade_document,
    pade_vs_best_document,
    rate_document,
    tail_document,
    verification_document,
)
from .validation import EXIT_NUMERICAL, EXIT_OK, ErrorHandler, InputValidator

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class Experiment:
    """A validated configuration with its resolved function and output manager."""

    def __init__(self, config: ExperimentConfig, base_dir: Optional[Path] = None):
        self.config = config
        self.base_dir = base_dir
        self.exports = ExportManager(config.output_dir, config.emit)
        self.summary = SummaryGenerator()
        self._spec: Optional[FunctionSpec] = None
        self._tail: Optional[LaurentTail] = None

    @property
    def spec(self) -> FunctionSpec:
        if self._spec is None:
            reference = self.config.function
            if reference == "f1" and self.config.include_z5:
                reference = "f1_z5"
            self._spec = resolve_function(reference, self.base_dir)
        return self._spec

    @property
    def sampling_radius(self) -> float:
        if self.config.sampling_radius is not None:
            return self.config.sampling_radius
        return Config.DEFAULT_SAMPLING_RADIUS

    @property
    def tail(self) -> LaurentTail:
        if self._tail is None:
            self._tail = laurent_coefficients(self.spec, self.config.truncation, self.sampling_radius)
        return self._tail

    def plot(self, title: str) -> PolePlot:
        return PolePlot(title=title).add_branch_points(self.spec.branch_points)


def build_contour(plate: ContourConfig) -> Contour:
    """Capacity plate described by the configuration."""
    if plate.kind == "circle":
        return Contour.circle(plate.radius, plate.panels, complex(*plate.center))
    vertices = [complex(*v) for v in plate.vertices]
    if plate.kind == "segment":
        return Contour.segment(vertices[0], vertices[-1], plate.panels)
    return Contour.polyline(vertices, plate.panels, grade_start=True, grade_end=True)


# Subcommands


def cmd_coeffs(exp: Experiment, args: argparse.Namespace) -> int:
    tail = exp.tail
    exp.exports.write_document(tail_document(tail, exp.spec.label, exp.sampling_radius), "coefficients")
    print(f"{exp.spec.label}: {tail.truncation_length} coefficients, c_0 = {tail.coefficients[0]:.12g}")
    return EXIT_OK


def cmd_pade(exp: Experiment, args: argparse.Namespace) -> int:
    degrees = exp.config.degrees
    if exp.config.scheme == "infinity":
        scheme = InterpolationScheme.at_infinity()
        results = pade_sweep(exp.tail, scheme, degrees)
        critical = None
    else:
        critical = critical_sweep(exp.tail, degrees, exp.config.optimizer)
        best = {n: points[0].poles for n, points in critical.items() if points}
        scheme = InterpolationScheme.reflected_poles(best)
        results = pade_sweep(exp.spec, scheme, [n for n in degrees if n in best])

    plot = exp.plot(f"{exp.spec.label}: Pade poles ({exp.config.scheme})")
    failed = [n for n in degrees if results.get(n) is None]
    for n, result in results.items():
        if result is None:
            continue
        exp.exports.write_document(pade_document(result, exp.spec.label, n), f"pade_n{n}")
        if result.defective:
            logger.warning("Pade degree %d is defective", n)
        elif result.rational.degree >= 1:
            plot.add_poles(f"n={n}", poles_of(result.rational))
    if exp.exports.wants("svg"):
        exp.exports.write_svg("pade", plot.render())

    if args.compare:
        study = pade_vs_best_study(
            exp.spec, scheme, degrees, exp.config.optimizer, exp.config.truncation, critical=critical
        )
        exp.exports.write_document(pade_vs_best_document(study), "pade_vs_best")

    if failed:
        print(f"Pade failed for degrees {failed}; partial results written")
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_critical(exp: Experiment, args: argparse.Namespace) -> int:
    tail = exp.tail
    plot = exp.plot(f"{exp.spec.label}: best critical points")
    found: Dict[int, List] = {}
    failed: List[int] = []
    for n in exp.config.degrees:
        search = CriticalPointSearch(tail, n, exp.config.optimizer)
        points = search.run()
        found[n] = points
        document = CriticalDocument(
            label=exp.spec.label,
            degree=n,
            points=[critical_point_document(p, interpolation_certificate(tail, p.rational)) for p in points],
            failures=search.failures,
        )
        exp.exports.write_document(document, f"critical_n{n}")
        exp.exports.write_table(f"critical_n{n}", exp.exports.critical_csv(n, points))
        exp.exports.write_table(f"iterations_n{n}", exp.exports.iteration_csv(search.records))
        if points:
            plot.add_poles(f"n={n}", points[0].poles)
            print(f"n={n}: {len(points)} critical points, best objective {points[0].objective:.6e}")
        else:
            failed.append(n)
            print(f"n={n}: no start converged")
    if exp.exports.wants("svg"):
        exp.exports.write_svg("critical", plot.render())

    if args.rates:
        report = error_rate_study(
            exp.spec, exp.config.degrees, exp.config.optimizer, exp.config.truncation, critical=found
        )
        exp.exports.write_document(rate_document(report), "rates")
        exp.exports.write_table("rates", exp.exports.rate_csv(report))
        print(exp.summary.rate_table(report))

    if failed:
        print(f"Unconverged degrees {failed}; partial results written")
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_minset(exp: Experiment, args: argparse.Namespace) -> int:
    if exp.config.active_points:
        points = [complex(*p) for p in exp.config.active_points]
    else:
        points = exp.spec.branch_points
    result = solve_minimal_set(points)
    exp.exports.write_document(minimal_set_document(result), "minimal_set")

    plot = PolePlot(title=f"minimal set, cap = {result.capacity:.6f}").add_branch_points(points)
    for arc in result.cut.arcs:
        plot.add_cut(arc.vertices)
    if result.quad_diff.b_points:
        plot.add_points("b-points", result.quad_diff.b_points)
    if exp.exports.wants("svg"):
        exp.exports.write_svg("minimal_set", plot.render())

    print(f"capacity {result.capacity:.8f} ({result.status.value}), {len(result.cut.arcs)} arcs")
    for message in result.messages:
        print(f"  {message}")
    return EXIT_OK if result.status == SolveStatus.VERIFIED else EXIT_NUMERICAL


def cmd_capacity(exp: Experiment, args: argparse.Namespace) -> int:
    contour = build_contour(exp.config.contour)
    result = green_equilibrium(contour)
    exp.exports.write_document(capacity_document(result, exp.config.contour.model_dump()), "capacity")
    print(f"capacity {result.capacity:.8f}, Robin constant {result.robin_constant:.8f}")
    return EXIT_OK


def cmd_verify(exp: Experiment, args: argparse.Namespace) -> int:
    checks = verify_benchmark(exp.config.optimizer, exp.config.truncation)
    exp.exports.write_document(verification_document(checks), "verification")
    print(exp.summary.check_table(checks))
    for hint in exp.summary.recommendations(checks):
        print(f"  hint: {hint}")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_NUMERICAL


def cmd_plot(exp: Experiment, args: argparse.Namespace) -> int:
    documents: List[Dict[str, Any]] = []
    for path in args.documents:
        try:
            documents.append(json.loads(Path(path).read_text(encoding="utf-8")))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigValidationError(ErrorHandler.handle_parse_error(e, path)) from e
    svg = plot_from_documents(documents, title=args.title)
    exp.exports.write_text(f"{args.name}.svg", svg)
    return EXIT_OK


def cmd_schemas(exp: Experiment, args: argparse.Namespace) -> int:
    for kind, schema in schema_documents().items():
        exp.exports.write_text(f"{kind}.schema.json", json.dumps(schema, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


COMMANDS: Dict[str, Callable[[Experiment, argparse.Namespace], int]] = {
    "coeffs": cmd_coeffs,
    "pade": cmd_pade,
    "critical": cmd_critical,
    "minset": cmd_minset,
    "capacity": cmd_capacity,
    "verify": cmd_verify,
    "plot": cmd_plot,
    "schemas": cmd_schemas,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Experiment manifest (JSON, YAML or TOML)")
    common.add_argument("--out", help="Output directory (overrides output_dir)")
    common.add_argument("--seed", type=int, help="Random seed of the multistart")
    common.add_argument("--degrees", help="Degree list, e.g. 4,6,8 or 4-14")
    common.add_argument("--emit", help="Output formats, e.g. json,csv,svg")
    common.add_argument(
        "--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
        help="Override a configuration entry (repeatable)",
    )
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging")

    parser = argparse.ArgumentParser(
        prog="extremal-lab",
        description="Best rational approximation, Pade approximants and condenser capacity in the unit disk",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__.split("Examples::", 1)[1],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("coeffs", parents=[common], help="Laurent coefficients of f")
    pade = sub.add_parser("pade", parents=[common], help="Classical or multipoint Pade approximants")
    pade.add_argument("--compare", action="store_true", help="Also compare with best critical points")
    critical = sub.add_parser("critical", parents=[common], help="Critical points of the squared error")
    critical.add_argument("--rates", action="store_true", help="Also run the error-rate study")
    sub.add_parser("minset", parents=[common], help="Minimal-capacity cut for the branch points")
    sub.add_parser("capacity", parents=[common], help="Green capacity of a plate")
    sub.add_parser("verify", parents=[common], help="Benchmark checks with a PASS/FAIL table")
    plot = sub.add_parser("plot", parents=[common], help="SVG from emitted JSON documents")
    plot.add_argument("documents", nargs="+", help="JSON documents to draw")
    plot.add_argument("--name", default="plot", help="Output file stem")
    plot.add_argument("--title", default=None)
    sub.add_parser("schemas", parents=[common], help="JSON Schemas of emitted documents")
    return parser


def _overrides(args: argparse.Namespace) -> List[str]:
    overrides = list(args.overrides)
    if args.seed is not None:
        overrides.append(f"optimizer.seed={args.seed}")
    if args.degrees is not None:
        result = InputValidator.validate_degrees(args.degrees)
        if not result["valid"]:
            raise ConfigValidationError(ErrorHandler.format_validation_errors(result))
        overrides.append(f"degrees={result['degrees']}")
    if args.emit is not None:
        result = InputValidator.validate_emit_formats(args.emit)
        if not result["valid"]:
            raise ConfigValidationError(ErrorHandler.format_validation_errors(result))
        overrides.append(f"emit=[{', '.join(result['formats'])}]")
    return overrides


def load_experiment(args: argparse.Namespace) -> Experiment:
    config = load_experiment_config(args.config, _overrides(args))
    if args.out is not None:
        config = config.model_copy(update={"output_dir": args.out})
    base_dir = Path(args.config).parent if args.config else None
    return Experiment(config, base_dir)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run one subcommand and return its exit code."""
    args = build_parser().parse_args(argv)
    level = "DEBUG" if args.verbose or Config.is_debug_mode() else Config.get_log_level()
    logging.basicConfig(level=level, format=LOG_FORMAT)

    try:
        experiment = load_experiment(args)
        logger.debug("Running %s with %s", args.command, experiment.config.model_dump())
        return COMMANDS[args.command](experiment, args)
    except ExtremalLabError as e:
        print(f"Error: {e}", file=sys.stderr)
        return ErrorHandler.exit_code_for(e)
    except KeyboardInterrupt:
        print("Interrupted", file=sys.stderr)
        return 130
    except Exception as e:
        logger.exception("Unexpected failure in %s", args.command)
        print(ErrorHandler.handle_numerical_error(e, args.command), file=sys.stderr)
        return ErrorHandler.exit_code_for(e)


def run() -> None:
    sys.exit(main())
