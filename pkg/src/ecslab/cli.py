"""Command-line interface for ecslab.

This module reproduces the fidelity and probability curves as CSV files, runs
single teleportation instances, reports entanglement figures of merit and
runs the oracle-agreement suite, using argparse.
"""

import argparse
import csv
import json
import logging
import os
import sys
from collections.abc import Callable
from math import pi
from typing import Any

from ecslab import __version__
from ecslab.coherent_algebra import make_g, make_h, mean_photons_h
from ecslab.decoherence import DEFAULT_ETAS, default_alpha0_grid, fig1_sweep
from ecslab.entanglement_metrics import (
    entanglement_of,
    entropy,
    g_state_eigenvalues,
    squeezed_entanglement,
)
from ecslab.exceptions import EcslabError
from ecslab.models import (
    CoherentSuperposition,
    CoherentTerm,
    ProtocolRun,
    QubitPoint,
    Resource,
    RunConfig,
    SweepTable,
    ValidationReport,
)
from ecslab.parallel import ProgressCallback
from ecslab.teleportation import (
    DEFAULT_FIG2_ETAS,
    default_fig2_alphas,
    default_fig3_alphas,
    fig2_table,
    fig3_table,
    mean_photons_sphere,
    p_even_closed_form,
    p_odd_noisy,
    qubit_to_cat,
    run_protocol,
    teleport_state,
)
from ecslab.validation import CHECKS, DEFAULT_SEED, require_all, run_validation

# Try to import rich for tables and progress bars
try:
    from rich.console import Console
    from rich.progress import (
        BarColumn,
        Progress,
        SpinnerColumn,
        TaskProgressColumn,
        TextColumn,
        TimeElapsedColumn,
    )
    from rich.table import Table

    RICH_AVAILABLE = True
except ImportError:
    RICH_AVAILABLE = False

SEED_ENV = "ECSLAB_SEED"
JSON_SCHEMA = 1
# Teleport tables hide records less likely than this.
DISPLAY_FLOOR = 1e-12
# Below this amplitude entangle reports the alpha -> 0 limits.
ENTANGLE_ALPHA_FLOOR = 1e-4

logger = logging.getLogger(__name__)


def setup_logging(verbose: bool = False, quiet: bool = False) -> None:
    """Configure logging based on verbosity settings."""
    if quiet:
        level = logging.ERROR
    elif verbose:
        level = logging.DEBUG
    else:
        level = logging.INFO

    logging.basicConfig(
        level=level,
        format="%(message)s",
    )


def _float_list(text: str) -> tuple[float, ...]:
    """Parse a comma-separated list of floats."""
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid number list: {text!r}") from e
    if not values:
        raise argparse.ArgumentTypeError("empty number list")
    return values


def create_parser() -> argparse.ArgumentParser:
    """Create and configure the argument parser."""
    common = argparse.ArgumentParser(add_help=False)
    behavior_group = common.add_argument_group("Behavior options")
    behavior_group.add_argument(
        "-w",
        "--workers",
        type=int,
        metavar="N",
        help="Evaluate sweep grids on N threads (default: sequential).",
    )
    behavior_group.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="Enable verbose output.",
    )
    behavior_group.add_argument(
        "-q",
        "--quiet",
        action="store_true",
        help="Suppress all output except errors.",
    )
    behavior_group.add_argument(
        "--no-progress",
        action="store_true",
        help="Disable progress bar (uses simple text output).",
    )

    parser = argparse.ArgumentParser(
        prog="ecslab",
        description=(
            "Entangled coherent states: exact coherent-state algebra, photon "
            "loss, photon-counting teleportation and a truncated-Fock oracle."
        ),
        epilog=(
            "Examples:\n"
            "  %(prog)s fig1 --out fig1.csv\n"
            "  %(prog)s fig2 --etas 1,0.9,0.5 --weighted --out fig2.csv\n"
            "  %(prog)s fig3 --out fig3.csv\n"
            "  %(prog)s teleport --alpha 1 --eta 0.7 --theta 1.5708 --phi 0\n"
            "  %(prog)s entangle --alpha 0.5 --r 1.0 --json\n"
            "  %(prog)s validate --cutoff 5 --seed 7\n"
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "-V",
        "--version",
        action="version",
        version=f"%(prog)s {__version__}",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    fig1 = sub.add_parser(
        "fig1", parents=[common], help="Decohered-pair fidelity vs alpha0 (CSV)."
    )
    fig1.add_argument(
        "--etas",
        type=_float_list,
        default=DEFAULT_ETAS,
        metavar="LIST",
        help="Comma-separated transmissions (default: 0.9,0.7,0.5,0.3,0.1).",
    )
    fig1.add_argument("--alpha0-min", type=float, default=0.01, metavar="X")
    fig1.add_argument("--alpha0-max", type=float, default=3.0, metavar="X")
    fig1.add_argument(
        "--steps", type=int, default=150, metavar="N", help="Log-spaced points."
    )
    fig1.add_argument("-o", "--out", required=True, metavar="FILE", help="CSV path.")

    fig2 = sub.add_parser(
        "fig2", parents=[common], help="Sphere-averaged teleportation fidelity (CSV)."
    )
    fig2.add_argument(
        "--etas",
        type=_float_list,
        default=DEFAULT_FIG2_ETAS,
        metavar="LIST",
        help="Comma-separated transmissions (default: 1,0.9,0.7,0.5,0.3).",
    )
    fig2.add_argument(
        "--alphas",
        type=_float_list,
        metavar="LIST",
        help="Comma-separated amplitudes (default: 80 points on [0.05, 4]).",
    )
    fig2.add_argument(
        "--weighted",
        action="store_true",
        help="Weight the fidelity average by the odd-count probability.",
    )
    fig2.add_argument("-o", "--out", required=True, metavar="FILE", help="CSV path.")

    fig3 = sub.add_parser(
        "fig3", parents=[common], help="G-resource success probability (CSV)."
    )
    fig3.add_argument(
        "--alphas",
        type=_float_list,
        metavar="LIST",
        help="Comma-separated amplitudes (default: 151 points on [0, 3]).",
    )
    fig3.add_argument("-o", "--out", required=True, metavar="FILE", help="CSV path.")

    teleport = sub.add_parser(
        "teleport", parents=[common], help="Run one teleportation instance."
    )
    teleport.add_argument("--alpha", type=float, default=1.0, metavar="A")
    teleport.add_argument("--eta", type=float, default=1.0, metavar="E")
    teleport.add_argument(
        "--theta", type=float, default=pi / 2, metavar="T", help="Polar angle."
    )
    teleport.add_argument(
        "--phi", type=float, default=0.0, metavar="P", help="Azimuth."
    )
    teleport.add_argument(
        "--resource", choices=["H", "G"], default="H", help="Entangled resource."
    )
    teleport.add_argument(
        "--n-cap", type=int, metavar="N", help="Largest count enumerated."
    )
    teleport.add_argument(
        "--input",
        metavar="FILE",
        help="Teleport a single-mode state record (e.g. a bob_state) instead.",
    )
    teleport.add_argument("--json", action="store_true", help="Print JSON.")

    entangle = sub.add_parser(
        "entangle", parents=[common], help="Entanglement figures of merit."
    )
    entangle.add_argument("--alpha", type=float, default=1.0, metavar="A")
    entangle.add_argument(
        "--r", type=float, metavar="R", help="Also report a squeezed vacuum."
    )
    entangle.add_argument("--json", action="store_true", help="Print JSON.")

    validate = sub.add_parser(
        "validate", parents=[common], help="Run the oracle-agreement suite."
    )
    validate.add_argument(
        "--cutoff", type=int, metavar="N", help="Force the Fock cutoff."
    )
    validate.add_argument(
        "--seed",
        type=int,
        metavar="S",
        help=f"Seed of the randomized checks (default: ${SEED_ENV} or {DEFAULT_SEED}).",
    )
    validate.add_argument(
        "--only",
        action="append",
        choices=list(CHECKS),
        metavar="CHECK",
        help="Run only this check. Can be specified multiple times.",
    )
    validate.add_argument(
        "--strict",
        action="store_true",
        help="Treat downgraded checks as failures.",
    )
    validate.add_argument("--json", action="store_true", help="Print JSON.")

    return parser


def resolve_seed(parser: argparse.ArgumentParser, explicit: int | None) -> int:
    """Return --seed, else $ECSLAB_SEED, else the fixed default."""
    if explicit is not None:
        return explicit
    raw = os.environ.get(SEED_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        parser.error(f"{SEED_ENV} must be an integer, got {raw!r}")
    return DEFAULT_SEED


def _check_etas(parser: argparse.ArgumentParser, etas: tuple[float, ...]) -> None:
    for eta in etas:
        if not 0.0 <= eta <= 1.0:
            parser.error(f"eta must lie in [0, 1], got {eta}")


def build_config(
    parser: argparse.ArgumentParser, args: argparse.Namespace
) -> RunConfig:
    """Validate the parsed arguments and resolve grid defaults."""
    if args.workers is not None and args.workers < 1:
        parser.error("--workers must be at least 1")
    base: dict[str, Any] = {
        "subcommand": args.command,
        "max_workers": args.workers,
        "quiet": args.quiet,
        "progress": not args.no_progress and not args.quiet,
        "json_output": getattr(args, "json", False),
    }

    if args.command == "fig1":
        _check_etas(parser, args.etas)
        if args.steps < 1:
            parser.error("--steps must be at least 1")
        if not 0 < args.alpha0_min <= args.alpha0_max:
            parser.error("need 0 < --alpha0-min <= --alpha0-max")
        return RunConfig(
            **base,
            etas=tuple(args.etas),
            alpha0_min=args.alpha0_min,
            alpha0_max=args.alpha0_max,
            steps=args.steps,
            out_path=args.out,
        )

    if args.command == "fig2":
        _check_etas(parser, args.etas)
        alphas = args.alphas or default_fig2_alphas()
        if min(alphas) <= 0:
            parser.error("fig2 amplitudes must be positive")
        return RunConfig(
            **base,
            etas=tuple(args.etas),
            alphas=tuple(alphas),
            weighted_average=args.weighted,
            out_path=args.out,
        )

    if args.command == "fig3":
        alphas = args.alphas or default_fig3_alphas()
        return RunConfig(**base, alphas=tuple(alphas), out_path=args.out)

    if args.command == "teleport":
        _check_etas(parser, (args.eta,))
        if not 0.0 <= args.theta <= pi:
            parser.error(f"theta must lie in [0, pi], got {args.theta}")
        if not 0.0 <= args.phi < 2 * pi:
            parser.error(f"phi must lie in [0, 2pi), got {args.phi}")
        if args.n_cap is not None and args.n_cap < 1:
            parser.error("--n-cap must be at least 1")
        return RunConfig(
            **base,
            alpha=args.alpha,
            eta=args.eta,
            theta=args.theta,
            phi=args.phi,
            resource=Resource(args.resource),
            n_cap=args.n_cap,
            input_path=args.input,
        )

    if args.command == "entangle":
        if args.r is not None and args.r < 0:
            parser.error("--r must be non-negative")
        return RunConfig(**base, alpha=args.alpha, squeezing=args.r)

    if args.cutoff is not None and args.cutoff < 1:
        parser.error("--cutoff must be at least 1")
    return RunConfig(
        **base,
        cutoff_override=args.cutoff,
        seed=resolve_seed(parser, args.seed),
        checks=tuple(args.only or ()),
        strict=args.strict,
    )


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------


def print_progress(label: str, current: int, total: int) -> None:
    """Print progress information."""
    print(f"[{current}/{total}] {label}")


class RichProgressCallback:
    """Progress callback using rich library."""

    def __init__(self, total: int, description: str = "Processing") -> None:
        """Initialize the progress callback."""
        self.progress = Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            TaskProgressColumn(),
            TimeElapsedColumn(),
        )
        self.task_id = self.progress.add_task(description, total=total)
        self.progress.start()

    def __call__(self, label: str, current: int, total: int) -> None:
        """Update progress."""
        self.progress.update(self.task_id, completed=current, description=label[:50])

    def stop(self) -> None:
        """Stop the progress bar."""
        self.progress.stop()


def _run_with_progress(
    cfg: RunConfig,
    total: int,
    description: str,
    job: Callable[[ProgressCallback | None], Any],
) -> Any:
    """Run a job with a rich bar, plain text progress, or nothing when quiet."""
    if cfg.quiet or cfg.json_output:
        return job(None)
    if cfg.progress and RICH_AVAILABLE:
        bar = RichProgressCallback(total, description)
        try:
            return job(bar)
        finally:
            bar.stop()
    return job(print_progress if cfg.progress else None)


def write_csv(table: SweepTable, path: str) -> None:
    """Write a sweep table with a header and 12 significant digits.

    Raises:
        OSError: If the file cannot be written.
    """
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([f"{value:.12g}" for value in row])


def state_to_record(state: CoherentSuperposition) -> dict[str, Any]:
    """Serialize a state as ``{"n_modes", "terms": [{"coeff_re", ...}]}``."""
    return {
        "n_modes": state.n_modes,
        "terms": [
            {
                "coeff_re": term.coeff.real,
                "coeff_im": term.coeff.imag,
                "amps": [[a.real, a.imag] for a in term.amps],
            }
            for term in state.terms
        ],
    }


def state_from_record(record: dict[str, Any]) -> CoherentSuperposition:
    """Inverse of ``state_to_record``."""
    terms = tuple(
        CoherentTerm(
            complex(t["coeff_re"], t["coeff_im"]),
            tuple(complex(re, im) for re, im in t["amps"]),
        )
        for t in record["terms"]
    )
    return CoherentSuperposition(n_modes=int(record["n_modes"]), terms=terms)


def load_state(path: str) -> CoherentSuperposition:
    """Read a state written by ``state_to_record``, such as a ``bob_state``."""
    with open(path, encoding="utf-8") as f:
        return state_from_record(json.load(f))


def _emit_json(payload: dict[str, Any]) -> None:
    print(json.dumps({"schema": JSON_SCHEMA, **payload}, indent=2))


def _write_table(cfg: RunConfig, table: SweepTable) -> int:
    assert cfg.out_path is not None
    try:
        write_csv(table, cfg.out_path)
    except OSError as e:
        logger.error(f"Cannot write {cfg.out_path}: {e}")
        return 1
    logger.info(f"Wrote {len(table)} rows to {cfg.out_path}")
    return 0


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_fig1(cfg: RunConfig) -> int:
    """Write the decohered-pair fidelity sweep as CSV."""
    grid = default_alpha0_grid(cfg.alpha0_min, cfg.alpha0_max, cfg.steps)
    return _write_table(cfg, fig1_sweep(cfg.etas, grid))


def cmd_fig2(cfg: RunConfig) -> int:
    """Write the sphere-averaged fidelity and odd-count probability as CSV."""
    table = _run_with_progress(
        cfg,
        len(cfg.etas) * len(cfg.alphas),
        "Averaging over the sphere",
        lambda progress: fig2_table(
            cfg.alphas,
            cfg.etas,
            weighted=cfg.weighted_average,
            max_workers=cfg.max_workers,
            on_progress=progress,
        ),
    )
    return _write_table(cfg, table)


def cmd_fig3(cfg: RunConfig) -> int:
    """Write the G-resource success probability and entanglement as CSV."""
    return _write_table(cfg, fig3_table(cfg.alphas, max_workers=cfg.max_workers))


def _closed_form_success(cfg: RunConfig, eps: tuple[complex, complex]) -> float | None:
    if cfg.resource is Resource.H:
        return p_odd_noisy(eps[0], eps[1], cfg.alpha, cfg.eta)
    if cfg.eta == 1.0:
        return p_even_closed_form(cfg.alpha)
    return None


def _print_run(run: ProtocolRun, closed_form: float | None, use_rich: bool) -> None:
    shown = [o for o in run.outcomes if o.probability > DISPLAY_FLOOR]
    label = "P_odd" if run.resource is Resource.H else "P_even"
    summary = [
        f"Total probability: {run.total_probability:.12f} "
        f"(tail bound {run.tail_bound:.2e})",
        f"Success probability: {run.success_probability:.12f}",
        f"{label} closed form: "
        + ("n/a" if closed_form is None else f"{closed_form:.12f}"),
    ]
    if use_rich and RICH_AVAILABLE:
        console = Console()
        table = Table(title=f"Teleportation records (resource {run.resource.value})")
        table.add_column("n", style="cyan", justify="right")
        table.add_column("m", style="cyan", justify="right")
        table.add_column("Probability", style="yellow", justify="right")
        table.add_column("Success", style="green")
        table.add_column("Fidelity", style="magenta", justify="right")
        for o in shown:
            table.add_row(
                str(o.n),
                str(o.m),
                f"{o.probability:.6e}",
                "yes" if o.success else "no",
                f"{o.fidelity:.6f}",
            )
        console.print(table)
        for line in summary:
            console.print(line)
    else:
        print(f"{'n':>4} {'m':>4} {'probability':>14} {'success':>8} {'fidelity':>10}")
        for o in shown:
            print(
                f"{o.n:4d} {o.m:4d} {o.probability:14.6e} "
                f"{'yes' if o.success else 'no':>8} {o.fidelity:10.6f}"
            )
        for line in summary:
            print(line)
    if run.tail_warning:
        logger.warning("Enumeration is incomplete; raise --n-cap")


def cmd_teleport(cfg: RunConfig) -> int:
    """Run one protocol instance and report every record."""
    closed_form: float | None = None
    if cfg.input_path is not None:
        try:
            source = load_state(cfg.input_path)
        except (OSError, ValueError, KeyError, TypeError) as e:
            logger.error(f"Cannot read {cfg.input_path}: {e}")
            return 1
        logger.info(f"Teleporting the state in {cfg.input_path}")
        run = teleport_state(
            source, cfg.alpha, resource=cfg.resource, eta=cfg.eta, n_cap=cfg.n_cap
        )
    else:
        q = QubitPoint(cfg.theta, cfg.phi)
        eps = qubit_to_cat(q, (cfg.eta**0.5) * cfg.alpha)
        run = run_protocol(
            eps[0],
            eps[1],
            cfg.alpha,
            resource=cfg.resource,
            eta=cfg.eta,
            n_cap=cfg.n_cap,
        )
        closed_form = _closed_form_success(cfg, eps)
    if cfg.json_output:
        from_qubit = cfg.input_path is None
        _emit_json(
            {
                "command": "teleport",
                "alpha": cfg.alpha,
                "eta": cfg.eta,
                "theta": cfg.theta if from_qubit else None,
                "phi": cfg.phi if from_qubit else None,
                "input": cfg.input_path,
                "resource": cfg.resource.value,
                "n_cap": run.n_cap,
                "tail_bound": run.tail_bound,
                "tail_warning": run.tail_warning,
                "total_probability": run.total_probability,
                "success_probability": run.success_probability,
                "closed_form_success": closed_form,
                "outcomes": [
                    {
                        "n": o.n,
                        "m": o.m,
                        "probability": o.probability,
                        "success": o.success,
                        "fidelity": o.fidelity,
                        "bob_state": None
                        if o.bob_state is None
                        else state_to_record(o.bob_state),
                    }
                    for o in run.outcomes
                ],
            }
        )
    elif not cfg.quiet:
        _print_run(run, closed_form, use_rich=cfg.progress)
    return 0


def _pair_entanglement(alpha: float) -> tuple[float, float]:
    """Return E(H_alpha) and E(G_alpha), or their alpha -> 0 limits below the floor."""
    if abs(alpha) < ENTANGLE_ALPHA_FLOOR:
        # (|01> + |10>)/sqrt2 and |00>.
        logger.debug(f"alpha={alpha:.3g}: reporting the small-amplitude limits")
        return 1.0, 0.0
    return entanglement_of(make_h(alpha), [0]), entanglement_of(make_g(alpha), [0])


def cmd_entangle(cfg: RunConfig) -> int:
    """Report the entanglement of |H_alpha>, |G_alpha> and a squeezed vacuum."""
    spectrum = g_state_eigenvalues(cfg.alpha)
    entanglement_h, entanglement_g = _pair_entanglement(cfg.alpha)
    report: dict[str, Any] = {
        "alpha": cfg.alpha,
        "entanglement_h": entanglement_h,
        "entanglement_g": entanglement_g,
        "g_eigenvalues": list(spectrum.eigenvalues),
        "entanglement_g_closed_form": entropy(spectrum),
        "mean_photons_h": mean_photons_h(cfg.alpha),
        "mean_photons_qubit": mean_photons_sphere(cfg.alpha),
    }
    if cfg.squeezing is not None:
        report["squeezing"] = cfg.squeezing
        report["entanglement_squeezed"] = squeezed_entanglement(cfg.squeezing)

    if cfg.json_output:
        _emit_json({"command": "entangle", **report})
        return 0
    if cfg.quiet:
        return 0
    lines = [
        f"E(H_alpha)       = {report['entanglement_h']:.12f} ebit",
        f"E(G_alpha)       = {report['entanglement_g']:.12f} ebit",
        "lambda+-         = "
        + ", ".join(f"{v:.12f}" for v in report["g_eigenvalues"]),
        f"<N> of H_alpha   = {report['mean_photons_h']:.12g}",
        f"<N> sphere qubit = {report['mean_photons_qubit']:.12g}",
    ]
    if cfg.squeezing is not None:
        squeezed = report["entanglement_squeezed"]
        lines.append(f"E(r={cfg.squeezing:g})       = {squeezed:.12f} ebit")
    if cfg.progress and RICH_AVAILABLE:
        console = Console()
        console.print(f"[bold]alpha = {cfg.alpha:g}[/bold]")
        for line in lines:
            console.print(line)
    else:
        print(f"alpha = {cfg.alpha:g}")
        for line in lines:
            print(line)
    return 0


def _print_report(report: ValidationReport, use_rich: bool) -> None:
    styles = {"pass": "green", "fail": "red", "downgraded": "yellow"}
    if use_rich and RICH_AVAILABLE:
        console = Console()
        table = Table(title=f"Validation (seed {report.seed})")
        table.add_column("Check", style="cyan")
        table.add_column("Status")
        table.add_column("Worst delta", justify="right")
        table.add_column("Tolerance", justify="right")
        table.add_column("Worst case", style="white")
        for c in report.checks:
            table.add_row(
                c.name,
                f"[{styles[c.status]}]{c.status}[/{styles[c.status]}]",
                f"{c.worst_delta:.3e}",
                f"{c.tolerance:.0e}",
                c.detail[:60],
            )
        console.print(table)
    else:
        for c in report.checks:
            print(
                f"{c.name:<24} {c.status:<10} {c.worst_delta:10.3e} "
                f"<= {c.tolerance:.0e}  {c.detail}"
            )
    passed = len(report.checks) - len(report.failures)
    print(f"\n{passed}/{len(report.checks)} checks ok")


def cmd_validate(cfg: RunConfig) -> int:
    """Run the oracle-agreement suite.

    Raises:
        ValidationFailedError: If a check fails, or is downgraded under --strict.
    """
    names = list(cfg.checks) or list(CHECKS)
    report = _run_with_progress(
        cfg,
        len(names),
        "Validating",
        lambda progress: run_validation(
            cutoff=cfg.cutoff_override,
            seed=cfg.seed,
            only=names,
            on_progress=progress,
        ),
    )
    if cfg.json_output:
        _emit_json(
            {
                "command": "validate",
                "seed": report.seed,
                "cutoff": report.cutoff,
                "ok": report.ok,
                "checks": [
                    {
                        "name": c.name,
                        "status": c.status,
                        "worst_delta": c.worst_delta,
                        "tolerance": c.tolerance,
                        "detail": c.detail,
                    }
                    for c in report.checks
                ],
            }
        )
    elif not cfg.quiet:
        _print_report(report, use_rich=cfg.progress)
    require_all(report, strict=cfg.strict)
    return 0


COMMANDS: dict[str, Callable[[RunConfig], int]] = {
    "fig1": cmd_fig1,
    "fig2": cmd_fig2,
    "fig3": cmd_fig3,
    "teleport": cmd_teleport,
    "entangle": cmd_entangle,
    "validate": cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the CLI.

    Args:
        argv: Command-line arguments (defaults to sys.argv[1:]).

    Returns:
        Exit code (0 for success, non-zero for errors).
    """
    parser = create_parser()
    args = parser.parse_args(argv)

    setup_logging(verbose=args.verbose, quiet=args.quiet)
    cfg = build_config(parser, args)

    try:
        return COMMANDS[cfg.subcommand](cfg)
    except EcslabError as e:
        logger.error(f"{cfg.subcommand} failed: {e}")
        return 1
    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
