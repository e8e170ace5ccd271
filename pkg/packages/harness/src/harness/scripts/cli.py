"""
Single entry point for every experiment and table generator.

Usage:
    shocklab constants --lambda 0.25 --rho 0.75
    shocklab simulate --t 1000 --replicas 4000 --workers 8 --out results/shock
    shocklab verify --quick

Exit codes: 0 pass, 1 check failure, 2 usage error, 3 internal invariant violation.
"""

import argparse
import json
import logging
import sys
from collections.abc import Callable, Sequence
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
from domain.errors import (
    AccuracyError,
    ConfigurationError,
    DataError,
    DegenerateCombinationError,
    InvalidParameterError,
    ShockLabError,
)
from domain.models import ExperimentConfig
from domain.settings import EnvOverrides, load_env_overrides
from domain.types import ENGINES, LimitLaw, Stream, parse_stream
from dotenv import load_dotenv
from lattice.stationary import exit_tail_profile, good_event_probability
from pydantic import ValidationError
from store import write_report, write_table
from store.persistence import dump_json
from theory.constants import shock_constants
from theory.distributions.limit_law import limit_law_cdf
from theory.distributions.tables import tabulate

from harness.acceptance import CRITERIA, FULL, TAIL_M_GRID, TAIL_R2, good_event_grid, run_acceptance
from harness.diagnostics import (
    DEFAULT_BETA,
    DEFAULT_NU,
    crossing_diagnostic,
    independence_diagnostic,
    maximizer_localization_diagnostic,
    slow_decorrelation_diagnostic,
)
from harness.experiments import (
    coupling_lemma_experiment,
    goe_reports,
    gue_report,
    limit_law_reports,
    point_to_point_samples,
    run_shock_experiment,
    second_class_coupling,
    speed_estimate,
    stationarity_experiment,
    tasep_lpp_coupling,
    write_experiment,
)

logger = logging.getLogger("shocklab")

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

USAGE_ERRORS = (InvalidParameterError, ConfigurationError, AccuracyError, DataError, ValidationError)
STREAM_COMMANDS = frozenset({"lpp-sample"})


@dataclass
class Invocation:
    """Parsed flags, effective configuration and the files written so far."""

    args: argparse.Namespace
    cfg: ExperimentConfig
    overrides: EnvOverrides
    written: list[Path] = field(default_factory=list)

    @property
    def out_dir(self) -> Path:
        return Path(self.cfg.out_dir)

    def table(self, name: str, columns: Sequence[str], rows: Sequence[Sequence[object]]) -> Path:
        path = write_table(self.out_dir / name, columns, rows)
        self.written.append(path)
        return path

    def report(self, name: str, payload: dict[str, Any]) -> Path:
        path = write_report(self.out_dir / name, {"config": self.cfg.provenance(), **payload})
        self.written.append(path)
        return path

    def remove_partial(self) -> None:
        for path in self.written:
            path.unlink(missing_ok=True)
            logger.info("Removed partial artifact %s", path)


def _status(passed: bool) -> int:
    return EXIT_PASS if passed else EXIT_FAIL


def _format_value(value: object) -> str:
    if isinstance(value, float):
        return f"{value:.10g}"
    if isinstance(value, tuple):
        return "(" + ", ".join(_format_value(v) for v in value) + ")"
    return str(value)


# ---------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------


def cmd_constants(inv: Invocation) -> int:
    sc = shock_constants(inv.cfg.lambda_, inv.cfg.rho)
    for name, value in asdict(sc).items():
        print(f"{name} = {_format_value(value)}")
    return EXIT_PASS


def cmd_simulate(inv: Invocation) -> int:
    experiment = run_shock_experiment(inv.cfg, workers=inv.cfg.workers)
    reports = limit_law_reports(experiment, order=inv.cfg.order)
    paths = write_experiment(experiment, reports, out_dir=inv.out_dir, overrides=inv.overrides)
    inv.written.extend([paths.samples, paths.summary] + ([paths.provenance] if paths.provenance else []))

    speed, stderr = speed_estimate(experiment)
    print(f"speed = {speed:.5f} +- {stderr:.5f} (v = {experiment.constants.v:.5f})")
    if experiment.reruns:
        print(f"overflow re-runs = {experiment.reruns}")
    for r in reports:
        print(f"KS[{r.reference}] = {r.ks_statistic:.4f} (threshold {r.threshold}) {'pass' if r.passed else 'FAIL'}")
    print(f"Wrote {paths.samples} and {paths.summary}")
    return _status(all(r.passed for r in reports))


def cmd_lpp_sample(inv: Invocation) -> int:
    cfg, args = inv.cfg, inv.args
    stream = args.stream if args.stream is not None else Stream.BULK
    sc = shock_constants(cfg.lambda_, cfg.rho)
    independence, values = independence_diagnostic(
        cfg.n, cfg.replicas, sc, master_seed=cfg.master_seed, stream=stream
    )
    goe = goe_reports(values, sc, order=cfg.order)
    pt = point_to_point_samples(cfg.n, 1.0, cfg.replicas, master_seed=cfg.master_seed, stream=stream)
    gue = gue_report(pt, order=cfg.order)
    slow = slow_decorrelation_diagnostic(cfg.n, args.nu, sc, cfg.replicas, master_seed=cfg.master_seed)
    localized = maximizer_localization_diagnostic(cfg.n, args.beta, sc, cfg.replicas, master_seed=cfg.master_seed)
    crossing = crossing_diagnostic(cfg.n, sc, cfg.replicas, master_seed=cfg.master_seed)

    inv.table(
        "one_point.csv",
        ("replica", "value_lambda", "value_rho", "point_to_point"),
        [(r, float(values[r, 0]), float(values[r, 1]), float(pt[r])) for r in range(cfg.replicas)],
    )
    deviation = crossing.deviation
    inv.report(
        "lpp_sample.json",
        {
            "ks": [r.as_dict() for r in (*goe, gue)],
            "independence": asdict(independence),
            "slow_decorrelation": asdict(slow),
            "maximizer_localization": {"beta": args.beta, "fraction": localized},
            "crossing": {
                "flagged": crossing.flagged,
                "mean_abs_deviation": float(np.mean(np.abs(deviation))) if len(deviation) else None,
            },
        },
    )
    for r in (*goe, gue):
        print(f"KS[{r.reference}] = {r.ks_statistic:.4f} {'pass' if r.passed else 'FAIL'}")
    uncorrelated = abs(independence.correlation) <= FULL.correlation_bound
    verdict = "pass" if uncorrelated else "FAIL"
    print(f"corr(lambda, rho) = {independence.correlation:.4f} (bound {FULL.correlation_bound}) {verdict}")
    print(f"slow decorrelation corr = {slow.correlation:.4f}, maximizers through D_eta = {localized:.3f}")
    return _status(all(r.passed for r in (*goe, gue)) and uncorrelated)


def cmd_stationary_check(inv: Invocation) -> int:
    cfg = inv.cfg
    sc = shock_constants(cfg.lambda_, cfg.rho)
    result = stationarity_experiment(
        cfg.n,
        sc,
        sc.lambda_,
        replicas=cfg.replicas,
        count=10,
        master_seed=cfg.master_seed,
        threshold=FULL.increment_threshold,
    )
    inv.report(
        "stationary_check.json",
        {
            "increments": result.increments.as_dict(),
            "lag_one": result.lag_one,
            "translation_ks": result.translation_ks,
        },
    )
    print(f"KS[Exp(1 - {sc.lambda_})] = {result.increments.ks_statistic:.4f}")
    print(f"lag-1 correlation = {result.lag_one:.4f}, translation KS = {result.translation_ks:.4f}")
    return _status(
        result.increments.passed
        and abs(result.lag_one) <= FULL.lag_bound
        and result.translation_ks <= FULL.translation_threshold
    )


def cmd_exit_tails(inv: Invocation) -> int:
    cfg = inv.cfg
    sc = shock_constants(cfg.lambda_, cfg.rho)
    profile = exit_tail_profile(
        cfg.n, sc, sc.lambda_, inv.args.c, TAIL_M_GRID, cfg.replicas, master_seed=cfg.master_seed
    )
    inv.table(
        "exit_tails.csv",
        ("m", "stationary", "line", "truncated"),
        [
            (float(m), float(s), float(line), int(t))
            for m, s, line, t in zip(profile.m_grid, profile.stationary, profile.line, profile.truncated, strict=True)
        ],
    )
    fit = profile.gaussian_fit()
    if fit is None:
        print("Too few estimable tail points for a Gaussian fit")
        return EXIT_FAIL
    print(f"log tail ~ M^2: slope = {fit[0]:.4f}, R^2 = {fit[1]:.3f}")
    return _status(fit[0] < 0 and fit[1] >= TAIL_R2)


def cmd_coupling_check(inv: Invocation) -> int:
    cfg = inv.cfg
    sc = shock_constants(cfg.lambda_, cfg.rho)
    tasep = tasep_lpp_coupling(cfg.replicas, master_seed=cfg.master_seed)
    pair = second_class_coupling(
        cfg.replicas, lambda_=cfg.lambda_, rho=cfg.rho, horizon=cfg.t, master_seed=cfg.master_seed
    )
    lemma = coupling_lemma_experiment(cfg.n, sc, cfg.replicas, master_seed=cfg.master_seed)
    inv.report(
        "coupling_check.json",
        {"tasep_lpp": asdict(tasep), "second_class": asdict(pair), "coupling_lemma": asdict(lemma)},
    )
    print(f"TASEP-LPP: {tasep.seeds - len(tasep.failures)}/{tasep.seeds} seeds, {tasep.cells_checked} cells")
    print(f"second class = interface: {pair.seeds - len(pair.failures)}/{pair.seeds} seeds")
    print(f"coupling lemma: {lemma.violations} violations in {lemma.premises} premises")
    return _status(tasep.holds and pair.holds and lemma.violations == 0)


def cmd_good_event(inv: Invocation) -> int:
    cfg = inv.cfg
    sc = shock_constants(cfg.lambda_, cfg.rho)
    r_grid = inv.args.r or good_event_grid(cfg.n, sc.lambda_)
    estimates = [
        good_event_probability(cfg.n, r, inv.args.c, sc, cfg.replicas, master_seed=cfg.master_seed) for r in r_grid
    ]
    inv.table("good_event.csv", ("r", "complement", "stderr"), [(e.r, e.complement, e.stderr) for e in estimates])
    for e in estimates:
        print(f"r = {e.r:.4g}: P(G^c) = {e.complement:.4f} +- {e.stderr:.4f}")
    complements = [e.complement for e in estimates]
    monotone = bool(np.all(np.diff(complements) <= 0))
    return _status(monotone and complements[-1] <= FULL.good_event_bound)


def cmd_tw_table(inv: Invocation) -> int:
    order = inv.cfg.order
    gue, goe = tabulate("gue", order=order), tabulate("goe", order=order)
    inv.table(
        "tw_table.csv",
        ("s", "gue_cdf", "goe_cdf", "gue_density", "goe_density"),
        list(
            zip(
                gue.s_grid.tolist(),
                gue.cdf.tolist(),
                goe.cdf.tolist(),
                gue.density().tolist(),
                goe.density().tolist(),
                strict=True,
            )
        ),
    )
    print(f"GUE mean = {gue.mean():.5f}, variance = {gue.variance():.5f}")
    print(f"GOE mean = {goe.mean():.5f}, variance = {goe.variance():.5f}")
    return _status(gue.is_monotone() and goe.is_monotone())


def cmd_limit_law(inv: Invocation) -> int:
    cfg = inv.cfg
    sc = shock_constants(cfg.lambda_, cfg.rho)
    rows: list[tuple[str, float, float]] = []
    laws: tuple[LimitLaw, ...] = ("X", "N")
    for which in laws:
        try:
            table = limit_law_cdf(which, sc, order=cfg.order)
        except DegenerateCombinationError as e:
            print(f"{which}: skipped ({e})")
            continue
        rows.extend((which, s, c) for s, c in table.to_rows())
        print(f"{which}: mean = {table.mean():.5f}, variance = {table.variance():.5f}")
    inv.table("limit_law.csv", ("law", "s", "cdf"), rows)
    return EXIT_PASS


def cmd_verify(inv: Invocation) -> int:
    args = inv.args
    results = run_acceptance(
        args.quick,
        master_seed=inv.cfg.master_seed,
        workers=inv.cfg.workers,
        only=set(args.criteria) if args.criteria else None,
    )
    inv.report("acceptance.json", {"quick": args.quick, "criteria": [r.as_dict() for r in results]})
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}")
    print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return _status(all(r.passed for r in results))


COMMANDS: dict[str, tuple[Callable[[Invocation], int], str]] = {
    "constants": (cmd_constants, "Print the shock constants"),
    "simulate": (cmd_simulate, "Run the shock experiment and persist samples"),
    "lpp-sample": (cmd_lpp_sample, "One-point LPP laws, independence, slow decorrelation"),
    "stationary-check": (cmd_stationary_check, "Stationary increments and exit translation invariance"),
    "exit-tails": (cmd_exit_tails, "Exit-point tail profile"),
    "coupling-check": (cmd_coupling_check, "Pathwise couplings and the coupling lemma"),
    "good-event": (cmd_good_event, "Good-event complement probability over r"),
    "tw-table": (cmd_tw_table, "Tabulate the Tracy-Widom GUE and GOE distributions"),
    "limit-law": (cmd_limit_law, "Tabulate the shock limit laws"),
    "verify": (cmd_verify, "Run the acceptance suite"),
}


# ---------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------


def _stream(value: str) -> Stream:
    try:
        return parse_stream(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lambda", dest="lambda_", type=float, help="Left density (default 0.25)")
    common.add_argument("--rho", type=float, help="Right density (default 0.75)")
    common.add_argument("--t", type=float, help="Time horizon (default 1000)")
    common.add_argument("--n", type=int, help="LPP scale N (default 1000)")
    common.add_argument("--replicas", type=int, help="Number of replicas (default 4000)")
    common.add_argument("--seed", type=int, help="Master seed (default 0)")
    common.add_argument("--workers", type=int, help="Worker processes (env SHOCKLAB_WORKERS, default 1)")
    common.add_argument("--order", type=int, help="Quadrature order (default 64)")
    common.add_argument("--out", help="Output directory (env SHOCKLAB_OUT_DIR, default results)")
    common.add_argument("--format", choices=["csv", "json"], help="Sample format (default csv)")
    common.add_argument(
        "--stream", type=_stream, help="Weight stream by name or tag (lpp-sample only, default bulk)"
    )
    common.add_argument("--engine", choices=sorted(ENGINES), help="Shock engine (default direct)")
    common.add_argument("--verbose", action="store_true", help="Debug logging")

    parser = argparse.ArgumentParser(prog="shocklab", description="Second-class particle and shock laboratory")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if name == "lpp-sample":
            p.add_argument("--nu", type=float, default=DEFAULT_NU, help="Characteristic exponent nu")
            p.add_argument("--beta", type=float, default=DEFAULT_BETA, help="Localization exponent beta")
        if name in ("exit-tails", "good-event"):
            p.add_argument("--c", type=float, default=1.0, help="Target offset C in units of N^{1/3}")
        if name == "good-event":
            p.add_argument("--r", type=float, nargs="+", help="Density perturbations r (default scaled 1, 2, 4, 8)")
        if name == "verify":
            p.add_argument("--quick", action="store_true", help="Reduced budget")
            p.add_argument(
                "--criteria",
                type=int,
                nargs="+",
                choices=range(1, len(CRITERIA) + 1),
                metavar="K",
                help="Run only these criteria (1-based)",
            )
    return parser


def build_config(args: argparse.Namespace, overrides: EnvOverrides) -> ExperimentConfig:
    """Flags take precedence over environment overrides, which take precedence over defaults."""
    values: dict[str, object | None] = {
        "experiment": args.command,
        "lambda": args.lambda_,
        "rho": args.rho,
        "t": args.t,
        "n": args.n,
        "replicas": args.replicas,
        "master_seed": args.seed,
        "engine": args.engine,
        "order": args.order,
        "workers": args.workers if args.workers is not None else overrides.workers,
        "out_dir": args.out if args.out is not None else overrides.out_dir,
        "fmt": args.format,
    }
    return ExperimentConfig.model_validate({k: v for k, v in values.items() if v is not None})


def main(argv: Sequence[str] | None = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s | %(levelname)s | %(message)s",
    )
    if args.stream is not None and args.command not in STREAM_COMMANDS:
        logger.warning("--stream has no effect on %s", args.command)

    try:
        overrides = load_env_overrides()
        cfg = build_config(args, overrides)
    except USAGE_ERRORS as e:
        print(f"shocklab {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE

    logger.info("Effective configuration: %s", json.dumps(cfg.model_dump(by_alias=True), sort_keys=True))
    logger.debug("Environment overrides: %s", dump_json(overrides.as_dict()).strip())
    inv = Invocation(args=args, cfg=cfg, overrides=overrides)
    handler, _ = COMMANDS[args.command]
    try:
        return handler(inv)
    except USAGE_ERRORS as e:
        inv.remove_partial()
        print(f"shocklab {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ShockLabError as e:
        inv.remove_partial()
        logger.error("%s failed: %s", args.command, e)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
