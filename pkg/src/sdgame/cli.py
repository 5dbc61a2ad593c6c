"""Command-line front end.

Subcommands: ``simulate`` (one Monte Carlo experiment), ``game-check``
(dominance and equilibrium certificate), ``sustain`` (lockdown horizon),
``figure`` (regenerate a study dataset), ``oracle`` (exhaustive optimum of
a tiny placement problem).  Exit codes: 0 success, 1 domain error, 2
usage or configuration error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import Settings, build_settings, load_config
from .errors import CapacityError, ConfigError, DomainError, ParameterError
from .figures import FIGURE_IDS, reproduce_figure
from .game import (GameInstance, PlayerState, Strategy, equilibrium_certificate,
                   verify_nash)
from .objective import TinyInstance, brute_force_optimum
from .output import rows_as_records, write_csv, write_json, write_manifest
from .scenarios import monte_carlo
from .sustainability import max_lockdown_days


def _add_common_scenario_flags(parser):
    parser.add_argument("--config", type=Path, help="key = value configuration file")
    parser.add_argument("--n", type=int, help="population size")
    parser.add_argument("--runs", type=int, help="Monte Carlo run count")
    parser.add_argument("--seed", type=int, help="master seed")
    parser.add_argument("--isolation-fraction", type=float, dest="isolation_fraction",
                        help="share of the population staying home")
    parser.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    parser.add_argument("--out", type=Path, default=Path("output"), help="output directory")
    parser.add_argument("--no-plot", action="store_true", help="skip image rendering")


def _resolved_settings(args) -> Settings:
    settings = load_config(args.config) if args.config else Settings()
    overrides = {}
    for key in ("n", "runs", "seed", "isolation_fraction"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    if overrides:
        settings = build_settings({**settings.as_dict(), **overrides})
    return settings


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sdgame",
        description="Stay-home/move-out incentive game: simulation, equilibria, sustainability")
    parser.add_argument("--version", action="version", version=f"sdgame {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one Monte Carlo experiment")
    _add_common_scenario_flags(sim)

    game = sub.add_parser("game-check", help="dominance and Nash certificate for a game instance")
    game.add_argument("--player", action="append", metavar="DELTA,D_MOVE,D_HOME",
                      help="one player's state; repeat per player")
    game.add_argument("--random-n", type=int, help="draw this many random players instead")
    game.add_argument("--seed", type=int, default=0, help="seed for --random-n")
    game.add_argument("--alpha", type=float, default=3.0)
    game.add_argument("--beta", type=float, default=1.0)
    game.add_argument("--z", type=float, default=1400.0)
    game.add_argument("--log-base", choices=("natural", "decimal"), default="natural")
    game.add_argument("--json", type=Path, help="also write the certificate as JSON")

    sustain = sub.add_parser("sustain", help="project the sustainable lockdown horizon")
    sustain.add_argument("--R0", type=float, required=True, dest="r0",
                         help="initial resource stock")
    sustain.add_argument("--U", type=float, required=True, dest="u_daily",
                         help="daily incentive bill")
    group = sustain.add_mutually_exclusive_group(required=True)
    group.add_argument("--r", type=float, dest="r_daily", help="daily collections (absolute)")
    group.add_argument("--r-ratio", type=float, dest="r_ratio",
                       help="daily collections as a fraction of --U")
    sustain.add_argument("--json", type=Path, help="also write the projection as JSON")

    fig = sub.add_parser("figure", help="regenerate a study dataset (CSV + JSON + PNG)")
    fig.add_argument("figure_id", choices=FIGURE_IDS, type=str.upper, metavar="ID",
                     help=f"one of {', '.join(FIGURE_IDS)}")
    _add_common_scenario_flags(fig)

    oracle = sub.add_parser("oracle", help="exhaustive optimum of a tiny placement problem")
    oracle.add_argument("--n", type=int, default=2, choices=(1, 2, 3), help="population size")
    oracle.add_argument("--grid-k", type=int, default=5, dest="grid_k",
                        help="grid nodes per side")
    oracle.add_argument("--omega", type=float, default=0.5, help="isolation weight in [0, 1]")
    oracle.add_argument("--seed", type=int, default=0, help="seed for home placement")
    oracle.add_argument("--area-side", type=float, default=1000.0, dest="area_side")
    oracle.add_argument("--delta-max", type=float, default=500.0, dest="delta_max")
    oracle.add_argument("--d-min", type=float, default=2.0, dest="d_min")
    oracle.add_argument("--z", type=float, default=1400.0)
    oracle.add_argument("--json", type=Path, help="also write the optimum as JSON")
    return parser


def _cmd_simulate(args) -> int:
    settings = _resolved_settings(args)
    config = settings.scenario_config()
    result = monte_carlo(config, jobs=args.jobs)
    out = Path(args.out)
    run_rows = [(r.run_index, r.total, r.mean_individual, r.clipped_movers,
                 r.feasibility.feasible, r.feasibility.count("max_deviation"),
                 r.feasibility.count("min_separation")) for r in result.runs]
    run_columns = ("run_index", "total_incentive", "mean_individual_incentive",
                   "clipped_movers", "feasible", "deviation_violations",
                   "separation_violations")
    curve = result.total_ecdf
    ecdf_rows = list(zip((float(v) for v in curve.values),
                         (float(p) for p in curve.probabilities)))
    outputs = [
        write_csv(out / "runs.csv", run_columns, run_rows),
        write_csv(out / "ecdf.csv", ("total_incentive", "cumulative_probability"), ecdf_rows),
        write_json(out / "summary.json", {
            "n": config.n,
            "runs": config.runs,
            "isolation_fraction": config.isolation_fraction,
            "mean_total_incentive": result.mean_total,
            "mean_individual_incentive": result.mean_individual,
        }),
    ]
    if not args.no_plot:
        from .plotting import render_ecdf
        outputs.append(render_ecdf(curve.values, curve.probabilities, out / "ecdf.png"))
    write_manifest(out, config_echo=settings.as_dict(), master_seed=settings.seed,
                   version=__version__, outputs=outputs)
    print(f"runs: {config.runs}  n: {config.n}  isolation: {config.isolation_fraction}")
    print(f"mean total incentive: {result.mean_total!r}")
    print(f"mean individual incentive: {result.mean_individual!r}")
    print(f"wrote {out / 'runs.csv'}")
    return 0


def _parse_players(specs) -> list[PlayerState]:
    players = []
    for spec in specs:
        parts = spec.split(",")
        if len(parts) != 3:
            raise ParameterError(f"--player needs DELTA,D_MOVE,D_HOME, got {spec!r}")
        try:
            delta, d_move, d_home = (float(p) for p in parts)
        except ValueError:
            raise ParameterError(f"--player needs three numbers, got {spec!r}") from None
        players.append(PlayerState(delta=delta, d_move=d_move, d_home=d_home))
    return players


def _cmd_game_check(args) -> int:
    from .game import PayoffParams

    params = PayoffParams(alpha=args.alpha, beta=args.beta, z=args.z, log_base=args.log_base)
    if args.random_n is not None:
        rng = np.random.default_rng(args.seed)
        players = []
        for _ in range(args.random_n):
            d_move = float(rng.uniform(1.0, 2000.0))
            players.append(PlayerState(
                delta=float(rng.uniform(1.0, args.z - 1.0)),
                d_move=d_move,
                d_home=d_move * float(rng.uniform(1.01, 3.0))))
    elif args.player:
        players = _parse_players(args.player)
    else:
        raise ParameterError("game-check needs --player entries or --random-n")
    game = GameInstance(players=tuple(players), params=params)
    certificate = equilibrium_certificate(game)
    nash = (verify_nash(game, certificate.equilibrium)
            if certificate.equilibrium is not None else False)

    print(f"players: {game.n_players}")
    print(f"alpha > beta: {'yes' if certificate.alpha_gt_beta else 'no'} "
          f"({params.alpha} vs {params.beta})")
    for i, dominant in enumerate(certificate.home_dominant):
        print(f"player {i}: staying home is {'weakly dominant' if dominant else 'NOT dominant'}")
    if certificate.equilibrium is None:
        print("dominant-strategy equilibrium: none")
    else:
        labels = [s.value for s in certificate.equilibrium]
        all_home = all(s is Strategy.HOME for s in certificate.equilibrium)
        print(f"dominant-strategy equilibrium: {'all home' if all_home else ', '.join(labels)}")
    print(f"nash equilibrium verified: {'yes' if nash else 'no'}")
    if args.json:
        write_json(args.json, {
            "players": game.n_players,
            "alpha_gt_beta": certificate.alpha_gt_beta,
            "home_dominant": list(certificate.home_dominant),
            "equilibrium": [s.value for s in certificate.equilibrium]
            if certificate.equilibrium is not None else None,
            "nash_verified": nash,
        })
    return 0


def _cmd_sustain(args) -> int:
    r_daily = args.r_daily if args.r_daily is not None else args.r_ratio * args.u_daily
    projection = max_lockdown_days(args.r0, args.u_daily, r_daily)
    print(f"U_daily = {args.u_daily:g}")
    print(f"r_daily = {r_daily:g}")
    if projection.unbounded:
        print("P = inf (indefinitely sustainable: collections cover the daily bill)")
    else:
        print(f"P = {projection.days:g}")
        print(f"floor_days = {projection.floor_days}")
    if args.json:
        write_json(args.json, {
            "r0": args.r0, "u_daily": args.u_daily, "r_daily": r_daily,
            "days": None if projection.unbounded else projection.days,
            "floor_days": projection.floor_days,
            "unbounded": projection.unbounded,
        })
    return 0


def _cmd_figure(args) -> int:
    settings = _resolved_settings(args)
    dataset = reproduce_figure(args.figure_id, settings.scenario_config(),
                               slot_minutes=settings.slot_minutes, jobs=args.jobs)
    out = Path(args.out)
    name = f"figure_{dataset.figure_id}"
    outputs = [
        write_csv(out / f"{name}.csv", dataset.columns, dataset.rows),
        write_json(out / f"{name}.json", rows_as_records(dataset.columns, dataset.rows)),
    ]
    if not args.no_plot:
        from .plotting import render_figure
        outputs.append(render_figure(dataset, out / f"{name}.png"))
    write_manifest(out, config_echo=settings.as_dict(), master_seed=settings.seed,
                   version=__version__, outputs=outputs)
    for path in outputs:
        print(f"wrote {path}")
    return 0


def _cmd_oracle(args) -> int:
    from .game import PayoffParams
    from .geometry import Position
    from .objective import ConstraintBounds

    if not 0 <= args.omega <= 1:
        raise ParameterError(f"omega must lie in [0, 1], got {args.omega}")
    rng = np.random.default_rng(args.seed)
    coords = np.linspace(0.0, args.area_side, args.grid_k)
    picks = rng.choice(args.grid_k ** 2, size=args.n, replace=False)
    homes = [Position(float(coords[p // args.grid_k]), float(coords[p % args.grid_k]))
             for p in picks]
    params = PayoffParams(alpha=3.0 * args.omega, beta=1.0 * (1 - args.omega),
                          z=args.z, omega=args.omega, alpha_raw=3.0, beta_raw=1.0)
    instance = TinyInstance(homes=tuple(homes), grid_k=args.grid_k,
                            area_side=args.area_side, params=params,
                            bounds=ConstraintBounds(delta_max=args.delta_max, d_min=args.d_min))
    positions, value = brute_force_optimum(instance)
    print(f"grid: {args.grid_k} x {args.grid_k} over {args.area_side:g} m, omega = {args.omega:g}")
    print(f"optimal objective value = {value!r}")
    for i, (home, pos) in enumerate(zip(homes, positions)):
        print(f"individual {i}: home ({home.x:g}, {home.y:g}) -> optimum ({pos.x:g}, {pos.y:g})")
    if args.json:
        write_json(args.json, {
            "grid_k": args.grid_k, "area_side": args.area_side, "omega": args.omega,
            "value": value,
            "homes": [[h.x, h.y] for h in homes],
            "positions": [[p.x, p.y] for p in positions],
        })
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "game-check": _cmd_game_check,
    "sustain": _cmd_sustain,
    "figure": _cmd_figure,
    "oracle": _cmd_oracle,
}


def execute(argv=None) -> int:
    """Parse ``argv`` and dispatch; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help/--version and 2 for usage errors
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ParameterError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(execute())
