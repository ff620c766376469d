"""
coopgraph - Main CLI Application
Exact and mean-field conditions for cooperation on networks
"""
import json
import sys
import logging
from pathlib import Path
from typing import Dict, Optional, Tuple

import click
from colorama import init, Fore, Style

from config import Config
from coalescence import coalescence_report, save_meeting_times
from evodyn import GameMatrix
from experiments import (
    ExperimentKind,
    DISAGREEMENT_STD_ERRORS,
    analyze_file,
    load_experiment_config,
    run_experiment,
    simulate as run_simulation,
    write_summary_json,
)
from generators import Family, GeneratorSpec, SbmParams, ensure_connected
from graph_core import component_sizes, degree_moments, is_connected, read_edge_list_file, write_edge_list_file
from errors import DisconnectedGraphError
from meanfield import bstar_small_q, critical_ratio_sbm, mean_field_report, q_hat, sbm_moments
from utils import MAX_SEED

# Initialize colorama for colored terminal output
init(autoreset=True)

logger = logging.getLogger(__name__)

FAMILY_NAMES = [family.value for family in Family]


def _parse_params(pairs: Tuple[str, ...]) -> Dict[str, float]:
    """'key=value' strings to a parameter dict"""
    params = {}
    for pair in pairs:
        key, sep, value = pair.partition('=')
        if not sep or not key.strip():
            raise click.BadParameter(f"expected key=value, got '{pair}'", param_hint='--param')
        try:
            params[key.strip()] = float(value)
        except ValueError:
            raise click.BadParameter(f"{key}: '{value}' is not a number", param_hint='--param')
    return params


def _parse_game(game: Optional[str], b: float, c: float) -> GameMatrix:
    """'R,S,T,P' when given, otherwise the donation game"""
    if game is None:
        return GameMatrix.donation(b, c)
    entries = [v.strip() for v in game.split(',')]
    if len(entries) != 4:
        raise click.BadParameter(f"expected R,S,T,P, got '{game}'", param_hint='--game')
    R, S, T, P = (float(v) for v in entries)
    return GameMatrix(R=R, S=S, T=T, P=P)


def _fmt(value) -> str:
    if value is None:
        return 'undefined'
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _fail(e: Exception):
    click.echo(f"{Fore.RED}Error: {e}{Style.RESET_ALL}")
    sys.exit(1)


# CLI Commands using Click
@click.group()
@click.version_option(version='1.0.0')
@click.option('--log-level', default=Config.LOG_LEVEL, show_default=True,
              type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False))
def cli(log_level):
    """
    coopgraph - When does natural selection favor cooperation on a network?

    Examples:
        coopgraph analyze network.txt --game 3,0,5,1
        coopgraph meanfield --sbm --n 100 --m 2 --p 0.8 --q 0.1
        coopgraph sweep-p-er --seed 7 --replicates 5 --threads 4
    """
    logging.basicConfig(
        level=getattr(logging, log_level.upper()),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    # Check configuration
    warnings = Config.validate()
    if warnings:
        for warning in warnings:
            click.echo(f"{Fore.YELLOW}Warning: {warning}{Style.RESET_ALL}")


@cli.command()
@click.argument('family', type=click.Choice(FAMILY_NAMES))
@click.option('--param', '-p', 'params', multiple=True, help='Family parameter key=value (repeatable)')
@click.option('--seed', default=0, type=click.IntRange(0, MAX_SEED - 1), help='64-bit generator seed')
@click.option('--out', '-o', required=True, type=click.Path(dir_okay=False), help='Edge-list output file')
@click.option('--connect-attempts', default=Config.CONNECT_MAX_ATTEMPTS, show_default=True, type=int)
def generate(family, params, seed, out, connect_attempts):
    """Draw a connected network and write it as an edge list"""
    try:
        spec = GeneratorSpec(family=Family(family), params=_parse_params(params), seed=seed)
        g = ensure_connected(spec, connect_attempts)
        path = write_edge_list_file(g, out)
        click.echo(f"{Fore.GREEN}✓ {family} network written: {path} (n={g.n}, edges={g.edge_count}){Style.RESET_ALL}")

    except Exception as e:
        _fail(e)


@cli.command()
@click.argument('graph_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--game', help='Payoffs R,S,T,P for the selection verdict')
@click.option('--b', 'b', default=None, type=float, help='Donation-game benefit (verdict when --game is absent)')
@click.option('--c', 'c', default=1.0, show_default=True, type=float, help='Donation-game cost')
@click.option('--exact-max-n', default=Config.ANALYZE_EXACT_MAX_N, show_default=True, type=int)
@click.option('--method', default=Config.SOLVER_METHOD, show_default=True,
              type=click.Choice(['auto', 'direct', 'gauss-seidel', 'cg']))
@click.option('--tolerance', default=Config.SOLVER_TOLERANCE, show_default=True, type=float)
@click.option('--out', '-o', type=click.Path(dir_okay=False), help='Also write the report as JSON')
def analyze(graph_file, game, b, c, exact_max_n, method, tolerance, out):
    """Exact and mean-field b*, sigma and the selection verdict for a network file"""
    try:
        matrix = None
        if game is not None or b is not None:
            matrix = _parse_game(game, b if b is not None else 0.0, c)
        report = analyze_file(graph_file, game=matrix, exact_max_n=exact_max_n, method=method, tolerance=tolerance)
        summary = report.to_dict()

        click.echo(f"\n{Fore.CYAN}Network: {graph_file}{Style.RESET_ALL}\n")
        click.echo(f"Nodes: {summary['n']}  Edges: {summary['edges']}")
        click.echo(f"mu1: {_fmt(summary['mu1'])}  mu2: {_fmt(summary['mu2'])}")
        if report.exact is not None:
            click.echo(f"Exact b*: {report.exact.ratio} ({report.exact.ratio.regime})")
            click.echo(f"Exact sigma: {_fmt(report.exact.sigma)}")
        click.echo(f"Mean-field tau: {_fmt(summary['tau_mf'])}")
        click.echo(f"Mean-field b*: {report.mean_field.bstar_mf} ({report.mean_field.bstar_mf.regime})")
        click.echo(f"Mean-field sigma: {_fmt(report.mean_field.sigma_mf)}")
        if matrix is not None:
            verdict = report.verdict
            color = Fore.GREEN if verdict else Fore.YELLOW
            text = {True: 'favored', False: 'not favored', None: 'undetermined'}[verdict]
            click.echo(f"{color}Cooperation {text} for R,S,T,P = "
                       f"{matrix.R:g},{matrix.S:g},{matrix.T:g},{matrix.P:g}{Style.RESET_ALL}")

        if out:
            Path(out).parent.mkdir(parents=True, exist_ok=True)
            with open(out, 'w', encoding='utf-8', newline='\n') as fh:
                json.dump(summary, fh, indent=2, sort_keys=True)
                fh.write('\n')
            click.echo(f"{Fore.GREEN}✓ Report written: {out}{Style.RESET_ALL}")

    except Exception as e:
        _fail(e)


@cli.command()
@click.argument('graph_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--method', default=Config.SOLVER_METHOD, show_default=True,
              type=click.Choice(['auto', 'direct', 'gauss-seidel', 'cg']))
@click.option('--tolerance', default=Config.SOLVER_TOLERANCE, show_default=True, type=float)
@click.option('--max-sweeps', default=Config.SOLVER_MAX_SWEEPS, show_default=True, type=int)
@click.option('--dump', type=click.Path(dir_okay=False), help='Write the meeting-time table (binary)')
def exact(graph_file, method, tolerance, max_sweeps, dump):
    """Solve meeting times and print remeeting statistics, b* and sigma"""
    try:
        g = read_edge_list_file(graph_file)
        if not is_connected(g):
            raise DisconnectedGraphError(component_sizes(g), context=graph_file)
        report = coalescence_report(g, tolerance=tolerance, max_sweeps=max_sweeps, method=method)
        mt = report.meeting_times
        upper = mt.upper_triangle()

        click.echo(f"\n{Fore.CYAN}Meeting times ({mt.method}, {mt.iterations} iterations):{Style.RESET_ALL}\n")
        click.echo(f"Residual: {mt.solver_residual:.3e} (tolerance {mt.tolerance:.1e})")
        click.echo(f"tau_ij: min {upper.min():.6g}  mean {upper.mean():.6g}  max {upper.max():.6g}")
        tau_x = report.summary.tau_x
        click.echo(f"tau_x: min {tau_x.min():.6g}  mean {tau_x.mean():.6g}  max {tau_x.max():.6g}")
        click.echo(f"Identity error: {report.summary.identity_error:.2e}")
        click.echo(f"Exact b*: {report.ratio} ({report.ratio.regime})")
        click.echo(f"Exact sigma: {_fmt(report.sigma)}")

        if dump:
            path = save_meeting_times(mt, dump)
            click.echo(f"{Fore.GREEN}✓ Meeting times written: {path}{Style.RESET_ALL}")

    except Exception as e:
        _fail(e)


@cli.command()
@click.argument('graph_file', required=False, type=click.Path(exists=True, dir_okay=False))
@click.option('--sbm', is_flag=True, help='Evaluate block-model closed forms from --n/--m/--p/--q')
@click.option('--n', 'n', type=int, help='Block model: node count')
@click.option('--m', 'm', type=int, help='Block model: group count')
@click.option('--p', 'p', type=float, help='Block model: intra-group link probability')
@click.option('--q', 'q', type=float, help='Block model: inter-group link probability')
@click.option('--b', 'b', default=0.0, type=float, help='Benefit for the fixation estimate')
@click.option('--c', 'c', default=1.0, type=float, help='Cost for the fixation estimate')
@click.option('--delta', default=0.0, type=float, help='Selection strength for the fixation estimate')
def meanfield(graph_file, sbm, n, m, p, q, b, c, delta):
    """Mean-field b*, sigma and tau from a network file or block-model parameters"""
    try:
        if sbm:
            if None in (n, m, p, q):
                raise click.UsageError("--sbm needs --n, --m, --p and --q")
            params = SbmParams(n=n, m=m, p=p, q=q)
            moments = sbm_moments(params)
            click.echo(f"\n{Fore.CYAN}Block model N={n}, m={m}, p={p:g}, q={q:g}:{Style.RESET_ALL}\n")
            click.echo(f"b* (block model): {critical_ratio_sbm(params)}")
            if m >= 2:
                threshold = q_hat(m, p, n)
                click.echo(f"q-hat: {_fmt(threshold.expansion)} (expansion), {_fmt(threshold.exact_root)} (exact root)")
                click.echo(f"1/b* as q -> 0: {_fmt(bstar_small_q(n, m, p).reciprocal)}")
        elif graph_file:
            g = read_edge_list_file(graph_file)
            moments = degree_moments(g)
            click.echo(f"\n{Fore.CYAN}Network: {graph_file}{Style.RESET_ALL}\n")
        else:
            raise click.UsageError("give a graph file or --sbm with --n/--m/--p/--q")

        report = mean_field_report(moments, b=b, c=c, delta=delta)
        click.echo(f"mu1: {moments.mu1:.6g}  mu2: {moments.mu2:.6g}")
        click.echo(f"Mean-field tau: {report.tau_mf:.6g}")
        click.echo(f"Mean-field b*: {report.bstar_mf} ({report.bstar_mf.regime})")
        click.echo(f"Mean-field sigma: {_fmt(report.sigma_mf)}")
        if delta:
            click.echo(f"Mean-field fixation probability: {report.rho_mf:.6g} (neutral {1.0 / moments.n:.6g})")

    except click.UsageError:
        raise
    except Exception as e:
        _fail(e)


def experiment_options(f):
    """Flags shared by the experiment commands"""
    options = [
        click.option('--config', 'config_path', type=click.Path(exists=True, dir_okay=False),
                     help='Flat key: value configuration file'),
        click.option('--seed', type=click.IntRange(0, MAX_SEED - 1), help='64-bit master seed'),
        click.option('--out', '-o', type=click.Path(dir_okay=False), help='Output CSV path'),
        click.option('--replicates', type=click.IntRange(min=1), help='Replicates per parameter point'),
        click.option('--threads', type=click.IntRange(min=1), help='Worker processes'),
        click.option('--method', type=click.Choice(['auto', 'direct', 'gauss-seidel', 'cg']),
                     help='Meeting-time solver'),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _run_sweep(kind: ExperimentKind, config_path: Optional[str], **overrides):
    config = load_experiment_config(kind, config_path, **overrides)
    result = run_experiment(config)
    counts = result.summary['counts']
    click.echo(f"\n{Fore.CYAN}{kind.value} (seed {config.seed}):{Style.RESET_ALL}\n")
    click.echo(f"Records: {counts['records']}  ok: {counts['ok']}  failed: {counts['failed']}  "
               f"disconnected: {counts['disconnected']}  resamples: {counts['resamples']}")
    if counts['failed'] or counts['disconnected']:
        click.echo(f"{Fore.YELLOW}Warning: {counts['failed'] + counts['disconnected']} "
                   f"networks produced no ratio{Style.RESET_ALL}")
    click.echo(f"{Fore.GREEN}✓ Records: {result.csv_path}{Style.RESET_ALL}")
    click.echo(f"{Fore.GREEN}✓ Summary: {result.json_path}{Style.RESET_ALL}")
    return result


@cli.command('sweep-n')
@experiment_options
@click.option('--grid', help='Comma-separated network sizes')
@click.option('--m', 'm', type=int, help='Group count')
@click.option('--p', 'p', type=float, help='Intra-group link probability')
@click.option('--q', 'q', type=float, help='Inter-group link probability')
def sweep_n(config_path, grid, **overrides):
    """Block-model accuracy of the closed form versus network size"""
    try:
        _run_sweep(ExperimentKind.SWEEP_N, config_path, grid=grid, **overrides)
    except Exception as e:
        _fail(e)


@cli.command('sweep-p-er')
@experiment_options
@click.option('--grid', help='Comma-separated link probabilities')
@click.option('--n', 'n', type=int, help='Network size')
def sweep_p_er(config_path, grid, **overrides):
    """Exact and mean-field 1/b* on Erdos-Renyi networks across p"""
    try:
        _run_sweep(ExperimentKind.SWEEP_P_ER, config_path, grid=grid, **overrides)
    except Exception as e:
        _fail(e)


@cli.command('sweep-q-sbm')
@experiment_options
@click.option('--grid', help='Comma-separated inter-group probabilities')
@click.option('--n', 'n', type=int, help='Network size')
@click.option('--p', 'p', type=float, help='Intra-group link probability')
@click.option('--m-values', help='Comma-separated group counts')
def sweep_q_sbm(config_path, grid, **overrides):
    """Exact and mean-field 1/b* on block models across q"""
    try:
        _run_sweep(ExperimentKind.SWEEP_Q_SBM, config_path, grid=grid, **overrides)
    except Exception as e:
        _fail(e)


@cli.command()
@experiment_options
@click.option('--families', 'families', help=f"Comma-separated families ({', '.join(FAMILY_NAMES)})")
@click.option('--min-n', type=int, help='Smallest network size')
@click.option('--max-n', type=int, help='Largest network size')
def families(config_path, **overrides):
    """Mean-field over exact b* on networks sampled from every family"""
    try:
        result = _run_sweep(ExperimentKind.FAMILIES, config_path, **overrides)
        for entry in result.summary['aggregates']['families']:
            click.echo(f"  {entry['family']:<14} median ratio {entry['median_ratio']:.4f}  "
                       f"within 20%: {entry['within_20_percent']:.0%}  ({entry['networks']} networks)")
    except Exception as e:
        _fail(e)


@cli.command()
@experiment_options
@click.option('--graph', 'graph', type=click.Path(exists=True, dir_okay=False), help='Edge-list file')
@click.option('--family', type=click.Choice(FAMILY_NAMES), help='Generate the network from this family')
@click.option('--param', 'params', multiple=True, help='Family parameter key=value (repeatable)')
@click.option('--game', help='Payoffs R,S,T,P (default: donation game)')
@click.option('--b', 'b', type=float, help='Donation-game benefit')
@click.option('--c', 'c', type=float, help='Donation-game cost')
@click.option('--delta', type=float, help='Selection strength')
@click.option('--trials', type=click.IntRange(min=1), help='Independent runs')
@click.option('--placement', help="'uniform' or a node index")
def simulate(config_path, params, game, **overrides):
    """Monte Carlo fixation probability with exact references where available"""
    try:
        if params:
            overrides['family_params'] = _parse_params(params)
        if game is not None:
            matrix = _parse_game(game, 0.0, 1.0)
            overrides.update(R=matrix.R, S=matrix.S, T=matrix.T, P=matrix.P)
        config = load_experiment_config(ExperimentKind.SIMULATE, config_path, **overrides)
        report = run_simulation(config)
        summary = report.to_dict()

        click.echo(f"\n{Fore.CYAN}Death-birth simulation (n={summary['n']}, delta={config.delta:g}):{Style.RESET_ALL}\n")
        click.echo(f"Estimate: {summary['estimate']:.6g} +/- {summary['std_error']:.2g} "
                   f"({summary['fixations_C']}/{summary['trials']} fixations; neutral {summary['neutral']:.6g})")
        if summary['first_order'] is not None:
            click.echo(f"First-order prediction: {summary['first_order']:.6g}")
        if summary['enumeration'] is not None:
            click.echo(f"Enumeration: {summary['enumeration']:.6g} "
                       f"(difference {summary['enumeration_difference']:.2g})")
            if report.disagrees:
                click.echo(f"{Fore.YELLOW}Warning: Monte Carlo and enumeration disagree beyond "
                           f"{DISAGREEMENT_STD_ERRORS:g} standard errors{Style.RESET_ALL}")

        if config.out is not None:
            path = write_summary_json({'simulation': summary}, config, config.out)
            click.echo(f"{Fore.GREEN}✓ Summary: {path}{Style.RESET_ALL}")

    except Exception as e:
        _fail(e)


if __name__ == '__main__':
    cli()
