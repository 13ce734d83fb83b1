"""
Command-line interface for wishbound.

Commands:
- bound:  marginal bounding polynomial, smallest degree and degree ledger
- pep:    exact, bound or Monte-Carlo PEP curve as CSV (optionally SVG)
- verify: run one verification suite, or all of them
- plot:   render curve CSV files to a single SVG

Exit codes: 0 success, 1 property failure, 2 usage or configuration error.
"""

import sys
import json
import argparse
import logging
from dataclasses import fields
from typing import List, Optional, TextIO

import pandas as pd

from .config import RunConfig
from .curve_io import atomic_write_text, curves_to_dataframe, write_curves, write_dataframe, read_curves
from .exact_ring import format_poly
from .exceptions import ConfigError, EnvelopeExceeded, InvalidAlpha
from .monte_carlo import mc_pep_curve
from .pep import CurveSource, format_alpha, pep_curve
from .suite_runner import SuiteOptions, default_registry
from .svg_plot import render_svg
from .wishart import Dimensions, check_split, marginal_bound, split_indices

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
INLINE_TERMS = 20


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--config', help='Flat YAML config file; flags override its values')
    parser.add_argument('-v', '--verbose', action='store_true', help='Enable debug logging')
    parser.add_argument('--log-file', help='Write debug logging to this file')
    parser.add_argument('--progress', action='store_true', help='Show progress bars on stderr')
    parser.add_argument('--n', type=int, help='Transmit antennas N')
    parser.add_argument('--m', type=int, help='Receive antennas M')
    parser.add_argument('--alpha', help='Comma-separated weights, e.g. 0,1,0 or 0.1,0,1')
    parser.add_argument('--seed', type=int, help='Master seed for Monte-Carlo sampling')
    parser.add_argument('--samples', type=int, help='Monte-Carlo sample count')
    parser.add_argument('--workers', type=int, help='Worker threads')
    parser.add_argument('--out', help='Output file (default: stdout)')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='wishbound',
        description='Exact marginal-pdf bounds and diversity analysis for ordered Wishart eigenvalues',
    )
    commands = parser.add_subparsers(dest='command', required=True)

    bound = commands.add_parser('bound', help='Compute the marginal bounding polynomial r')
    _add_common_arguments(bound)
    bound.add_argument('--dump-poly', help="Write r in text form to FILE, or '-' for stdout")

    pep = commands.add_parser('pep', help='Compute a PEP curve over a dB grid')
    _add_common_arguments(pep)
    pep.add_argument('--grid', help='start:stop:step in dB, stop included')
    pep.add_argument('--source', choices=[s.value for s in CurveSource])
    pep.add_argument('--window', type=int, help='Trailing points used for the slope fit')
    pep.add_argument('--svg', help='Also render the curve to this SVG file')
    pep.add_argument('--exact-column', action='store_true', default=None,
                     help="Add an 'exact' num/den column")

    verify = commands.add_parser('verify', help='Run a verification suite')
    _add_common_arguments(verify)
    verify.add_argument('suite', help="Suite name, or 'all'")
    verify.add_argument('--points', type=int, help='Random points per dominance check')
    verify.add_argument('--betas', type=int, help='Random exponent vectors for theorem2')
    verify.add_argument('--max-dim', type=int, help='Largest N and M in the sweeps')

    plot = commands.add_parser('plot', help='Render curve CSV files to SVG')
    plot.add_argument('csv', nargs='+', help='Curve CSV files')
    plot.add_argument('--svg', help='SVG output file (default: stdout)')
    plot.add_argument('--title', default='', help='Caption above the plot')
    plot.add_argument('-v', '--verbose', action='store_true', help='Enable debug logging')
    plot.add_argument('--log-file', help='Write debug logging to this file')
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    """File values first, then every flag that was given."""
    config = RunConfig.from_file(args.config) if getattr(args, 'config', None) else RunConfig()
    overrides = {f.name: getattr(args, f.name, None) for f in fields(RunConfig)}
    return config.with_overrides(overrides)


def _write_text(text: str, path: Optional[str], stdout: TextIO) -> None:
    if path and path != '-':
        atomic_write_text(path, text)
    else:
        stdout.write(text)


def cmd_bound(config: RunConfig, dump_poly: Optional[str], stdout: TextIO) -> int:
    dims = Dimensions(config.n, config.m)
    split = split_indices(config.alpha_values)
    check_split(dims, split)
    mb = marginal_bound(dims, split)
    ledger = mb.ledger

    lines = [
        f"dims: N={dims.n} M={dims.m} X={dims.x} Y={dims.y}",
        f"alpha: {format_alpha(split.alpha)}",
        f"p: {','.join(map(str, split.p))} s: {','.join(map(str, split.s)) or '-'} "
        f"K: {split.k} case: {split.case.value} epsilon: {split.epsilon}",
    ]
    if len(mb.r) <= INLINE_TERMS:
        lines.append("r:")
        lines.extend("  " + line for line in format_poly(mb.r).splitlines()[1:])
    else:
        lines.append(f"r: {len(mb.r)} terms (use --dump-poly to write them)")
    lines += [
        f"smallest_degree: {mb.smallest_degree}",
        f"ledger: d_g={ledger.d_g_smallest} d_h_org={ledger.d_h_org} "
        f"d_h_vanishing={ledger.d_h_vanishing} d_h_added={ledger.d_h_added} d_r={ledger.d_r_smallest}",
        f"predicted: {mb.predicted_degree}",
        f"status: {'ok' if mb.agrees() else 'MISMATCH'}",
    ]
    _write_text("\n".join(lines) + "\n", config.out, stdout)
    if dump_poly:
        _write_text(format_poly(mb.r), dump_poly, stdout)
    return EXIT_OK if mb.agrees() else EXIT_FAILURE


def cmd_pep(config: RunConfig, progress: bool, stdout: TextIO) -> int:
    dims = Dimensions(config.n, config.m)
    alpha = config.alpha_values
    grid = config.grid_values
    if config.curve_source is CurveSource.MONTE_CARLO:
        curve = mc_pep_curve(dims, alpha, grid, config.samples, config.seed,
                             config.window, config.workers, progress)
    else:
        curve = pep_curve(dims, alpha, grid, config.curve_source, config.window,
                          config.workers, progress)

    write_curves([curve], config.out, config.exact_column, stream=stdout)
    if config.svg:
        atomic_write_text(config.svg, render_svg(curves_to_dataframe([curve])))
    slope = "nan" if curve.fitted_slope is None else f"{curve.fitted_slope:.6g}"
    stdout.write(f"# slope={slope} predicted=-{curve.predicted_exponent}\n")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: RunConfig, stdout: TextIO) -> int:
    registry = default_registry()
    if args.verbose or args.log_file:
        registry.set_verbose(True, args.log_file)
    names = registry.suite_names() if args.suite == 'all' else [args.suite]
    unknown = [name for name in names if registry.get_suite(name) is None]
    if unknown:
        raise ConfigError(f"Unknown suite {unknown[0]!r}; choose from all, {', '.join(registry.suite_names())}")

    defaults = SuiteOptions()
    options = SuiteOptions(
        seed=config.seed,
        samples=config.samples,
        workers=config.workers,
        points=args.points or defaults.points,
        beta_count=args.betas or defaults.beta_count,
        max_dim=args.max_dim or defaults.max_dim,
        progress=args.progress,
    )

    frames = []
    failed = False
    for name in names:
        result = registry.run(name, options)
        stdout.write(f"# {name}: {result.checks} checks, {len(result.failures)} failures\n")
        for failure in result.failures:
            stdout.write(json.dumps(failure, sort_keys=True, default=str) + "\n")
        failed = failed or not result.is_valid()
        df = result.to_dataframe()
        df.insert(0, 'suite', name)
        frames.append(df)
    if config.out and frames:
        write_dataframe(pd.concat(frames, ignore_index=True, sort=False), config.out)
    return EXIT_FAILURE if failed else EXIT_OK


def cmd_plot(args: argparse.Namespace, stdout: TextIO) -> int:
    df = read_curves(args.csv)
    _write_text(render_svg(df, args.title), args.svg, stdout)
    return EXIT_OK


def main(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None,
         stderr: Optional[TextIO] = None) -> int:
    """Entry point; returns the process exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    if args.command != 'verify' and (args.verbose or args.log_file):
        default_registry().set_verbose(True, args.log_file)

    try:
        if args.command == 'plot':
            return cmd_plot(args, stdout)
        config = load_config(args)
        if args.command == 'bound':
            return cmd_bound(config, args.dump_poly, stdout)
        if args.command == 'pep':
            return cmd_pep(config, args.progress, stdout)
        return cmd_verify(args, config, stdout)
    except (ConfigError, InvalidAlpha, EnvelopeExceeded) as e:
        stderr.write(f"error: {type(e).__name__}: {e}\n")
        return EXIT_USAGE
    except AssertionError as e:
        stderr.write(f"internal assertion failed: {e}\n")
        return EXIT_FAILURE


if __name__ == '__main__':
    sys.exit(main())
