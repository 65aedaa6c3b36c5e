"""adm-les command line: verify, symbols, simulate, rates, gaussian-approx."""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd
from dotenv import load_dotenv

from adm.deconvolution.deconvolution import DeconvOp, check_properties, deconv_symbol
from adm.diagnostics.report import build_error_report, write_error_report
from adm.errors import AdmError, ConfigError
from adm.filters.filters import gaussian_approx_error, helmholtz_power_sandwich
from adm.filters.spec import Gaussian, GaussianApprox, Helmholtz, HelmholtzPower
from adm.inequalities.inequalities import INEQUALITIES, holds_array
from adm.inequalities.sweep import GridSpec, sweep
from adm.solvers.experiment import load_experiment, resolve_threads, run_experiment
from adm.spectral.lattice import WaveLattice
from utils.parser.configParser import SimConfigParser
from utils.writer.csvWriter import CsvWriter, config_hash

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

VERIFY_ALPHAS = [0.1, 1.0]
VERIFY_PS = [0.75, 1.0, 2.0, 4.0]
VERIFY_NS = list(range(0, 33))
VERIFY_K2 = np.logspace(-2, 14, 161)
APPROX_ALPHAS = [0.5, 1.0, 2.0]
APPROX_LATTICE = 32
SANDWICH_M = range(1, 9)


def setup_logging(verbose: bool = False) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format='%(asctime)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S',
    )
    progress = logging.getLogger("adm.progress")
    if not progress.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(message)s"))
        progress.addHandler(handler)
        progress.propagate = False


def int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}") from None


def make_filter(kind: str, alpha: float, p: float, m: int):
    if kind == "helmholtz":
        return Helmholtz(alpha=alpha, p=p)
    if kind == "gaussian":
        return Gaussian(alpha=alpha)
    if kind == "gaussian_approx":
        return GaussianApprox(alpha=alpha, m=m)
    return HelmholtzPower(mu=alpha, m=m)


def _hash_args(args: argparse.Namespace) -> str:
    return config_hash({k: v for k, v in vars(args).items() if k != "func"})


def _emit(frame: pd.DataFrame, writer: CsvWriter, path: Optional[str]) -> None:
    if path:
        writer.write(frame, path)
    else:
        writer.dump(frame, sys.stdout)


def cmd_verify(args: argparse.Namespace) -> int:
    names = sorted(INEQUALITIES) if args.ineq == "all" else [args.ineq]
    threads = resolve_threads(args.threads, args.deterministic)
    grid = GridSpec(dense=args.dense)
    writer = CsvWriter(_hash_args(args))
    failures = []

    frames = []
    for name in names:
        result = sweep(name, grid, threads)
        if not result.passed:
            failures.append(f"{name}: {result.failures()[0]!r}")
        frame = result.frame.copy()
        frame.insert(0, "name", name)
        frames.append(frame)

    reports = []
    alphas = [args.alpha] if args.alpha is not None else VERIFY_ALPHAS
    ps = [args.p] if args.p is not None else VERIFY_PS
    for alpha in alphas:
        for p in ps:
            for N in args.N or VERIFY_NS:
                report = check_properties(DeconvOp(spec=Helmholtz(alpha=alpha, p=p), N=N), VERIFY_K2)
                if not report.passed:
                    failures.append(f"{report.filter} N={N}: {report.failures()[0]!r}")
                reports.append(report.to_frame())

    lattice = WaveLattice(APPROX_LATTICE)
    k2 = lattice.k2[~lattice.nyquist]
    for alpha in APPROX_ALPHAS:
        for m in range(1, 65):
            sup = float(np.max(gaussian_approx_error(alpha, m, k2)))
            if sup > 2.0 / m:
                failures.append(f"gaussian approximation alpha={alpha} m={m}: sup={sup:.3e} > {2.0 / m:.3e}")
        for m in SANDWICH_M:
            lo, mid, hi = helmholtz_power_sandwich(GaussianApprox(alpha=alpha, m=m).mu, m, k2)
            if not (np.all(holds_array(lo, mid)) and np.all(holds_array(mid, hi))):
                failures.append(f"H_m sandwich alpha={alpha} m={m}")

    properties = pd.concat(reports, ignore_index=True)
    if args.csv:
        path = Path(args.csv)
        writer.write(pd.concat(frames, ignore_index=True), path)
        writer.write(properties, path.with_name(f"{path.stem}_properties.csv"))
    else:
        _emit(properties, writer, None)

    checked = sum(len(f) for f in frames)
    if failures:
        logger.error(f"verification failed ({len(failures)} checks), first: {failures[0]}")
        print(failures[0])
        return EXIT_FAILED
    logger.info(f"verification passed: {checked} inequality tuples, {len(reports)} property reports")
    return EXIT_OK


def cmd_symbols(args: argparse.Namespace) -> int:
    spec = make_filter(args.filter, args.alpha, args.p, args.m)
    k2 = np.concatenate([[0.0], np.logspace(-2, np.log10(args.kmax ** 2), 200)])
    frame = pd.DataFrame({"k2": k2, "G_hat": spec.symbol(k2)})
    frame["A_hat"] = spec.inverse_symbol(k2) if spec.invertible else np.nan
    for N in args.N or [0, 1, 2, 4]:
        frame[f"D_{N}_hat"] = deconv_symbol(DeconvOp(spec=spec, N=N), k2)
    _emit(frame, CsvWriter(_hash_args(args)), args.csv)
    return EXIT_OK


def _load_config(args: argparse.Namespace):
    cfg = SimConfigParser().parseFile(args.config)
    if args.out:
        cfg = cfg.model_copy(update={"output_dir": args.out})
    return cfg


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    run_experiment(cfg, threads=args.threads, deterministic=args.deterministic)
    return EXIT_OK


def cmd_rates(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    directory = Path(cfg.output_dir)
    if (directory / "config.json").is_file():
        output = load_experiment(directory)
    else:
        logger.info(f"no experiment in {directory}, running it first")
        output = run_experiment(cfg, threads=args.threads, deterministic=args.deterministic)
    threads = resolve_threads(args.threads, args.deterministic)
    report = build_error_report(output, threads=threads)
    write_error_report(report, directory, output.config_sha256)
    if all(s.holds is None for s in report.summary):
        logger.info(f"no error bound applies to the {output.cfg.filter.kind} filter, nothing to check")
    failed = report.failed_orders()
    if failed:
        print(f"bound violated for N={failed}")
        return EXIT_FAILED
    return EXIT_OK


def cmd_gaussian_approx(args: argparse.Namespace) -> int:
    lattice = WaveLattice(args.n)
    k2 = lattice.k2[~lattice.nyquist]
    rows = []
    for m in range(1, args.m_max + 1):
        sup = float(np.max(gaussian_approx_error(args.alpha, m, k2)))
        rows.append({"m": m, "sup_error": sup, "bound": 2.0 / m, "pass": sup <= 2.0 / m})
    frame = pd.DataFrame(rows)
    _emit(frame, CsvWriter(_hash_args(args)), args.csv)
    if not frame["pass"].all():
        first = frame[~frame["pass"]].iloc[0]
        print(f"m={int(first['m'])}: sup_error={first['sup_error']:.6e} > {first['bound']:.6e}")
        return EXIT_FAILED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", help="debug logging")
    common.add_argument("--threads", type=int, default=None, help="worker threads (fallback: ADM_THREADS)")
    common.add_argument("--deterministic", action="store_true", help="single thread, serial runs")

    parser = argparse.ArgumentParser(prog="adm-les", description="Approximate deconvolution LES models on the periodic torus")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[common], help="scalar inequalities, deconvolution and filter checks")
    verify.add_argument("--ineq", default="all", choices=["all"] + sorted(INEQUALITIES))
    verify.add_argument("--dense", action="store_true", help="10x denser x grid")
    verify.add_argument("--csv", default=None, help="write sweep cases here and properties to <stem>_properties.csv; without it properties go to stdout")
    verify.add_argument("--alpha", type=float, default=None)
    verify.add_argument("--p", type=float, default=None)
    verify.add_argument("--N", type=int_list, default=None)
    verify.set_defaults(func=cmd_verify)

    symbols = sub.add_parser("symbols", parents=[common], help="filter, inverse and deconvolution symbols as CSV")
    symbols.add_argument("--filter", default="helmholtz", choices=["helmholtz", "gaussian", "gaussian_approx", "helmholtz_power"])
    symbols.add_argument("--alpha", type=float, default=1.0, help="filter width (mu for helmholtz_power)")
    symbols.add_argument("--p", type=float, default=1.0)
    symbols.add_argument("--m", type=int, default=1)
    symbols.add_argument("--N", type=int_list, default=None)
    symbols.add_argument("--kmax", type=float, default=100.0)
    symbols.add_argument("--csv", default=None)
    symbols.set_defaults(func=cmd_symbols)

    for name, func, text in (
        ("simulate", cmd_simulate, "run DNS and ADM"),
        ("rates", cmd_rates, "modeling-error report of an experiment"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--config", required=True)
        p.add_argument("--out", default=None, help="output directory (overrides output_dir)")
        p.set_defaults(func=func)

    approx = sub.add_parser("gaussian-approx", parents=[common], help="sup_k |G - G_m| against 2/m")
    approx.add_argument("--alpha", type=float, default=1.0)
    approx.add_argument("--m-max", type=int, default=64)
    approx.add_argument("--n", type=int, default=APPROX_LATTICE)
    approx.add_argument("--csv", default=None)
    approx.set_defaults(func=cmd_gaussian_approx)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    setup_logging(args.verbose)
    try:
        return args.func(args)
    except ConfigError as e:
        logger.error(str(e))
        return EXIT_USAGE
    except (AdmError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
