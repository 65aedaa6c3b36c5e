"""DNS reference plus per-N ADM runs, with snapshot and series output."""

import logging
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np
import pandas as pd
import scipy.fft as spfft

from adm.errors import BlowUpError, ConfigError
from adm.filters.filters import apply_filter
from adm.spectral.field import SpectralField
from adm.spectral.generators import random_field, taylor_green
from adm.spectral.operators import divergence_norm, energy, leray_project, to_physical
from adm.structs.config import RandomSpectrum, SimConfig, Snapshot, TaylorGreen
from adm.solvers.integrator import Integrator, SolverState, lattice_of, load_forcing
from utils.parser.configParser import SimConfigParser
from utils.parser.snapshotParser import SnapshotParser, write_snapshot
from utils.writer.csvWriter import CsvWriter, config_hash, read_csv

logger = logging.getLogger(__name__)
progress = logging.getLogger("adm.progress")

CFL_LIMIT = 0.5
SERIES_COLUMNS = ["run", "N", "step", "t", "energy", "divergence"]


@dataclass
class Sample:
    step: int
    t: float
    field: SpectralField


@dataclass
class ExperimentOutput:
    """Stored samples of the DNS run (u) and of every ADM run (w̄_N)."""

    cfg: SimConfig
    dns: List[Sample]
    adm: Dict[int, List[Sample]]
    output_dir: Optional[Path] = None
    config_sha256: str = ""
    series: pd.DataFrame = field(default_factory=lambda: pd.DataFrame(columns=SERIES_COLUMNS))

    def filtered_reference(self) -> List[Sample]:
        """ū(t) = G u(t) at the DNS sample times."""
        return [Sample(s.step, s.t, apply_filter(self.cfg.filter, s.field)) for s in self.dns]


def initial_field(cfg: SimConfig) -> SpectralField:
    lattice = lattice_of(cfg)
    init = cfg.init
    if isinstance(init, TaylorGreen):
        return taylor_green(lattice, init.amplitude)
    if isinstance(init, RandomSpectrum):
        return random_field(lattice, decay=init.decay, seed=init.seed, amplitude=init.amplitude)
    if isinstance(init, Snapshot):
        u0 = SnapshotParser().parseFile(init.path)
        if u0.lattice != lattice:
            raise ConfigError(f"snapshot {init.path} has n={u0.lattice.n} L={u0.lattice.L}, config wants n={cfg.n} L={cfg.L}")
        return leray_project(u0)
    raise ConfigError(f"unknown initial condition {init!r}")


def check_cfl(cfg: SimConfig, u0: SpectralField) -> None:
    """Reject dt > 0.5·Δx/max|u₀|."""
    umax = float(np.max(np.linalg.norm(to_physical(u0).samples, axis=0)))
    if umax == 0.0:
        return
    limit = CFL_LIMIT * u0.lattice.dx / umax
    if cfg.dt > limit:
        raise ConfigError(f"dt={cfg.dt} violates CFL limit {limit:.4g} (max|u0|={umax:.4g})")


def resolve_threads(threads: Optional[int] = None, deterministic: bool = False) -> int:
    if deterministic:
        return 1
    if threads is None:
        raw = os.environ.get("ADM_THREADS", "").strip()
        try:
            threads = int(raw or 0) or (os.cpu_count() or 1)
        except ValueError:
            raise ConfigError(f"ADM_THREADS must be an integer, got {raw!r}") from None
    return max(1, threads)


def _integrate(integrator: Integrator, u0: SpectralField, cfg: SimConfig, out_dir: Optional[Path], prefix: str, fft_workers: int) -> List[Sample]:
    keep = set(cfg.sample_steps())
    state = SolverState(t=0.0, field=u0, step=0)
    samples = [Sample(0, 0.0, u0)]
    with spfft.set_workers(fft_workers):
        for _ in range(cfg.steps):
            state = integrator.step(state)
            if state.step in keep:
                samples.append(Sample(state.step, state.t, state.field))
                progress.info(f"step={state.step} t={state.t:.6g} E={energy(state.field):.6e} run={integrator.run}")
    if out_dir is not None:
        for s in samples:
            write_snapshot(s.field, out_dir / f"{prefix}_{s.step}.admf")
    return samples


def _series_rows(run: str, N: Optional[int], samples: List[Sample]) -> List[dict]:
    return [
        {"run": run, "N": N, "step": s.step, "t": s.t, "energy": energy(s.field), "divergence": divergence_norm(s.field)}
        for s in samples
    ]


def run_experiment(
    cfg: SimConfig,
    output_dir: Union[str, Path, None] = None,
    threads: Optional[int] = None,
    deterministic: bool = False,
    write: bool = True,
) -> ExperimentOutput:
    """Run DNS once and ADM for every N in cfg.N_list from ū₀ = G u₀.

    Args:
        cfg: validated experiment config
        output_dir: overrides cfg.output_dir
        threads: worker count for the per-N pool and FFTs, ADM_THREADS when None
        deterministic: one thread, serial runs
        write: emit snapshots, series.csv and config.json

    Returns:
        ExperimentOutput with all samples held in memory
    """
    out = Path(output_dir or cfg.output_dir) if write else None
    if output_dir is not None:
        cfg = cfg.model_copy(update={"output_dir": str(output_dir)})
    workers = resolve_threads(threads, deterministic)
    config_json = cfg.model_dump_json(indent=2)
    sha = config_hash(config_json)

    u0 = initial_field(cfg)
    check_cfl(cfg, u0)
    forcing = load_forcing(cfg)
    logger.info(f"experiment n={cfg.n} nu={cfg.nu} T={cfg.T} dt={cfg.dt} steps={cfg.steps} N_list={cfg.N_list} threads={workers}")

    dns = _integrate(Integrator.dns(cfg, forcing), u0, cfg, out / "dns" if out else None, "u", workers)

    w0 = apply_filter(cfg.filter, u0)

    def run_adm(N: int) -> List[Sample]:
        integrator = Integrator.adm(cfg, N, forcing)
        try:
            return _integrate(integrator, w0, cfg, out / f"adm_N{N}" if out else None, "w", 1)
        except BlowUpError:
            logger.error(f"ADM run N={N} blew up (nu={cfg.nu}, dt={cfg.dt})")
            raise

    if workers == 1:
        adm = {N: run_adm(N) for N in cfg.N_list}
    else:
        with ThreadPoolExecutor(max_workers=min(workers, len(cfg.N_list))) as pool:
            adm = dict(zip(cfg.N_list, pool.map(run_adm, cfg.N_list)))

    rows = _series_rows("dns", None, dns)
    for N in cfg.N_list:
        rows.extend(_series_rows("adm", N, adm[N]))
    series = pd.DataFrame(rows, columns=SERIES_COLUMNS)
    series["N"] = series["N"].astype("Int64")

    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        (out / "config.json").write_text(config_json, encoding="utf-8")
        CsvWriter(sha).write(series, out / "series.csv")
    return ExperimentOutput(cfg=cfg, dns=dns, adm=adm, output_dir=out, config_sha256=sha, series=series)


_SNAPSHOT = re.compile(r"^[uw]_(\d+)\.admf$")


def _load_samples(directory: Path, cfg: SimConfig) -> List[Sample]:
    parser = SnapshotParser()
    found = []
    for path in directory.iterdir():
        match = _SNAPSHOT.match(path.name)
        if match:
            step = int(match.group(1))
            found.append(Sample(step, step * cfg.dt, parser.parseFile(path)))
    if not found:
        raise ConfigError(f"no snapshots in {directory}")
    return sorted(found, key=lambda s: s.step)


def load_experiment(directory: Union[str, Path]) -> ExperimentOutput:
    """Reload the output directory written by run_experiment."""
    directory = Path(directory)
    config_path = directory / "config.json"
    cfg = SimConfigParser().parseFile(config_path)
    dns = _load_samples(directory / "dns", cfg)
    adm = {N: _load_samples(directory / f"adm_N{N}", cfg) for N in cfg.N_list}
    series_path = directory / "series.csv"
    series = read_csv(series_path) if series_path.is_file() else pd.DataFrame(columns=SERIES_COLUMNS)
    sha = config_hash(config_path.read_text(encoding="utf-8"))
    logger.info(f"loaded experiment from {directory}: {len(dns)} DNS samples, N_list={cfg.N_list}")
    return ExperimentOutput(cfg=cfg, dns=dns, adm=adm, output_dir=directory, config_sha256=sha, series=series)
