"""Figure-data stages: Schmidt spectra, Slater number, modes, amplitude grids
and the parallel-spin transient trace, written as CSV with a manifest."""
from __future__ import annotations

import csv
import hashlib
import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .amplitude import (
    PARALLEL_CHANNEL,
    SpinChannel,
    amplitude_callback,
    mu_tilde,
    sample_grid,
    upsilon_part_t,
)
from .config import RunConfig
from .confspace import config_mode_eval
from .schmidt import schmidt_from_amplitude, schmidt_mode_eval
from .specfun import gauss_hermite_rule

log = logging.getLogger(__name__)

THREADS_ENV = "FERMITANGLE_THREADS"
N_PLOTTED_MODES = 4
MODE_HALF_WIDTH = 8.0
MODE_POINTS = 401
TRACE_POINT = (1.0, 1.2)
TRACE_WINDOW = (1.0, 1.001)
TRACE_SAMPLES = 1000

STAGES = ("spectrum", "kvst", "modes", "grid", "oscillation")


def fmt(x) -> str:
    """17 significant digits, enough to round-trip a double."""
    return format(float(x), ".17g")


def time_label(t: float) -> str:
    return format(float(t), "g")


def worker_count() -> int:
    try:
        cap = int(os.environ.get(THREADS_ENV, "0"))
    except ValueError:
        cap = 0
    n = os.cpu_count() or 1
    return max(1, min(n, cap) if cap > 0 else n)


def write_csv(path: Path, meta: dict, header, rows) -> Path:
    """CSV body preceded by ``#`` metadata lines (skipped by gnuplot and pandas ``comment='#'``)."""
    with open(path, "w", newline="") as fh:
        for key, value in meta.items():
            fh.write(f"# {key}: {value}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(row if isinstance(row[0], str) else [fmt(v) for v in row])
    return path


def _meta(cfg: RunConfig, **extra) -> dict:
    meta = {
        "generator": f"fermitangle {__version__}",
        "pa0_over_m": fmt(cfg.pa0_over_m),
        "sigma_over_pa0": fmt(cfg.sigma_over_pa0),
        "channel": cfg.channel,
        "basis_size": cfg.basis_size,
        "quad_order": cfg.quad_order,
    }
    meta.update(extra)
    return meta


@dataclass
class Session:
    """Holds one configuration and caches the decomposition at each time."""

    cfg: RunConfig
    out: Path = None
    timings: dict = field(default_factory=dict)
    files: list = field(default_factory=list)
    _decs: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.out = Path(self.out or self.cfg.output_dir)
        self.out.mkdir(parents=True, exist_ok=True)
        self.channel = SpinChannel.from_name(self.cfg.channel)
        self.rule = gauss_hermite_rule(self.cfg.quad_order)

    def decompositions(self) -> list:
        missing = [t for t in self.cfg.times if t not in self._decs]
        if missing:
            with ThreadPoolExecutor(max_workers=worker_count()) as pool:
                for t, dec in zip(missing, pool.map(self._compute, missing)):
                    self._decs[t] = dec
        return [self._decs[t] for t in self.cfg.times]

    def _compute(self, t):
        F = amplitude_callback(self.channel, t, self.cfg.params)
        return schmidt_from_amplitude(F, self.cfg.basis_size, self.rule, t)

    def emit(self, path: Path) -> Path:
        self.files.append(path)
        return path


def run_spectrum(session: Session) -> list:
    cfg = session.cfg
    paths = []
    for t, dec in zip(cfg.times, session.decompositions()):
        rows = [(n, lam) for n, lam in enumerate(dec.lambdas.values)]
        meta = _meta(cfg, t_tilde=fmt(t), d2=fmt(dec.d2), columns="n lambda (descending)")
        path = session.out / f"spectrum_t{time_label(t)}.csv"
        paths.append(session.emit(write_csv(path, meta, ["n", "lambda"], rows)))
    return paths


def run_kvst(session: Session) -> list:
    cfg = session.cfg
    rows = [(t, d.K, d.entropy, d.d2) for t, d in zip(cfg.times, session.decompositions())]
    meta = _meta(cfg, columns="t_tilde K S[bits] d2")
    path = session.out / "slater_number.csv"
    return [session.emit(write_csv(path, meta, ["t_tilde", "K", "S", "d2"], rows))]


def mode_window(t: float, sigma_tilde: float):
    p = np.linspace(-MODE_HALF_WIDTH, MODE_HALF_WIDTH, MODE_POINTS)
    width = np.sqrt(1.0 + (sigma_tilde * t) ** 2)
    x = t + width * p
    return p, x


def run_modes(session: Session) -> list:
    cfg = session.cfg
    sigma_tilde = cfg.sigma_over_pa0
    paths = []
    for t, dec in zip(cfg.times, session.decompositions()):
        p, x = mode_window(t, sigma_tilde)
        for k in range(min(N_PLOTTED_MODES, dec.n_modes)):
            psi_p = schmidt_mode_eval(dec, 1, k, p)
            psi_x = config_mode_eval(dec, 1, k, x, sigma_tilde)
            for kind, coord, vals, name in (("p", p, psi_p, "p"), ("x", x, psi_x, "x_tilde")):
                meta = _meta(cfg, t_tilde=fmt(t), mode=k, particle=1, **{"lambda": fmt(dec.lambdas.values[k])})
                rows = zip(coord, vals.real, vals.imag)
                path = session.out / f"mode_{kind}_n{k}_t{time_label(t)}.csv"
                paths.append(session.emit(write_csv(path, meta, [name, "re", "im"], rows)))
    return paths


def run_grid(session: Session) -> list:
    cfg = session.cfg
    paths = []
    for t in cfg.times:
        g = sample_grid(session.channel, t, cfg.grid, cfg.grid, cfg.params)
        P, Q = np.meshgrid(g.p_nodes, g.q_nodes, indexing="ij")
        v = g.values.ravel()
        rows = zip(P.ravel(), Q.ravel(), v.real, v.imag, np.abs(v))
        meta = _meta(cfg, t_tilde=fmt(t), order="row-major, p outer, q inner")
        path = session.out / f"amplitude_t{time_label(t)}.csv"
        paths.append(session.emit(write_csv(path, meta, ["p", "q", "re", "im", "abs"], rows)))
    return paths


def oscillation_trace(params, point=TRACE_POINT, window=TRACE_WINDOW, samples=TRACE_SAMPLES):
    """Transient part of the parallel-spin amplitude at fixed ``(p, q)`` over a short window."""
    p, q = point
    t = np.linspace(window[0], window[1], samples)
    g = upsilon_part_t(p, q, t, params) - upsilon_part_t(q, p, t, params)
    return t, g


def trace_phase_rate(params, point=TRACE_POINT) -> float:
    """Carrier angular frequency of the transient: mean of the two ``(2m/p_a0) mu~`` rates."""
    p, q = point
    return float(params.energy_ratio * 0.5 * (mu_tilde(p, params) + mu_tilde(q, params)))


def run_oscillation(session: Session) -> list:
    cfg = session.cfg
    t, g = oscillation_trace(cfg.params)
    meta = _meta(
        cfg,
        channel=PARALLEL_CHANNEL.structure.value,
        p=fmt(TRACE_POINT[0]),
        q=fmt(TRACE_POINT[1]),
        part="transient only",
    )
    path = session.out / "upsilon_trace.csv"
    return [session.emit(write_csv(path, meta, ["t_tilde", "re_g", "im_g"], zip(t, g.real, g.imag)))]


RUNNERS = {
    "spectrum": run_spectrum,
    "kvst": run_kvst,
    "modes": run_modes,
    "grid": run_grid,
    "oscillation": run_oscillation,
}


def sha256(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_manifest(session: Session) -> Path:
    entries = [
        {"file": p.name, "sha256": sha256(p), "bytes": p.stat().st_size} for p in session.files
    ]
    manifest = {
        "version": __version__,
        "config": session.cfg.echo(),
        "files": entries,
        "wall_clock_s": session.timings,
        "created": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    }
    path = session.out / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2) + "\n")
    return path


def run(cfg: RunConfig, command: str, out=None) -> Session:
    """Run one stage, or all of them for ``command == "all"``, and write the manifest."""
    session = Session(cfg, out)
    stages = STAGES if command == "all" else (command,)
    for name in stages:
        t0 = time.perf_counter()
        RUNNERS[name](session)
        session.timings[name] = round(time.perf_counter() - t0, 6)
        log.info("%s: %.3f s", name, session.timings[name])
    write_manifest(session)
    return session


def verify_manifest(out: Path) -> bool:
    out = Path(out)
    manifest = json.loads((out / "manifest.json").read_text())
    return all(
        (out / e["file"]).exists() and sha256(out / e["file"]) == e["sha256"]
        for e in manifest["files"]
    )
