"""Batch commands behind the CLI: each writes one CSV plus metadata sidecar."""
from __future__ import annotations

import logging
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import pipeline
from .config import RunConfig, register_config_materials
from .csvio import emit_csv
from .donor import BoundaryMinimumWarning, minimize_energy
from .errors import ConfigError, MaterialLookupError
from .materials import material_lookup, register_material
from .response import dielectric_function
from .subbands import find_levels

log = logging.getLogger(__name__)

WORKERS_ENV = "GAN_QWR_WORKERS"


@dataclass
class RunResult:
    files: list
    status: str = "ok"


def _rtag(r):
    return f"r{r:g}"


def _levels(cfg: RunConfig):
    labels = [(n, l) for l in cfg.level_l for n in range(1, cfg.level_max_n + 1)]
    cols = ["radius_nm"] + [f"E{n}{abs(l)}_mev" for n, l in labels]
    rows = []
    for r in cfg.radii:
        geo = cfg.options.geometry(r)
        found = {}
        for l in cfg.level_l:
            for s in find_levels(l, geo, cfg.level_max_n):
                found[(s.n, l)] = s.energy
        rows.append([r] + [found.get(k, float("nan")) for k in labels])
    meta = {"x_axis": "core radius r0 in nm (radius, not diameter)"}
    return cols, rows, meta


def _binding(cfg: RunConfig):
    cols = ["radius_nm"]
    for l in cfg.binding_l:
        tag = f"1{abs(l)}"
        cols += [f"E{tag}_mev", f"E{tag}_donor_mev", f"binding{tag}_mev", f"a_opt{tag}_per_nm2",
                 f"boundary{tag}"]
    rows, flagged = [], []
    for r in cfg.radii:
        geo = cfg.options.geometry(r)
        row = [r]
        for l in cfg.binding_l:
            s = find_levels(l, geo, 1)[0]
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", BoundaryMinimumWarning)
                d = minimize_energy(s)
            if d.at_boundary:
                flagged.append(f"r0={r:g} l={l}")
            row += [s.energy, d.energy, d.binding_energy, d.a_opt, int(d.at_boundary)]
        rows.append(row)
    return cols, rows, {"boundary_minima": flagged}


def _spectra_set(cfg: RunConfig, grid, opts=None):
    opts = opts or cfg.options
    out = []
    for r in cfg.radii:
        out.append((f"qwr_{_rtag(r)}", pipeline.wire_spectrum(r, grid, opts)))
        out.append((f"qd_{_rtag(r)}", pipeline.dot_spectrum(r, grid, opts)))
    return out


def _normalize(named, how):
    if how == "none":
        return named
    if how == "peak":
        return [(n, s.normalized()) for n, s in named]
    scaled = pipeline.shared_normalization(*[s for _, s in named])
    return [(n, s) for (n, _), s in zip(named, scaled)]


def _absorb(cfg: RunConfig):
    grid = cfg.grid.energies()
    named = _normalize(_spectra_set(cfg, grid), cfg.normalize)
    cols = ["energy_mev"] + [n for n, _ in named]
    data = np.column_stack([grid] + [s.values for _, s in named])
    meta = {
        "normalization": cfg.normalize,
        "spectra": {n: {"scale": s.metadata.get("scale", 1.0), "peak_energy_mev": s.peak_energy,
                        "fwhm_mev": s.fwhm()} for n, s in named},
    }
    return cols, data.tolist(), meta


def _dielectric(cfg: RunConfig):
    grid = cfg.grid.energies()
    cols, parts, meta = ["energy_mev"], [grid], {}
    opts = cfg.options
    for r in cfg.radii:
        for kind, fn in (("qwr", pipeline.wire_dielectric), ("qd", pipeline.dot_dielectric)):
            resp = fn(r, grid, opts)
            tag = f"{kind}_{_rtag(r)}"
            cols += [f"re_eps_{tag}", f"im_eps_{tag}"]
            parts += [resp.real, resp.absorptive]
            meta[tag] = {"re_eps_static": float(fn(r, [0.0], opts).real[0])}
    return cols, np.column_stack(parts).tolist(), meta


_COMPARE_COLS = ["radius_nm", "temperature_k", "E21_qwr_mev", "E21_qd_mev", "M_qwr_enm", "M_qd_enm",
                 "peak_energy_qwr_mev", "peak_energy_qd_mev", "peak_qwr_rel", "peak_qd_rel",
                 "fwhm_qwr_mev", "fwhm_qd_mev", "re_eps0_qwr", "re_eps0_qd",
                 "volume_qwr_nm3", "volume_qd_nm3"]


def _compare_row(args):
    r, temperature, opts, grid, materials = args
    for mp in materials:
        register_material(mp)
    opts = replace(opts, thermal=replace(opts.thermal, temperature=temperature))
    tw = pipeline.wire_transition(r, opts)
    td = pipeline.dot_transition(r, opts)
    sw = pipeline.wire_spectrum(r, grid, opts, tw)
    sd = pipeline.dot_spectrum(r, grid, opts, td)
    ref = sd.peak_value
    vw = pipeline.wire_volume(tw, opts)
    vd = pipeline.dot_volume_norm(r, opts)
    geo = opts.geometry(r)
    e_w = dielectric_function([0.0], tw, opts.response(geo, vw)).real[0]
    e_d = dielectric_function([0.0], td, opts.response(geo, vd)).real[0]
    return [r, temperature, tw.energy_gap, td.energy_gap, tw.dipole_moment, td.dipole_moment,
            sw.peak_energy, sd.peak_energy, sw.peak_value / ref, 1.0, sw.fwhm(), sd.fwhm(),
            e_w, e_d, vw, vd]


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _compare_jobs(cfg: RunConfig, temperatures):
    grid = cfg.grid.energies()
    jobs = [(r, T, cfg.options, grid, cfg.materials) for r in cfg.radii for T in temperatures]
    n = worker_count()
    if n == 1 or len(jobs) == 1:
        return [_compare_row(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n) as pool:
        # map() yields in submission order, independent of completion order
        return list(pool.map(_compare_row, jobs))


def _compare(cfg: RunConfig):
    return _COMPARE_COLS, _compare_jobs(cfg, (cfg.options.thermal.temperature,)), {}


def _sweep(cfg: RunConfig):
    return _COMPARE_COLS, _compare_jobs(cfg, cfg.temperatures), {"temperatures_k": list(cfg.temperatures)}


COMMANDS = {
    "levels": _levels,
    "binding": _binding,
    "absorb": _absorb,
    "dielectric": _dielectric,
    "compare": _compare,
    "sweep": _sweep,
}


def run(cfg: RunConfig, out_dir=None) -> RunResult:
    register_config_materials(cfg)
    for section_key in ("well", "barrier"):
        name = getattr(cfg.options, section_key)
        try:
            material_lookup(name)
        except MaterialLookupError as exc:
            raise ConfigError(str(exc), "geometry", section_key) from None
    out = Path(out_dir or cfg.output)
    cols, rows, extra = COMMANDS[cfg.command](cfg)
    meta = {
        "command": cfg.command,
        "config_sha256": cfg.digest(),
        "config": cfg.as_dict(),
    }
    meta.update(extra)
    path = out / f"{cfg.command}.csv"
    status = emit_csv(cols, rows, path, meta)
    return RunResult([path, Path(str(path) + ".meta.json")], status)
