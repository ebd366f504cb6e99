"""INI run configuration (schema version 1).

Example::

    [meta]
    schema_version = 1

    [run]
    command = absorb
    output = out/absorb

    [geometry]
    radii = 3, 4

    [thermal]
    temperature_k = 300

Unknown sections or keys are rejected with the offending line number.
Extra materials are declared as ``[material.<name>]`` sections.
"""
from __future__ import annotations

import configparser
import hashlib
import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import ConfigError
from .materials import MaterialParams, register_material
from .pipeline import VOLUME_SCALE_QD, VOLUME_SCALE_QWR, ModelOptions
from .spectra import ThermalConfig

SCHEMA_VERSION = 1
COMMANDS = ("levels", "binding", "absorb", "dielectric", "compare", "sweep")

_SCHEMA = {
    "meta": {"schema_version"},
    "run": {"command", "output"},
    "geometry": {"radii", "well", "barrier", "offset_ratio", "matching"},
    "thermal": {"temperature_k", "fermi_offset_mev", "l_w_nm2"},
    "response": {"gamma_mev", "field_v_per_nm", "background_eps", "volume_scale_qwr",
                 "volume_scale_qd", "volume_norm_qwr", "volume_norm_qd"},
    "grid": {"hw_min", "hw_max", "hw_step"},
    "spectra": {"mode", "wire_states", "normalize"},
    "levels": {"l_values", "max_n"},
    "binding": {"l_values"},
    "sweep": {"temperatures_k"},
}
_MATERIAL_KEYS = {"band_gap_mev", "effective_mass_ratio", "eps_static", "eps_infinity"}


@dataclass(frozen=True)
class GridSpec:
    hw_min: float = 0.0
    hw_max: float = 1200.0
    hw_step: float = 1.0

    def energies(self):
        import numpy as np

        n = int(round((self.hw_max - self.hw_min) / self.hw_step))
        return self.hw_min + self.hw_step * np.arange(n + 1)


@dataclass(frozen=True)
class RunConfig:
    command: str = "levels"
    output: str = "out"
    radii: tuple = (3.0, 4.0)
    options: ModelOptions = field(default_factory=ModelOptions)
    grid: GridSpec = field(default_factory=GridSpec)
    normalize: str = "shared"  # shared | peak | none
    level_l: tuple = (0, 1)
    level_max_n: int = 2
    binding_l: tuple = (0,)
    temperatures: tuple = (300.0,)
    materials: tuple = ()

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}", "run", "command")
        if not self.radii or any(r <= 0 for r in self.radii):
            raise ConfigError("radii must be a non-empty list of positive values", "geometry", "radii")
        if list(self.radii) != sorted(set(self.radii)):
            raise ConfigError("radii must be strictly increasing", "geometry", "radii")
        if not self.grid.hw_max > self.grid.hw_min or not self.grid.hw_step > 0:
            raise ConfigError("photon-energy grid is empty or not increasing", "grid")
        if self.normalize not in ("shared", "peak", "none"):
            raise ConfigError(f"unknown normalization {self.normalize!r}", "spectra", "normalize")
        if not self.temperatures or any(t <= 0 for t in self.temperatures):
            raise ConfigError("temperatures must be positive", "sweep", "temperatures_k")

    def as_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "radii": list(self.radii),
            "options": self.options.as_dict(),
            "grid": [self.grid.hw_min, self.grid.hw_max, self.grid.hw_step],
            "normalize": self.normalize,
            "level_l": list(self.level_l),
            "level_max_n": self.level_max_n,
            "binding_l": list(self.binding_l),
            "temperatures": list(self.temperatures),
            "materials": [m.__dict__ for m in self.materials],
        }

    def digest(self) -> str:
        """SHA-256 of the canonical JSON form (output directory excluded)."""
        blob = json.dumps(self.as_dict(), sort_keys=True, default=str).encode()
        return hashlib.sha256(blob).hexdigest()


def _line_of(text, section, key=None):
    current = None
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            if key is None and current == section:
                return no
        elif current == section and key is not None:
            name = line.split("=", 1)[0].split(":", 1)[0].strip().lower()
            if name == key:
                return no
    return None


class _Reader:
    def __init__(self, cp, text):
        self.cp = cp
        self.text = text

    def _raw(self, section, key):
        if self.cp.has_option(section, key):
            v = self.cp.get(section, key).strip()
            return v if v else None
        return None

    def _fail(self, section, key, msg):
        raise ConfigError(f"[{section}] {key}: {msg}", section, key, _line_of(self.text, section, key))

    def float(self, section, key, default=None):
        v = self._raw(section, key)
        if v is None:
            return default
        try:
            return float(v)
        except ValueError:
            self._fail(section, key, f"expected a number, got {v!r}")

    def int(self, section, key, default=None):
        v = self._raw(section, key)
        if v is None:
            return default
        try:
            return int(v)
        except ValueError:
            self._fail(section, key, f"expected an integer, got {v!r}")

    def str(self, section, key, default=None, choices=None):
        v = self._raw(section, key)
        if v is None:
            return default
        if choices and v not in choices:
            self._fail(section, key, f"expected one of {', '.join(choices)}, got {v!r}")
        return v

    def floats(self, section, key, default):
        v = self._raw(section, key)
        if v is None:
            return default
        try:
            return tuple(float(x) for x in v.replace(";", ",").split(",") if x.strip())
        except ValueError:
            self._fail(section, key, f"expected a comma-separated list of numbers, got {v!r}")

    def ints(self, section, key, default):
        vals = self.floats(section, key, None)
        if vals is None:
            return default
        if any(int(x) != x for x in vals):
            self._fail(section, key, "expected integers")
        return tuple(int(x) for x in vals)


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigError(f"{source}: {exc}", line=getattr(exc, "lineno", None)) from None

    for section in cp.sections():
        if section.startswith("material."):
            allowed = _MATERIAL_KEYS
        elif section in _SCHEMA:
            allowed = _SCHEMA[section]
        else:
            raise ConfigError(f"unknown section [{section}]", section,
                              line=_line_of(text, section))
        for key in cp.options(section):
            if key not in allowed:
                raise ConfigError(f"unknown key {key!r} in [{section}]", section, key,
                                  _line_of(text, section, key))

    rd = _Reader(cp, text)
    version = rd.int("meta", "schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        rd._fail("meta", "schema_version", f"unsupported schema version {version}")

    materials = []
    for section in cp.sections():
        if not section.startswith("material."):
            continue
        name = section.split(".", 1)[1]
        try:
            mp = MaterialParams(
                name,
                band_gap=rd.float(section, "band_gap_mev"),
                effective_mass_ratio=rd.float(section, "effective_mass_ratio"),
                eps_static=rd.float(section, "eps_static"),
                eps_infinity=rd.float(section, "eps_infinity"),
            )
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"[{section}]: {exc}", section, line=_line_of(text, section)) from None
        materials.append(mp)

    thermal = ThermalConfig(
        temperature=rd.float("thermal", "temperature_k", 300.0),
        fermi_offset=rd.float("thermal", "fermi_offset_mev", 10.0),
        L_w=rd.float("thermal", "l_w_nm2", 16.0),
    )
    opts = ModelOptions(
        thermal=thermal,
        well=rd.str("geometry", "well", "GaN"),
        barrier=rd.str("geometry", "barrier", "AlN"),
        offset_ratio=rd.float("geometry", "offset_ratio", 0.76),
        matching=rd.str("geometry", "matching", "mass", ("mass", "plain")),
        wire_states=rd.str("spectra", "wire_states", "bare", ("bare", "donor")),
        mode=rd.str("spectra", "mode", "detuning", ("detuning", "amplitude", "pointwise")),
        gamma=rd.float("response", "gamma_mev", 10.0),
        field=rd.float("response", "field_v_per_nm", 0.0),
        background_eps=rd.float("response", "background_eps", None),
        volume_scale_qwr=rd.float("response", "volume_scale_qwr", VOLUME_SCALE_QWR),
        volume_scale_qd=rd.float("response", "volume_scale_qd", VOLUME_SCALE_QD),
        volume_norm_qwr=rd.float("response", "volume_norm_qwr", None),
        volume_norm_qd=rd.float("response", "volume_norm_qd", None),
    )
    return RunConfig(
        command=rd.str("run", "command", "levels", COMMANDS),
        output=rd.str("run", "output", "out"),
        radii=rd.floats("geometry", "radii", (3.0, 4.0)),
        options=opts,
        grid=GridSpec(rd.float("grid", "hw_min", 0.0), rd.float("grid", "hw_max", 1200.0),
                      rd.float("grid", "hw_step", 1.0)),
        normalize=rd.str("spectra", "normalize", "shared", ("shared", "peak", "none")),
        level_l=rd.ints("levels", "l_values", (0, 1)),
        level_max_n=rd.int("levels", "max_n", 2),
        binding_l=rd.ints("binding", "l_values", (0,)),
        temperatures=rd.floats("sweep", "temperatures_k", (thermal.temperature,)),
        materials=tuple(materials),
    )


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text, str(path))


def register_config_materials(cfg: RunConfig):
    for mp in cfg.materials:
        register_material(mp)


def with_overrides(cfg: RunConfig, **kw) -> RunConfig:
    """Apply CLI overrides; ``None`` values are ignored."""
    opts = cfg.options
    thermal = opts.thermal
    if kw.get("temperature_k") is not None:
        thermal = replace(thermal, temperature=kw["temperature_k"])
    if kw.get("fermi_offset_mev") is not None:
        thermal = replace(thermal, fermi_offset=kw["fermi_offset_mev"])
    upd = {"thermal": thermal}
    for key, name in (("mode", "mode"), ("matching", "matching"), ("background_eps", "background_eps"),
                      ("gamma_mev", "gamma"), ("wire_states", "wire_states")):
        if kw.get(key) is not None:
            upd[name] = kw[key]
    top = {}
    if kw.get("command") is not None:
        top["command"] = kw["command"]
    if kw.get("output") is not None:
        top["output"] = kw["output"]
    if kw.get("radii") is not None:
        top["radii"] = tuple(kw["radii"])
    if kw.get("temperature_k") is not None and cfg.temperatures == (cfg.options.thermal.temperature,):
        top["temperatures"] = (kw["temperature_k"],)
    return replace(cfg, options=replace(opts, **upd), **top)
