"""Wire and dot absorption spectra for r0 = 3 and 4 nm under shared normalization.

    python3 scripts/absorption_spectra.py [out_dir] [mode]

Prints peak position, relative height and FWHM of each curve.
"""
import json
import sys

from gan_qwr.config import RunConfig
from gan_qwr.pipeline import ModelOptions
from gan_qwr.runner import run

out = sys.argv[1] if len(sys.argv) > 1 else "out/absorption"
mode = sys.argv[2] if len(sys.argv) > 2 else "detuning"

cfg = RunConfig(command="absorb", output=out, options=ModelOptions(mode=mode))
res = run(cfg)
with open(str(res.files[1])) as fh:
    meta = json.load(fh)
for name, info in meta["spectra"].items():
    print(f"{name:10s} peak {info['peak_energy_mev']:7.1f} meV  scale {info['scale']:.4g}"
          f"  fwhm {info['fwhm_mev']:6.2f} meV")
