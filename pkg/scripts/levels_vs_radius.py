"""Subband and donor energies against core radius (levels.csv, binding.csv).

    python3 scripts/levels_vs_radius.py [out_dir]
"""
import sys

import numpy as np

from gan_qwr.config import RunConfig
from gan_qwr.runner import run

out = sys.argv[1] if len(sys.argv) > 1 else "out/levels"
radii = tuple(float(r) for r in np.round(np.arange(2.5, 6.01, 0.25), 2))

for command in ("levels", "binding"):
    cfg = RunConfig(command=command, output=out, radii=radii, binding_l=(0, 1))
    for f in run(cfg).files:
        print(f)
