"""Real and imaginary dielectric function of wire and dot for r0 = 3 and 4 nm.

    python3 scripts/dielectric_curves.py [out_dir]
"""
import json
import sys

from gan_qwr.config import RunConfig
from gan_qwr.runner import run

out = sys.argv[1] if len(sys.argv) > 1 else "out/dielectric"
res = run(RunConfig(command="dielectric", output=out))
with open(str(res.files[1])) as fh:
    meta = json.load(fh)
for tag in sorted(k for k in meta if k.startswith(("qwr_", "qd_"))):
    print(f"{tag:8s} Re eps(0) = {meta[tag]['re_eps_static']:.4f}")
