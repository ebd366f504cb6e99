"""Recompute the volume calibration factors frozen in gan_qwr.pipeline.

Run after any change to the subband, coupling or sheet-density code; paste
the printed values into pipeline.VOLUME_SCALE_QWR / VOLUME_SCALE_QD and
configs/default.ini.
"""
from gan_qwr.pipeline import ModelOptions, calibrate_volume_scale, dot_volume_norm, wire_transition, wire_volume

opts = ModelOptions()
s_qwr = calibrate_volume_scale("cylinder", opts)
s_qd = calibrate_volume_scale("sphere", opts)
t = wire_transition(4.0, opts)
print(f"wire: physical V = {wire_volume(t, opts, calibrated=False):.4f} nm^3, scale = {s_qwr:.6g}")
print(f"dot:  physical V = {dot_volume_norm(4.0, opts, calibrated=False):.4f} nm^3, scale = {s_qd:.6g}")
